// Copyright 2026 The sgat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGAT_HARNESS_CONFIG_HPP
#define SGAT_HARNESS_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgat::harness {

/// Raised for malformed or invalid configuration; the message starts with
/// the offending "section.key".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tunable of an experiment run. Field comments give the INI key.
struct ExperimentConfig {
  // [experiment]
  std::string name = "cliff-sweep";                   // name: toy | cliff-sweep | cartpole-noisysim | cartpole-noisyreal
  std::vector<std::string> algorithms = {"gat", "sgat"};  // algorithms: none, gat, sgat, ane
  /// noise: toy -> P(a2 reaches s3); cliff -> slip probability; cart-pole
  /// -> real action-noise standard deviation.
  std::vector<double> noise = {0.0};
  int trials = 1;                                     // trials
  std::uint64_t seed = 0;                             // seed
  int eval_episodes = 1000;                           // eval_episodes
  std::string output;                                 // output (empty: $SGAT_OUTPUT_DIR/<name>.csv)

  // [grounding]
  int iterations = 5;
  int real_episodes = 0;  // 0: 50 for tabular experiments, 20 for cart-pole
  int sim_episodes = 50;
  int loop_eval_episodes = 1000;  // grounding.eval_episodes
  double improvement_threshold = 0.01;
  bool accumulate_data = true;
  std::string reward_action = "transformed";  // transformed | original

  // [tabular]
  double epsilon = 0.1;
  int sim_sweeps = 1;

  // [continuous]
  double exploration_sigma = 0.2;
  std::string inverse_encoding = "concat";  // concat | delta
  int reselect_episodes = 100;

  // [model]
  std::vector<int> hidden = {64, 64};
  int epochs = 30;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double final_lr_fraction = 0.01;

  // [cmaes]
  int population = 16;
  int generations = 30;
  int rollouts = 3;
  double initial_step = 0.5;

  // [ane]
  std::vector<double> ane_sigmas = {0.0, 0.3, 0.6};  // ane.sigmas
  int ane_eval_episodes = 100;                         // ane.eval_episodes

  // [cliff]
  double cliff_step_penalty = -0.1;
  double cliff_goal_reward = 100.0;
  double cliff_cliff_reward = -10.0;
  int cliff_horizon = 1000;

  // [cartpole]
  double pole_mass_factor = 10.0;  // used by cartpole-noisyreal only
  int cartpole_horizon = 200;

  bool tabular() const { return name == "toy" || name == "cliff-sweep"; }
  int effective_real_episodes() const { return real_episodes > 0 ? real_episodes : (tabular() ? 50 : 20); }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Parses INI text; unknown sections or keys are errors.
ExperimentConfig parse_config(std::istream& in, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Applies one "section.key=value" override.
void apply_override(ExperimentConfig& config, const std::string& assignment);

/// Canonical INI rendering; parse_config(write_config(c)) == c.
std::string write_config(const ExperimentConfig& config);

/// Output CSV path: `output` when set, otherwise
/// $SGAT_OUTPUT_DIR (default "results") / <name>.csv.
std::string resolve_output_path(const ExperimentConfig& config);

/// The canonical cliff-sweep configuration behind `reproduce fig5`.
ExperimentConfig fig5_config();

}  // namespace sgat::harness

#endif  // SGAT_HARNESS_CONFIG_HPP
