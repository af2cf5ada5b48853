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

#ifndef SGAT_BASELINES_BASELINES_HPP
#define SGAT_BASELINES_BASELINES_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/core/policy.hpp"
#include "sgat/core/rollout.hpp"
#include "sgat/opt/cmaes.hpp"

namespace sgat::baselines {

struct AneConfig {
  /// Standard deviation of the Gaussian added to every agent action.
  double sigma = 0.0;

  std::string validate() const;
};

/// Action-noise envelope: the agent's action is perturbed by N(0, sigma^2)
/// per dimension and clamped to the action bounds before the base step.
/// With sigma = 0 no noise is drawn and the wrapper is the identity.
class AneEnv final : public core::Env {
 public:
  AneEnv(std::shared_ptr<const core::Env> base, AneConfig config);

  const core::EnvInfo& info() const override { return base_->info(); }
  core::StateVec reset(core::Rng& rng) const override { return base_->reset(rng); }
  core::StepResult step(const core::StateVec& state, const core::ActionVec& action, core::Rng& rng) const override;
  double reward(const core::ActionVec& action, const core::StateVec& next_state) const override {
    return base_->reward(action, next_state);
  }
  bool is_failure(const core::StateVec& terminal_state) const override { return base_->is_failure(terminal_state); }
  core::Provenance provenance() const override { return base_->provenance(); }

  /// The action the base environment receives; draws noise from rng.
  core::ActionVec executed_action(const core::ActionVec& action, core::Rng& rng) const;
  const AneConfig& config() const { return config_; }

 private:
  std::shared_ptr<const core::Env> base_;
  AneConfig config_;
};

/// Throws std::invalid_argument for discrete-action environments or a
/// negative sigma.
std::shared_ptr<const core::Env> ane_wrap(std::shared_ptr<const core::Env> base, AneConfig config);

/// Trains a policy on the given environment.
using Improver = std::function<core::PolicyPtr(const core::Env& train_env, std::uint64_t seed)>;

/// CMA-ES over LinearPolicy parameters starting from config.initial_mean
/// (zeros when empty). The improver's seed replaces config.seed.
Improver cmaes_improver(const core::EnvInfo& info, opt::CmaesConfig config);

/// Policy iteration on the environment's exact model; the environment must
/// be a TabularEnv.
Improver policy_iteration_improver();

/// The no-grounding baseline: the policy trained directly in simulation.
core::PolicyPtr train_no_grounding(const core::Env& sim, const Improver& improve, std::uint64_t seed);

struct AneCandidate {
  double sigma = 0.0;
  core::PolicyPtr policy;
  core::EvalStats real_eval;
};

struct AneSearchResult {
  double best_sigma = 0.0;
  core::PolicyPtr best_policy;
  core::EvalStats best_eval;
  /// One entry per candidate, in input order.
  std::vector<AneCandidate> candidates;
};

/// Trains one policy per sigma on the wrapped simulator and keeps the one
/// with the highest real mean return; ties go to the smaller sigma. All
/// candidates are evaluated on the same real streams.
AneSearchResult ane_grid_search(std::span<const double> sigmas, std::shared_ptr<const core::Env> sim,
                                const Improver& improve, const core::Env& real, int eval_episodes,
                                std::uint64_t seed);

}  // namespace sgat::baselines

#endif  // SGAT_BASELINES_BASELINES_HPP
