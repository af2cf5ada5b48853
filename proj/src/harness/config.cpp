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

#include "sgat/harness/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace sgat::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& why) { throw ConfigError(key + ": " + why); }

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    fail(key, "cannot parse '" + text + "' as a number");
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void parse_into(const std::string& key, const std::string& text, int& v) { v = parse_number<int>(key, text); }
void parse_into(const std::string& key, const std::string& text, std::uint64_t& v) {
  v = parse_number<std::uint64_t>(key, text);
}
void parse_into(const std::string& key, const std::string& text, double& v) { v = parse_number<double>(key, text); }
void parse_into(const std::string&, const std::string& text, std::string& v) { v = trim(text); }
void parse_into(const std::string& key, const std::string& text, bool& v) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") v = true;
  else if (t == "false" || t == "0" || t == "no") v = false;
  else fail(key, "expected true or false, got '" + text + "'");
}
template <typename T>
void parse_into(const std::string& key, const std::string& text, std::vector<T>& v) {
  v.clear();
  for (const auto& item : split_list(text)) {
    T x{};
    parse_into(key, item, x);
    v.push_back(x);
  }
}

std::string render(int v) { return std::to_string(v); }
std::string render(std::uint64_t v) { return std::to_string(v); }
std::string render(double v) { return fmt::format("{}", v); }
std::string render(const std::string& v) { return v; }
std::string render(bool v) { return v ? "true" : "false"; }
template <typename T>
std::string render(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + render(v[i]);
  return out;
}

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field field(std::string key, T ExperimentConfig::*member) {
  return {key, [key, member](ExperimentConfig& c, const std::string& text) { parse_into(key, text, c.*member); },
          [member](const ExperimentConfig& c) { return render(c.*member); }};
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = {
      field("experiment.name", &C::name),
      field("experiment.algorithms", &C::algorithms),
      field("experiment.noise", &C::noise),
      field("experiment.trials", &C::trials),
      field("experiment.seed", &C::seed),
      field("experiment.eval_episodes", &C::eval_episodes),
      field("experiment.output", &C::output),
      field("grounding.iterations", &C::iterations),
      field("grounding.real_episodes", &C::real_episodes),
      field("grounding.sim_episodes", &C::sim_episodes),
      field("grounding.eval_episodes", &C::loop_eval_episodes),
      field("grounding.improvement_threshold", &C::improvement_threshold),
      field("grounding.accumulate_data", &C::accumulate_data),
      field("grounding.reward_action", &C::reward_action),
      field("tabular.epsilon", &C::epsilon),
      field("tabular.sim_sweeps", &C::sim_sweeps),
      field("continuous.exploration_sigma", &C::exploration_sigma),
      field("continuous.inverse_encoding", &C::inverse_encoding),
      field("continuous.reselect_episodes", &C::reselect_episodes),
      field("model.hidden", &C::hidden),
      field("model.epochs", &C::epochs),
      field("model.batch_size", &C::batch_size),
      field("model.learning_rate", &C::learning_rate),
      field("model.final_lr_fraction", &C::final_lr_fraction),
      field("cmaes.population", &C::population),
      field("cmaes.generations", &C::generations),
      field("cmaes.rollouts", &C::rollouts),
      field("cmaes.initial_step", &C::initial_step),
      field("ane.sigmas", &C::ane_sigmas),
      field("ane.eval_episodes", &C::ane_eval_episodes),
      field("cliff.step_penalty", &C::cliff_step_penalty),
      field("cliff.goal_reward", &C::cliff_goal_reward),
      field("cliff.cliff_reward", &C::cliff_cliff_reward),
      field("cliff.horizon", &C::cliff_horizon),
      field("cartpole.pole_mass_factor", &C::pole_mass_factor),
      field("cartpole.horizon", &C::cartpole_horizon),
  };
  return table;
}

void set_field(ExperimentConfig& c, const std::string& key, const std::string& value) {
  for (const auto& f : fields())
    if (f.key == key) {
      f.set(c, value);
      return;
    }
  fail(key, "unknown configuration key");
}

void require(bool ok, const char* key, const std::string& why) {
  if (!ok) fail(key, why);
}

bool finite_at_least(double v, double lo) { return std::isfinite(v) && v >= lo; }

}  // namespace

void ExperimentConfig::validate() const {
  static const std::set<std::string> experiments{"toy", "cliff-sweep", "cartpole-noisysim", "cartpole-noisyreal"};
  static const std::set<std::string> known_algorithms{"none", "gat", "sgat", "ane"};
  require(experiments.count(name) == 1, "experiment.name",
          "unknown experiment '" + name + "' (toy, cliff-sweep, cartpole-noisysim, cartpole-noisyreal)");
  require(!algorithms.empty(), "experiment.algorithms", "at least one algorithm is required");
  std::set<std::string> seen;
  for (const auto& a : algorithms) {
    require(known_algorithms.count(a) == 1, "experiment.algorithms", "unknown algorithm '" + a + "'");
    require(seen.insert(a).second, "experiment.algorithms", "algorithm '" + a + "' listed twice");
    require(!(a == "ane" && tabular()), "experiment.algorithms", "ane needs a continuous-action experiment");
  }
  require(!noise.empty(), "experiment.noise", "at least one noise value is required");
  std::set<double> distinct;
  for (double v : noise) {
    if (tabular())
      require(v >= 0.0 && v <= 1.0, "experiment.noise", fmt::format("value {} outside [0, 1]", v));
    else
      require(finite_at_least(v, 0.0), "experiment.noise", fmt::format("value {} must be >= 0", v));
    require(distinct.insert(v).second, "experiment.noise", fmt::format("value {} listed twice", v));
  }
  require(trials >= 1, "experiment.trials", "must be >= 1");
  require(eval_episodes >= 1, "experiment.eval_episodes", "must be >= 1");
  require(iterations >= 1, "grounding.iterations", "must be >= 1");
  require(real_episodes >= 0, "grounding.real_episodes", "must be >= 0 (0 selects the default)");
  require(sim_episodes >= 1, "grounding.sim_episodes", "must be >= 1");
  require(loop_eval_episodes >= 1, "grounding.eval_episodes", "must be >= 1");
  require(finite_at_least(improvement_threshold, 0.0), "grounding.improvement_threshold", "must be >= 0");
  require(reward_action == "transformed" || reward_action == "original", "grounding.reward_action",
          "expected transformed or original");
  require(epsilon >= 0.0 && epsilon <= 1.0, "tabular.epsilon", "must lie in [0, 1]");
  require(sim_sweeps >= 1, "tabular.sim_sweeps", "must be >= 1");
  require(finite_at_least(exploration_sigma, 0.0), "continuous.exploration_sigma", "must be >= 0");
  require(inverse_encoding == "concat" || inverse_encoding == "delta", "continuous.inverse_encoding",
          "expected concat or delta");
  require(reselect_episodes >= 0, "continuous.reselect_episodes", "must be >= 0");
  require(!hidden.empty(), "model.hidden", "at least one hidden layer is required");
  for (int h : hidden) require(h >= 1, "model.hidden", "layer sizes must be >= 1");
  require(epochs >= 1, "model.epochs", "must be >= 1");
  require(batch_size >= 1, "model.batch_size", "must be >= 1");
  require(std::isfinite(learning_rate) && learning_rate > 0.0, "model.learning_rate", "must be > 0");
  require(finite_at_least(final_lr_fraction, 0.0), "model.final_lr_fraction", "must be >= 0");
  require(population >= 2, "cmaes.population", "must be >= 2");
  require(generations >= 1, "cmaes.generations", "must be >= 1");
  require(rollouts >= 1, "cmaes.rollouts", "must be >= 1");
  require(std::isfinite(initial_step) && initial_step > 0.0, "cmaes.initial_step", "must be > 0");
  if (std::find(algorithms.begin(), algorithms.end(), "ane") != algorithms.end())
    require(!ane_sigmas.empty(), "ane.sigmas", "at least one candidate is required");
  for (double s : ane_sigmas) require(finite_at_least(s, 0.0), "ane.sigmas", fmt::format("value {} must be >= 0", s));
  require(ane_eval_episodes >= 1, "ane.eval_episodes", "must be >= 1");
  require(cliff_horizon >= 1, "cliff.horizon", "must be >= 1");
  require(std::isfinite(pole_mass_factor) && pole_mass_factor > 0.0, "cartpole.pole_mass_factor", "must be > 0");
  require(cartpole_horizon >= 1, "cartpole.horizon", "must be >= 1");
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(assignment + ": override must look like section.key=value");
  set_field(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::istream& in, const std::vector<std::string>& overrides) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }
  ExperimentConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) fail(section, "keys must live inside a [section]");
    for (const auto& [key, value] : body) set_field(config, section + "." + key, value.data());
  }
  for (const auto& o : overrides) apply_override(config, o);
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  return parse_config(in, overrides);
}

std::string write_config(const ExperimentConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const std::string s = f.key.substr(0, dot);
    if (s != section) {
      out += (section.empty() ? "" : "\n") + ("[" + s + "]\n");
      section = s;
    }
    out += f.key.substr(dot + 1) + " = " + f.get(config) + "\n";
  }
  return out;
}

std::string resolve_output_path(const ExperimentConfig& config) {
  if (!config.output.empty()) return config.output;
  const char* dir = std::getenv("SGAT_OUTPUT_DIR");
  const std::string base = dir && *dir ? dir : "results";
  return base + "/" + config.name + ".csv";
}

ExperimentConfig fig5_config() {
  ExperimentConfig c;
  c.name = "cliff-sweep";
  c.algorithms = {"gat", "sgat"};
  c.noise = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  c.trials = 1;
  c.seed = 2020;
  c.eval_episodes = 10000;
  return c;
}

}  // namespace sgat::harness
