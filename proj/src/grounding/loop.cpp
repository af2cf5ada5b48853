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

#include "sgat/grounding/loop.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sgat/core/rng.hpp"

namespace sgat::grounding {

namespace {

enum Stage : std::uint64_t { kRealData = 1, kSimData = 2, kImprove = 3, kEvaluate = 4 };

void require_provenance(std::span<const core::Trajectory> data, core::Provenance expected, const char* what) {
  for (const auto& t : data)
    if (t.provenance != expected)
      throw std::logic_error(std::string(what) + " received " + core::to_string(t.provenance) + " data");
}

std::size_t transition_count(std::span<const core::Trajectory> data) {
  std::size_t n = 0;
  for (const auto& t : data) n += t.size();
  return n;
}

void append(std::vector<core::Trajectory>& into, std::vector<core::Trajectory>&& from, bool accumulate) {
  if (!accumulate) into.clear();
  into.insert(into.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

}  // namespace

std::string GroundingLoopConfig::validate() const {
  if (iterations < 1) return "iterations must be >= 1";
  if (real_episodes < 1) return "real_episodes must be >= 1";
  if (sim_episodes < 1) return "sim_episodes must be >= 1";
  if (eval_episodes < 1) return "eval_episodes must be >= 1";
  if (!(improvement_threshold >= 0.0) || !std::isfinite(improvement_threshold))
    return "improvement_threshold must be a finite non-negative number";
  return {};
}

GroundingResult ground_and_improve(const GroundingLoopConfig& config, const GroundingHooks& hooks,
                                   std::shared_ptr<const core::Env> sim, const core::Env& real,
                                   core::PolicyPtr initial) {
  if (const auto err = config.validate(); !err.empty()) throw std::invalid_argument("grounding loop: " + err);
  if (!hooks.explore || !hooks.fit_forward || !hooks.fit_inverse || !hooks.improve)
    throw std::invalid_argument("grounding loop: missing hook");
  if (!sim || !initial) throw std::invalid_argument("grounding loop: null simulator or policy");
  const auto& si = sim->info();
  const auto& ri = real.info();
  if (si.state_dim != ri.state_dim || si.action_dim != ri.action_dim || si.discrete != ri.discrete ||
      si.num_states != ri.num_states || si.num_actions != ri.num_actions)
    throw std::invalid_argument("grounding loop: simulator and real environment differ in shape");

  GroundingResult result;
  result.best = initial;
  result.initial_eval = core::evaluate(real, *initial, config.eval_episodes, core::derive_seed(config.seed, {0, kEvaluate}));
  result.best_eval = result.initial_eval;
  double previous = result.initial_eval.mean_return;
  bool have_best = false;

  std::vector<core::Trajectory> real_data, sim_data;
  core::PolicyPtr current = initial;
  result.stop_reason = "max_iterations";
  for (int it = 1; it <= config.iterations; ++it) {
    const auto start = std::chrono::steady_clock::now();
    const auto k = static_cast<std::uint64_t>(it);
    IterationDiagnostics diag;
    diag.iteration = it;

    const core::PolicyPtr behaviour = hooks.explore(current);
    append(real_data, core::collect(real, *behaviour, config.real_episodes, core::derive_seed(config.seed, {k, kRealData})),
           config.accumulate_data);
    const auto sim_seed = core::derive_seed(config.seed, {k, kSimData});
    append(sim_data,
           hooks.collect_sim ? hooks.collect_sim(*sim, behaviour, sim_seed)
                             : core::collect(*sim, *behaviour, config.sim_episodes, sim_seed),
           config.accumulate_data);
    require_provenance(real_data, core::Provenance::Real, "forward model");
    require_provenance(sim_data, core::Provenance::Sim, "inverse model");
    diag.real_transitions = transition_count(real_data);
    diag.sim_transitions = transition_count(sim_data);

    auto forward = hooks.fit_forward(real_data, config.mode);
    auto inverse = hooks.fit_inverse(sim_data);
    diag.forward_loss = forward->training_loss();
    diag.inverse_loss = inverse->training_loss();
    const GroundedEnv grounded(sim, ActionTransformer(std::move(forward), std::move(inverse), config.mode),
                               config.reward_action);

    core::PolicyPtr next;
    try {
      next = hooks.improve(grounded, current, core::derive_seed(config.seed, {k, kImprove}));
    } catch (const std::exception& e) {
      diag.error = e.what();
    }
    diag.fallbacks = grounded.transformer().counts();
    if (!next) {
      if (diag.error.empty()) diag.error = "policy improvement returned no policy";
      diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      result.diagnostics.push_back(std::move(diag));
      result.stop_reason = "improvement_failed";
      break;
    }

    diag.real_eval = core::evaluate(real, *next, config.eval_episodes, core::derive_seed(config.seed, {k, kEvaluate}));
    diag.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double mean = diag.real_eval.mean_return;
    if (!have_best || mean > result.best_eval.mean_return) {
      have_best = true;
      result.best = next;
      result.best_iteration = it;
      result.best_eval = diag.real_eval;
    }
    result.policies.push_back(next);
    result.diagnostics.push_back(std::move(diag));
    current = next;

    const double gain = (mean - previous) / std::max(std::abs(previous), 1e-12);
    previous = mean;
    if (gain < config.improvement_threshold && it < config.iterations) {
      result.stop_reason = "converged";
      break;
    }
  }
  return result;
}

}  // namespace sgat::grounding
