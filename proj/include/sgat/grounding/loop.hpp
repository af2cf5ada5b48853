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

#ifndef SGAT_GROUNDING_LOOP_HPP
#define SGAT_GROUNDING_LOOP_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/core/policy.hpp"
#include "sgat/core/rollout.hpp"
#include "sgat/grounding/transformer.hpp"

namespace sgat::grounding {

struct GroundingLoopConfig {
  GroundingMode mode = GroundingMode::Sgat;
  int iterations = 5;
  int real_episodes = 50;
  int sim_episodes = 50;
  int eval_episodes = 1000;
  /// Stop once the real mean return improves by less than this fraction of
  /// the previous iteration's.
  double improvement_threshold = 0.01;
  /// Keep real and sim data from earlier iterations when refitting.
  bool accumulate_data = true;
  RewardAction reward_action = RewardAction::Transformed;
  std::uint64_t seed = 0;

  /// Empty when valid, otherwise the offending field and why.
  std::string validate() const;
};

/// Environment-specific pieces of the loop.
struct GroundingHooks {
  /// Behaviour policy for data collection around the current policy.
  std::function<core::PolicyPtr(const core::PolicyPtr& current)> explore;
  /// Simulator data for the inverse model; defaults to rollouts of the
  /// exploration policy when empty.
  std::function<std::vector<core::Trajectory>(const core::Env& sim, const core::PolicyPtr& explore,
                                              std::uint64_t seed)>
      collect_sim;
  std::function<std::shared_ptr<const dynamics::ForwardModel>(std::span<const core::Trajectory> real,
                                                              GroundingMode mode)>
      fit_forward;
  std::function<std::shared_ptr<const dynamics::InverseModel>(std::span<const core::Trajectory> sim)> fit_inverse;
  /// Policy improvement inside the grounded simulator.
  std::function<core::PolicyPtr(const GroundedEnv& grounded, const core::PolicyPtr& current, std::uint64_t seed)>
      improve;
};

struct IterationDiagnostics {
  int iteration = 0;
  std::size_t real_transitions = 0;
  std::size_t sim_transitions = 0;
  double forward_loss = 0.0;
  double inverse_loss = 0.0;
  FallbackCounts fallbacks;
  core::EvalStats real_eval;
  double seconds = 0.0;
  /// Non-empty when policy improvement failed in this iteration.
  std::string error;
};

struct GroundingResult {
  /// Policy produced by each completed iteration.
  std::vector<core::PolicyPtr> policies;
  std::vector<IterationDiagnostics> diagnostics;
  /// Highest real mean return among completed iterations, or the initial
  /// policy when none completed; best_iteration is 0 in that case.
  core::PolicyPtr best;
  int best_iteration = 0;
  core::EvalStats best_eval;
  core::EvalStats initial_eval;
  std::string stop_reason;
};

/// Alternates real data collection, model fitting, improvement in the
/// grounded simulator and real evaluation. The forward model only ever sees
/// Real trajectories and the inverse only Sim ones; violations throw
/// std::logic_error. Improvement failures end the loop and the best policy
/// so far is returned. Real evaluations of iteration k use streams derived
/// from (seed, k), so runs that differ only in mode share random numbers.
GroundingResult ground_and_improve(const GroundingLoopConfig& config, const GroundingHooks& hooks,
                                   std::shared_ptr<const core::Env> sim, const core::Env& real,
                                   core::PolicyPtr initial);

}  // namespace sgat::grounding

#endif  // SGAT_GROUNDING_LOOP_HPP
