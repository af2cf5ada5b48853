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

#ifndef SGAT_GROUNDING_TRANSFORMER_HPP
#define SGAT_GROUNDING_TRANSFORMER_HPP

#include <atomic>
#include <memory>
#include <string>

#include "sgat/core/env.hpp"
#include "sgat/core/tabular_model.hpp"
#include "sgat/dynamics/models.hpp"
#include "sgat/dynamics/tabular.hpp"

namespace sgat::grounding {

/// GAT uses the forward model's point prediction; SGAT samples from it.
enum class GroundingMode { Gat, Sgat };

std::string to_string(GroundingMode mode);
GroundingMode parse_grounding_mode(const std::string& text);

/// Which action the grounded simulator scores with R(., s').
enum class RewardAction { Transformed, Original };

/// Shared, thread-safe tallies of model fallbacks during grounding.
struct FallbackCounters {
  std::atomic<long> transforms{0};
  std::atomic<long> forward_unseen{0};
  std::atomic<long> inverse_unreachable{0};
};

struct FallbackCounts {
  long transforms = 0;
  long forward_unseen = 0;
  long inverse_unreachable = 0;
};

/// g(s, a) = f_sim^-1(s, f_real(s, a)). When the forward model has no data
/// for (s, a), or the inverse cannot reach the predicted state, the agent's
/// action passes through unchanged and the event is counted.
class ActionTransformer {
 public:
  ActionTransformer(std::shared_ptr<const dynamics::ForwardModel> forward,
                    std::shared_ptr<const dynamics::InverseModel> inverse, GroundingMode mode);

  /// Draws from rng only in SGAT mode.
  core::ActionVec transform_action(const core::StateVec& s, const core::ActionVec& a, core::Rng& rng) const;

  GroundingMode mode() const { return mode_; }
  const dynamics::ForwardModel& forward() const { return *forward_; }
  const dynamics::InverseModel& inverse() const { return *inverse_; }
  const std::shared_ptr<FallbackCounters>& counters() const { return counters_; }
  FallbackCounts counts() const;

 private:
  std::shared_ptr<const dynamics::ForwardModel> forward_;
  std::shared_ptr<const dynamics::InverseModel> inverse_;
  GroundingMode mode_;
  std::shared_ptr<FallbackCounters> counters_;
};

/// The simulator with every agent action passed through the transformer.
/// Transitions and termination come from the simulator run on the
/// transformed action; rollouts are tagged Provenance::Grounded.
class GroundedEnv final : public core::Env {
 public:
  GroundedEnv(std::shared_ptr<const core::Env> sim, ActionTransformer transformer,
              RewardAction reward_action = RewardAction::Transformed);

  const core::EnvInfo& info() const override { return sim_->info(); }
  core::StateVec reset(core::Rng& rng) const override { return sim_->reset(rng); }
  core::StepResult step(const core::StateVec& state, const core::ActionVec& action, core::Rng& rng) const override;
  double reward(const core::ActionVec& action, const core::StateVec& next_state) const override {
    return sim_->reward(action, next_state);
  }
  bool is_failure(const core::StateVec& terminal_state) const override { return sim_->is_failure(terminal_state); }
  core::Provenance provenance() const override { return core::Provenance::Grounded; }

  const core::Env& sim() const { return *sim_; }
  const std::shared_ptr<const core::Env>& sim_ptr() const { return sim_; }
  const ActionTransformer& transformer() const { return transformer_; }
  RewardAction reward_action() const { return reward_action_; }

 private:
  std::shared_ptr<const core::Env> sim_;
  ActionTransformer transformer_;
  RewardAction reward_action_;
};

/// Exact transition kernel of a grounded tabular simulator: for GAT the sim
/// row of the single transformed action, for SGAT the forward distribution
/// pushed through the inverse and the sim. Applies the same fallbacks as
/// ActionTransformer; each affected (s, a, predicted s') is counted once in
/// `counters` when given.
core::TabularMdpModel induced_tabular_model(const core::TabularMdpModel& sim,
                                            const dynamics::TabularForwardModel& forward,
                                            const dynamics::TabularInverseModel& inverse, GroundingMode mode,
                                            RewardAction reward_action = RewardAction::Transformed,
                                            FallbackCounters* counters = nullptr);

}  // namespace sgat::grounding

#endif  // SGAT_GROUNDING_TRANSFORMER_HPP
