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

#include "sgat/grounding/transformer.hpp"

#include <stdexcept>

namespace sgat::grounding {

std::string to_string(GroundingMode mode) { return mode == GroundingMode::Gat ? "gat" : "sgat"; }

GroundingMode parse_grounding_mode(const std::string& text) {
  if (text == "gat") return GroundingMode::Gat;
  if (text == "sgat") return GroundingMode::Sgat;
  throw std::invalid_argument("unknown grounding mode '" + text + "'");
}

ActionTransformer::ActionTransformer(std::shared_ptr<const dynamics::ForwardModel> forward,
                                     std::shared_ptr<const dynamics::InverseModel> inverse, GroundingMode mode)
    : forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      mode_(mode),
      counters_(std::make_shared<FallbackCounters>()) {
  if (!forward_ || !inverse_) throw std::invalid_argument("ActionTransformer needs both models");
}

core::ActionVec ActionTransformer::transform_action(const core::StateVec& s, const core::ActionVec& a,
                                                    core::Rng& rng) const {
  counters_->transforms.fetch_add(1, std::memory_order_relaxed);
  const auto predicted = mode_ == GroundingMode::Gat ? forward_->predict(s, a) : forward_->sample(s, a, rng);
  if (!predicted) {
    counters_->forward_unseen.fetch_add(1, std::memory_order_relaxed);
    return a;
  }
  auto action = inverse_->invert(s, *predicted);
  if (!action) {
    counters_->inverse_unreachable.fetch_add(1, std::memory_order_relaxed);
    return a;
  }
  return std::move(*action);
}

FallbackCounts ActionTransformer::counts() const {
  return {counters_->transforms.load(), counters_->forward_unseen.load(), counters_->inverse_unreachable.load()};
}

GroundedEnv::GroundedEnv(std::shared_ptr<const core::Env> sim, ActionTransformer transformer,
                         RewardAction reward_action)
    : sim_(std::move(sim)), transformer_(std::move(transformer)), reward_action_(reward_action) {
  if (!sim_) throw std::invalid_argument("GroundedEnv needs a simulator");
}

core::StepResult GroundedEnv::step(const core::StateVec& state, const core::ActionVec& action,
                                   core::Rng& rng) const {
  const core::ActionVec transformed = transformer_.transform_action(state, action, rng);
  core::StepResult result = sim_->step(state, transformed, rng);
  if (reward_action_ == RewardAction::Original) result.reward = sim_->reward(action, result.next_state);
  return result;
}

core::TabularMdpModel induced_tabular_model(const core::TabularMdpModel& sim,
                                            const dynamics::TabularForwardModel& forward,
                                            const dynamics::TabularInverseModel& inverse, GroundingMode mode,
                                            RewardAction reward_action, FallbackCounters* counters) {
  const int S = sim.num_states, A = sim.num_actions;
  if (forward.num_states() != S || forward.num_actions() != A)
    throw std::invalid_argument("induced_tabular_model: forward model does not match the simulator");
  core::TabularMdpModel g(S, A);
  g.start_state = sim.start_state;
  g.terminal = sim.terminal;
  g.reward = sim.reward;
  g.transition_reward.assign(g.transition.size(), 0.0);
  const auto idx = [&](int s, int a, int t) {
    return (static_cast<std::size_t>(s) * A + a) * S + static_cast<std::size_t>(t);
  };

  // Adds weight * (sim row of `executed`) to g's row (s, a); rewards are
  // accumulated as weighted sums and normalized below.
  const auto accumulate = [&](int s, int a, int executed, double weight) {
    const int scored = reward_action == RewardAction::Transformed ? executed : a;
    for (int t = 0; t < S; ++t) {
      const double p = weight * sim.p(s, executed, t);
      if (p <= 0.0) continue;
      g.transition[idx(s, a, t)] += p;
      g.transition_reward[idx(s, a, t)] += p * sim.r(s, scored, t);
    }
  };
  const auto count = [&](std::atomic<long> FallbackCounters::*field) {
    if (counters) (counters->*field).fetch_add(1, std::memory_order_relaxed);
  };

  for (int s = 0; s < S; ++s)
    for (int a = 0; a < A; ++a) {
      if (sim.terminal[static_cast<std::size_t>(s)] || !forward.seen(s, a)) {
        if (!sim.terminal[static_cast<std::size_t>(s)]) count(&FallbackCounters::forward_unseen);
        accumulate(s, a, a, 1.0);
      } else if (mode == GroundingMode::Gat) {
        const int predicted = *forward.mode(s, a);
        const auto executed = inverse.action_for(s, predicted);
        if (!executed) count(&FallbackCounters::inverse_unreachable);
        accumulate(s, a, executed.value_or(a), 1.0);
      } else {
        const auto p = forward.probabilities(s, a);
        for (int x = 0; x < S; ++x) {
          if (p[static_cast<std::size_t>(x)] <= 0.0) continue;
          const auto executed = inverse.action_for(s, x);
          if (!executed) count(&FallbackCounters::inverse_unreachable);
          accumulate(s, a, executed.value_or(a), p[static_cast<std::size_t>(x)]);
        }
      }
      for (int t = 0; t < S; ++t) {
        const double p = g.transition[idx(s, a, t)];
        g.transition_reward[idx(s, a, t)] = p > 0.0 ? g.transition_reward[idx(s, a, t)] / p : sim.r(s, a, t);
      }
    }
  return g;
}

}  // namespace sgat::grounding
