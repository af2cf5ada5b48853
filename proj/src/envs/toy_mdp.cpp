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

#include "sgat/envs/toy_mdp.hpp"

#include <stdexcept>

#include "sgat/core/rng.hpp"

namespace sgat::envs {

using core::ActionVec;
using core::StateVec;

ToyMdp::ToyMdp(ToyMdpSpec spec) : spec_(spec) {
  const bool three = spec_.variant == ToyVariant::Sim3 || spec_.variant == ToyVariant::Real3;
  info_.discrete = true;
  info_.num_states = three ? 4 : 3;
  info_.num_actions = three ? 3 : 2;
  info_.horizon = 1;
  state_reward_ = {0.0, spec_.reward_s1, spec_.reward_s2};
  if (three) state_reward_.push_back(spec_.reward_s3);
  switch (spec_.variant) {
    case ToyVariant::Sim2:
      outcomes_ = {{{1, 1.0}}, {{2, 1.0}}};
      break;
    case ToyVariant::Real2:
      outcomes_ = {{{2, 1.0}}, {{1, 1.0}}};
      break;
    case ToyVariant::Sim3:
      outcomes_ = {{{1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}};
      break;
    case ToyVariant::Real3:
      if (!(spec_.real_a2_to_s2 >= 0.0 && spec_.real_a2_to_s2 <= 1.0))
        throw std::invalid_argument("ToyMdpSpec.real_a2_to_s2 must lie in [0, 1]");
      outcomes_ = {{{1, 1.0}}, {{2, spec_.real_a2_to_s2}, {3, 1.0 - spec_.real_a2_to_s2}}, {{2, 1.0}}};
      break;
  }
}

StateVec ToyMdp::reset(core::Rng& /*rng*/) const { return StateVec::discrete(0); }

core::StepResult ToyMdp::step(const StateVec& state, const ActionVec& action, core::Rng& rng) const {
  if (state.index() != 0) throw std::logic_error("ToyMdp: step from a terminal state");
  const int a = action.index();
  if (a < 0 || a >= info_.num_actions) throw std::out_of_range("ToyMdp: action out of range");
  const auto& outs = outcomes_[static_cast<std::size_t>(a)];
  int next = outs.back().first;
  if (outs.size() > 1) {
    double u = core::uniform01(rng);
    for (const auto& [s, p] : outs) {
      if (u < p) {
        next = s;
        break;
      }
      u -= p;
    }
  }
  StateVec next_state = StateVec::discrete(next);
  const double r = reward(action, next_state);
  return {std::move(next_state), r, true};
}

double ToyMdp::reward(const ActionVec& /*action*/, const StateVec& next_state) const {
  return state_reward_.at(static_cast<std::size_t>(next_state.index()));
}

core::Provenance ToyMdp::provenance() const {
  return spec_.variant == ToyVariant::Real2 || spec_.variant == ToyVariant::Real3
             ? core::Provenance::Real
             : core::Provenance::Sim;
}

core::TabularMdpModel ToyMdp::exact_model() const {
  core::TabularMdpModel m(info_.num_states, info_.num_actions);
  m.start_state = 0;
  for (int a = 0; a < info_.num_actions; ++a) {
    for (const auto& [s, p] : outcomes_[static_cast<std::size_t>(a)]) m.p(0, a, s) += p;
    for (int s = 0; s < info_.num_states; ++s) m.r(a, s) = state_reward_[static_cast<std::size_t>(s)];
  }
  for (int s = 1; s < info_.num_states; ++s) {
    m.terminal[static_cast<std::size_t>(s)] = true;
    for (int a = 0; a < info_.num_actions; ++a) m.p(s, a, s) = 1.0;
  }
  return m;
}

}  // namespace sgat::envs
