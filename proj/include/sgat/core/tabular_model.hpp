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

#ifndef SGAT_CORE_TABULAR_MODEL_HPP
#define SGAT_CORE_TABULAR_MODEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sgat::core {

/// Finite episodic MDP: P(s'|s,a), R(a,s') and the set of terminal states.
/// Terminal states are absorbing and carry value 0.
struct TabularMdpModel {
  int num_states = 0;
  int num_actions = 0;
  int start_state = 0;
  std::vector<double> transition;  // [s][a][s'], row-major
  std::vector<double> reward;      // [a][s']
  std::vector<bool> terminal;
  /// Optional [s][a][s'] expected reward overriding R(a, s'); used by
  /// grounded models whose reward depends on the transformed action.
  std::vector<double> transition_reward;

  TabularMdpModel() = default;
  TabularMdpModel(int states, int actions)
      : num_states(states),
        num_actions(actions),
        transition(static_cast<std::size_t>(states) * actions * states, 0.0),
        reward(static_cast<std::size_t>(actions) * states, 0.0),
        terminal(static_cast<std::size_t>(states), false) {}

  double& p(int s, int a, int next) { return transition[offset(s, a) + next]; }
  double p(int s, int a, int next) const { return transition[offset(s, a) + next]; }
  std::span<const double> row(int s, int a) const {
    return {transition.data() + offset(s, a), static_cast<std::size_t>(num_states)};
  }
  std::span<double> row(int s, int a) {
    return {transition.data() + offset(s, a), static_cast<std::size_t>(num_states)};
  }
  double& r(int a, int next) { return reward[static_cast<std::size_t>(a) * num_states + next]; }
  double r(int a, int next) const { return reward[static_cast<std::size_t>(a) * num_states + next]; }

  /// Expected reward of the transition (s, a, s').
  double r(int s, int a, int next) const {
    return transition_reward.empty() ? r(a, next) : transition_reward[offset(s, a) + next];
  }

  /// Empty when every row is a distribution; otherwise the first offence.
  std::string validate(double tolerance = 1e-9) const;

 private:
  std::size_t offset(int s, int a) const {
    return (static_cast<std::size_t>(s) * num_actions + a) * num_states;
  }
};

}  // namespace sgat::core

#endif  // SGAT_CORE_TABULAR_MODEL_HPP
