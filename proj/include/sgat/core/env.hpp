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

#ifndef SGAT_CORE_ENV_HPP
#define SGAT_CORE_ENV_HPP

#include <cstddef>
#include <vector>

#include "sgat/core/rng.hpp"
#include "sgat/core/types.hpp"

namespace sgat::core {

struct EnvInfo {
  std::size_t state_dim = 1;
  std::size_t action_dim = 1;
  /// Discrete environments enumerate states and actions as indices.
  bool discrete = false;
  int num_states = 0;
  int num_actions = 0;
  /// Continuous action bounds, one entry per action dimension.
  std::vector<double> action_low;
  std::vector<double> action_high;
  int horizon = 1;
};

/// Environment contract. Implementations are immutable: the state is owned
/// by the caller and every random draw comes from the supplied stream, so
/// one instance can serve concurrent rollouts.
class Env {
 public:
  virtual ~Env() = default;

  virtual const EnvInfo& info() const = 0;
  virtual StateVec reset(Rng& rng) const = 0;
  virtual StepResult step(const StateVec& state, const ActionVec& action, Rng& rng) const = 0;

  /// R(a, s'). Exposed separately so wrappers can re-score a transition.
  virtual double reward(const ActionVec& action, const StateVec& next_state) const = 0;

  /// Whether a terminal state counts as a failure (fell off the cliff,
  /// dropped the pole) for failure-rate statistics.
  virtual bool is_failure(const StateVec& /*terminal_state*/) const { return false; }

  virtual Provenance provenance() const { return Provenance::Sim; }
};

/// Discrete environment that can expose its exact transition kernel.
struct TabularMdpModel;

class TabularEnv : public Env {
 public:
  virtual TabularMdpModel exact_model() const = 0;
};

/// Clamps each action entry into the environment's declared bounds.
ActionVec clamp_action(const EnvInfo& info, ActionVec action);

}  // namespace sgat::core

#endif  // SGAT_CORE_ENV_HPP
