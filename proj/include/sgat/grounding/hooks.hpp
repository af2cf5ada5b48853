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

#ifndef SGAT_GROUNDING_HOOKS_HPP
#define SGAT_GROUNDING_HOOKS_HPP

#include <memory>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/dynamics/neural.hpp"
#include "sgat/grounding/loop.hpp"
#include "sgat/opt/cmaes.hpp"

namespace sgat::grounding {

struct TabularGroundingOptions {
  /// Epsilon-greedy exploration around the current policy when collecting.
  double epsilon = 0.1;
  /// Times every non-terminal (s, a) of the simulator is stepped to build
  /// the inverse model.
  int sim_sweeps = 1;
};

/// Count-based models and policy iteration on the grounded simulator's
/// induced kernel. `sim` must be the simulator passed to the loop.
GroundingHooks tabular_hooks(std::shared_ptr<const core::TabularEnv> sim, const TabularGroundingOptions& options = {});

/// Every non-terminal (s, a) stepped `sweeps` times as one-step Sim
/// trajectories.
std::vector<core::Trajectory> sweep_tabular(const core::TabularEnv& sim, int sweeps, std::uint64_t seed);

struct ContinuousGroundingOptions {
  /// Gaussian exploration noise added to the current policy's actions.
  double exploration_sigma = 0.2;
  dynamics::NeuralModelConfig forward_model;
  dynamics::NeuralModelConfig inverse_model;
  dynamics::InverseEncoding inverse_encoding = dynamics::InverseEncoding::Concat;
  /// initial_mean and seed are replaced by the current policy and the loop.
  opt::CmaesConfig cmaes;
  /// When positive, the best-evaluated CMA-ES candidate and the final
  /// search mean are re-scored on this many grounded episodes and the
  /// better one is kept; guards against candidates that were merely lucky
  /// on a few stochastic rollouts.
  int reselect_episodes = 0;
};

/// Neural models (Gaussian NLL head for SGAT, MSE head for GAT) and CMA-ES
/// over LinearPolicy parameters, warm-started from the current policy.
GroundingHooks continuous_hooks(const core::EnvInfo& sim_info, const ContinuousGroundingOptions& options = {});

}  // namespace sgat::grounding

#endif  // SGAT_GROUNDING_HOOKS_HPP
