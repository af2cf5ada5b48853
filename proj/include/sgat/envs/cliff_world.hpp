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

#ifndef SGAT_ENVS_CLIFF_WORLD_HPP
#define SGAT_ENVS_CLIFF_WORLD_HPP

#include "sgat/core/env.hpp"
#include "sgat/core/tabular_model.hpp"

namespace sgat::envs {

enum class Direction : int { Up = 0, Down = 1, Left = 2, Right = 3 };
inline constexpr int kNumDirections = 4;

/// Cliff Walking grid. Row 0 is the top row; the start is the bottom-left
/// cell, the goal the bottom-right cell and the cliff the cells between them.
/// Cell index = row * cols + col.
struct CliffWorldSpec {
  int rows = 4;
  int cols = 12;
  double step_penalty = -0.1;
  double goal_reward = 100.0;
  double cliff_reward = -10.0;
  /// Per-step probability that the executed direction is resampled uniformly
  /// from all four directions.
  double slip_prob = 0.0;
  int horizon = 1000;

  int start_cell() const { return (rows - 1) * cols; }
  int goal_cell() const { return rows * cols - 1; }
  bool is_cliff(int cell) const {
    return cell / cols == rows - 1 && cell % cols != 0 && cell % cols != cols - 1;
  }
  bool is_terminal(int cell) const { return cell == goal_cell() || is_cliff(cell); }
};

struct CliffStep {
  int cell;
  double reward;
  bool terminal;
};

/// One transition. Throws std::logic_error when `cell` is terminal.
CliffStep cliff_step(const CliffWorldSpec& spec, int cell, Direction action, core::Rng& rng);

/// Cell reached by moving in `dir`; walls leave the agent in place.
int cliff_move(const CliffWorldSpec& spec, int cell, Direction dir);

/// Exact P(s'|s,a) and R(a,s'). Terminal cells are absorbing.
core::TabularMdpModel exact_cliff_transition_matrix(const CliffWorldSpec& spec);

class CliffWorld final : public core::TabularEnv {
 public:
  CliffWorld(CliffWorldSpec spec, core::Provenance provenance);

  const core::EnvInfo& info() const override { return info_; }
  core::StateVec reset(core::Rng& rng) const override;
  core::StepResult step(const core::StateVec& state, const core::ActionVec& action,
                        core::Rng& rng) const override;
  double reward(const core::ActionVec& action, const core::StateVec& next_state) const override;
  bool is_failure(const core::StateVec& terminal_state) const override;
  core::Provenance provenance() const override { return provenance_; }
  core::TabularMdpModel exact_model() const override;

  const CliffWorldSpec& spec() const { return spec_; }

 private:
  CliffWorldSpec spec_;
  core::Provenance provenance_;
  core::EnvInfo info_;
};

}  // namespace sgat::envs

#endif  // SGAT_ENVS_CLIFF_WORLD_HPP
