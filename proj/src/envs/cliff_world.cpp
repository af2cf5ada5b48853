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

#include "sgat/envs/cliff_world.hpp"

#include <stdexcept>
#include <string>

#include "sgat/core/rng.hpp"

namespace sgat::envs {

namespace {

void validate(const CliffWorldSpec& spec) {
  if (spec.rows < 2 || spec.cols < 3) throw std::invalid_argument("cliff grid must be at least 2x3");
  if (!(spec.slip_prob >= 0.0 && spec.slip_prob <= 1.0))
    throw std::invalid_argument("cliff slip_prob must lie in [0, 1]");
  if (spec.horizon < 1) throw std::invalid_argument("cliff horizon must be >= 1");
}

double entry_reward(const CliffWorldSpec& spec, int cell) {
  double r = spec.step_penalty;
  if (cell == spec.goal_cell())
    r += spec.goal_reward;
  else if (spec.is_cliff(cell))
    r += spec.cliff_reward;
  return r;
}

}  // namespace

int cliff_move(const CliffWorldSpec& spec, int cell, Direction dir) {
  const int row = cell / spec.cols;
  const int col = cell % spec.cols;
  switch (dir) {
    case Direction::Up:
      return row > 0 ? cell - spec.cols : cell;
    case Direction::Down:
      return row < spec.rows - 1 ? cell + spec.cols : cell;
    case Direction::Left:
      return col > 0 ? cell - 1 : cell;
    case Direction::Right:
      return col < spec.cols - 1 ? cell + 1 : cell;
  }
  throw std::invalid_argument("unknown direction");
}

CliffStep cliff_step(const CliffWorldSpec& spec, int cell, Direction action, core::Rng& rng) {
  if (cell < 0 || cell >= spec.rows * spec.cols) throw std::out_of_range("cliff cell out of range");
  if (spec.is_terminal(cell))
    throw std::logic_error("cliff_step from terminal cell " + std::to_string(cell));
  Direction executed = action;
  if (spec.slip_prob > 0.0 && core::uniform01(rng) < spec.slip_prob)
    executed = static_cast<Direction>(std::uniform_int_distribution<int>(0, kNumDirections - 1)(rng));
  const int next = cliff_move(spec, cell, executed);
  return {next, entry_reward(spec, next), spec.is_terminal(next)};
}

core::TabularMdpModel exact_cliff_transition_matrix(const CliffWorldSpec& spec) {
  validate(spec);
  const int n = spec.rows * spec.cols;
  core::TabularMdpModel m(n, kNumDirections);
  m.start_state = spec.start_cell();
  for (int s = 0; s < n; ++s) {
    m.terminal[static_cast<std::size_t>(s)] = spec.is_terminal(s);
    for (int a = 0; a < kNumDirections; ++a) {
      m.r(a, s) = entry_reward(spec, s);
      if (spec.is_terminal(s)) {
        m.p(s, a, s) = 1.0;
        continue;
      }
      m.p(s, a, cliff_move(spec, s, static_cast<Direction>(a))) += 1.0 - spec.slip_prob;
      for (int d = 0; d < kNumDirections; ++d)
        m.p(s, a, cliff_move(spec, s, static_cast<Direction>(d))) += spec.slip_prob / kNumDirections;
    }
  }
  return m;
}

CliffWorld::CliffWorld(CliffWorldSpec spec, core::Provenance provenance)
    : spec_(spec), provenance_(provenance) {
  validate(spec_);
  info_.discrete = true;
  info_.num_states = spec_.rows * spec_.cols;
  info_.num_actions = kNumDirections;
  info_.horizon = spec_.horizon;
}

core::StateVec CliffWorld::reset(core::Rng& /*rng*/) const {
  return core::StateVec::discrete(spec_.start_cell());
}

core::StepResult CliffWorld::step(const core::StateVec& state, const core::ActionVec& action,
                                  core::Rng& rng) const {
  const int a = action.index();
  if (a < 0 || a >= kNumDirections) throw std::out_of_range("cliff action out of range");
  const CliffStep s = cliff_step(spec_, state.index(), static_cast<Direction>(a), rng);
  return {core::StateVec::discrete(s.cell), s.reward, s.terminal};
}

double CliffWorld::reward(const core::ActionVec& /*action*/, const core::StateVec& next_state) const {
  return entry_reward(spec_, next_state.index());
}

bool CliffWorld::is_failure(const core::StateVec& terminal_state) const {
  return spec_.is_cliff(terminal_state.index());
}

core::TabularMdpModel CliffWorld::exact_model() const { return exact_cliff_transition_matrix(spec_); }

}  // namespace sgat::envs
