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

#include "sgat/envs/cart_pole.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgat/core/rng.hpp"

namespace sgat::envs {

CartPoleAccel cart_pole_accelerations(const CartPoleSpec& spec, double /*x_dot*/, double theta,
                                      double theta_dot, double force) {
  const double mp = spec.effective_pole_mass();
  const double total = spec.cart_mass + mp;
  const double l = spec.half_length;
  const double sin_t = std::sin(theta);
  const double cos_t = std::cos(theta);
  const double temp = (force + mp * l * theta_dot * theta_dot * sin_t) / total;
  const double theta_acc =
      (spec.gravity * sin_t - cos_t * temp) / (l * (4.0 / 3.0 - mp * cos_t * cos_t / total));
  const double x_acc = temp - mp * l * theta_acc * cos_t / total;
  return {x_acc, theta_acc};
}

CartPole::CartPole(CartPoleSpec spec, core::Provenance provenance)
    : spec_(spec), provenance_(provenance) {
  if (!(spec_.cart_mass > 0 && spec_.pole_mass > 0 && spec_.half_length > 0 && spec_.gravity > 0 &&
        spec_.force_scale > 0 && spec_.dt > 0 && spec_.angle_limit > 0 && spec_.position_limit > 0 &&
        spec_.pole_mass_factor > 0))
    throw std::invalid_argument("cart-pole physical constants must be positive");
  if (!(spec_.action_noise_sigma >= 0.0)) throw std::invalid_argument("cart-pole noise sigma < 0");
  if (spec_.horizon < 1) throw std::invalid_argument("cart-pole horizon must be >= 1");
  info_.state_dim = 4;
  info_.action_dim = 1;
  info_.action_low = {-1.0};
  info_.action_high = {1.0};
  info_.horizon = spec_.horizon;
}

core::StateVec CartPole::reset(core::Rng& rng) const {
  std::uniform_real_distribution<double> init(-spec_.init_range, spec_.init_range);
  std::vector<double> s(4);
  for (double& v : s) v = init(rng);
  return core::StateVec(std::move(s));
}

core::StepResult CartPole::step(const core::StateVec& state, const core::ActionVec& action,
                                core::Rng& rng) const {
  if (state.size() != 4 || action.size() != 1)
    throw std::invalid_argument("cart-pole expects a 4-D state and a 1-D action");
  if (!(std::abs(action[0]) <= 1.0)) throw std::invalid_argument("cart-pole action outside [-1, 1]");
  double a = action[0];
  if (spec_.action_noise_sigma > 0.0)
    a = std::clamp(a + spec_.action_noise_sigma * core::standard_normal(rng), -1.0, 1.0);
  const double force = a * spec_.force_scale;

  double x = state[0], x_dot = state[1], theta = state[2], theta_dot = state[3];
  const CartPoleAccel acc = cart_pole_accelerations(spec_, x_dot, theta, theta_dot, force);
  // Semi-implicit Euler: velocities first, positions from the new velocities.
  x_dot += spec_.dt * acc.x_acc;
  theta_dot += spec_.dt * acc.theta_acc;
  x += spec_.dt * x_dot;
  theta += spec_.dt * theta_dot;

  core::StateVec next({x, x_dot, theta, theta_dot});
  if (!next.all_finite()) throw std::runtime_error("cart-pole produced a non-finite state");
  const bool terminal = out_of_bounds(next);
  return {std::move(next), terminal ? 0.0 : 1.0, terminal};
}

double CartPole::reward(const core::ActionVec& /*action*/, const core::StateVec& next_state) const {
  return out_of_bounds(next_state) ? 0.0 : 1.0;
}

bool CartPole::out_of_bounds(const core::StateVec& s) const {
  return std::abs(s[0]) > spec_.position_limit || std::abs(s[2]) > spec_.angle_limit;
}

bool CartPole::is_failure(const core::StateVec& terminal_state) const {
  return out_of_bounds(terminal_state);
}

}  // namespace sgat::envs
