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

#ifndef SGAT_ENVS_CART_POLE_HPP
#define SGAT_ENVS_CART_POLE_HPP

#include "sgat/core/env.hpp"

namespace sgat::envs {

/// Cart-pole balancing with a continuous force in [-1, 1].
/// State: (x, x_dot, theta, theta_dot); theta = 0 is upright.
struct CartPoleSpec {
  double cart_mass = 1.0;     // kg
  double pole_mass = 0.1;     // kg
  double half_length = 0.5;   // m, pivot to centre of mass
  double gravity = 9.8;       // m/s^2
  double force_scale = 10.0;  // N per unit action
  double dt = 0.02;           // s
  double angle_limit = 12.0 * 3.14159265358979323846 / 180.0;
  double position_limit = 2.4;
  double init_range = 0.05;   // reset draws each state entry from U(-r, r)
  int horizon = 200;
  /// "Real" variants scale the pole mass and perturb the action.
  double pole_mass_factor = 1.0;
  double action_noise_sigma = 0.0;

  double effective_pole_mass() const { return pole_mass * pole_mass_factor; }
  /// Copy with the given mismatch factor and action-noise level.
  CartPoleSpec with_mismatch(double mass_factor, double noise_sigma) const {
    CartPoleSpec s = *this;
    s.pole_mass_factor = mass_factor;
    s.action_noise_sigma = noise_sigma;
    return s;
  }
};

struct CartPoleAccel {
  double x_acc;
  double theta_acc;
};

/// Closed-form accelerations for an applied force (N).
CartPoleAccel cart_pole_accelerations(const CartPoleSpec& spec, double x_dot, double theta,
                                      double theta_dot, double force);

class CartPole final : public core::Env {
 public:
  CartPole(CartPoleSpec spec, core::Provenance provenance);

  const core::EnvInfo& info() const override { return info_; }
  core::StateVec reset(core::Rng& rng) const override;
  core::StepResult step(const core::StateVec& state, const core::ActionVec& action,
                        core::Rng& rng) const override;
  double reward(const core::ActionVec& action, const core::StateVec& next_state) const override;
  bool is_failure(const core::StateVec& terminal_state) const override;
  core::Provenance provenance() const override { return provenance_; }

  const CartPoleSpec& spec() const { return spec_; }
  bool out_of_bounds(const core::StateVec& state) const;

 private:
  CartPoleSpec spec_;
  core::Provenance provenance_;
  core::EnvInfo info_;
};

}  // namespace sgat::envs

#endif  // SGAT_ENVS_CART_POLE_HPP
