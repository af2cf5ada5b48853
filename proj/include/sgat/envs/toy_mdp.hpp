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

#ifndef SGAT_ENVS_TOY_MDP_HPP
#define SGAT_ENVS_TOY_MDP_HPP

#include <utility>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/core/tabular_model.hpp"

namespace sgat::envs {

/// Single-decision MDPs from state s0. Action index i is a_{i+1}; state
/// index j is s_j. Every successor of s0 is terminal.
///  - Sim2:  a1 -> s1 (+1), a2 -> s2 (-1)
///  - Real2: the two edges flipped
///  - Sim3:  a1 -> s1 (+1), a2 -> s2 (-1), a3 -> s3 (+10)
///  - Real3: a1 -> s1, a2 -> s2 w.p. 0.8 / s3 w.p. 0.2, a3 -> s2
enum class ToyVariant { Sim2, Real2, Sim3, Real3 };

struct ToyMdpSpec {
  ToyVariant variant = ToyVariant::Sim3;
  double reward_s1 = 1.0;
  double reward_s2 = -1.0;
  double reward_s3 = 10.0;
  /// Probability that a2 reaches s2 in the Real3 variant.
  double real_a2_to_s2 = 0.8;
};

class ToyMdp final : public core::TabularEnv {
 public:
  explicit ToyMdp(ToyMdpSpec spec);

  const core::EnvInfo& info() const override { return info_; }
  core::StateVec reset(core::Rng& rng) const override;
  core::StepResult step(const core::StateVec& state, const core::ActionVec& action,
                        core::Rng& rng) const override;
  double reward(const core::ActionVec& action, const core::StateVec& next_state) const override;
  core::Provenance provenance() const override;
  core::TabularMdpModel exact_model() const override;

  const ToyMdpSpec& spec() const { return spec_; }

 private:
  ToyMdpSpec spec_;
  core::EnvInfo info_;
  // outcomes_[a] = list of (next state, probability)
  std::vector<std::vector<std::pair<int, double>>> outcomes_;
  std::vector<double> state_reward_;
};

}  // namespace sgat::envs

#endif  // SGAT_ENVS_TOY_MDP_HPP
