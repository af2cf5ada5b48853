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

#ifndef SGAT_CORE_POLICY_HPP
#define SGAT_CORE_POLICY_HPP

#include <memory>
#include <span>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/core/rng.hpp"
#include "sgat/core/types.hpp"

namespace sgat::core {

class Policy {
 public:
  virtual ~Policy() = default;
  virtual ActionVec act(const StateVec& state, Rng& rng) const = 0;
};

using PolicyPtr = std::shared_ptr<const Policy>;

/// One action index per discrete state.
class TabularPolicy final : public Policy {
 public:
  explicit TabularPolicy(std::vector<int> actions) : actions_(std::move(actions)) {}

  ActionVec act(const StateVec& state, Rng& rng) const override;

  int action(int state) const { return actions_.at(static_cast<std::size_t>(state)); }
  const std::vector<int>& actions() const { return actions_; }

 private:
  std::vector<int> actions_;
};

/// a = clamp(W [s; 1], low, high) with W stored row-major in a flat
/// parameter vector of size action_dim * (state_dim + 1).
class LinearPolicy final : public Policy {
 public:
  LinearPolicy(const EnvInfo& info, std::vector<double> params);

  static std::size_t param_count(const EnvInfo& info) {
    return info.action_dim * (info.state_dim + 1);
  }

  ActionVec act(const StateVec& state, Rng& rng) const override;
  std::span<const double> params() const { return params_; }

 private:
  EnvInfo info_;
  std::vector<double> params_;
};

/// Uniform-random action with probability epsilon, otherwise the base
/// policy. Discrete environments only. Used for data collection.
class EpsilonGreedyPolicy final : public Policy {
 public:
  EpsilonGreedyPolicy(PolicyPtr base, int num_actions, double epsilon);
  ActionVec act(const StateVec& state, Rng& rng) const override;

 private:
  PolicyPtr base_;
  int num_actions_;
  double epsilon_;
};

/// Adds clamped zero-mean Gaussian noise to a continuous base policy.
class GaussianExplorationPolicy final : public Policy {
 public:
  GaussianExplorationPolicy(PolicyPtr base, const EnvInfo& info, double sigma);
  ActionVec act(const StateVec& state, Rng& rng) const override;

 private:
  PolicyPtr base_;
  EnvInfo info_;
  double sigma_;
};

}  // namespace sgat::core

#endif  // SGAT_CORE_POLICY_HPP
