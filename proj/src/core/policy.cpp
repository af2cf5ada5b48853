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

#include "sgat/core/policy.hpp"

#include <algorithm>
#include <stdexcept>

namespace sgat::core {

ActionVec TabularPolicy::act(const StateVec& state, Rng& /*rng*/) const {
  return ActionVec::discrete(action(state.index()));
}

LinearPolicy::LinearPolicy(const EnvInfo& info, std::vector<double> params)
    : info_(info), params_(std::move(params)) {
  if (info_.discrete) throw std::invalid_argument("LinearPolicy needs a continuous action space");
  if (params_.size() != param_count(info_))
    throw std::invalid_argument("LinearPolicy: expected " + std::to_string(param_count(info_)) +
                                " parameters, got " + std::to_string(params_.size()));
}

ActionVec LinearPolicy::act(const StateVec& state, Rng& /*rng*/) const {
  const std::size_t cols = info_.state_dim + 1;
  std::vector<double> out(info_.action_dim, 0.0);
  for (std::size_t i = 0; i < info_.action_dim; ++i) {
    const double* w = params_.data() + i * cols;
    double v = w[info_.state_dim];
    for (std::size_t j = 0; j < info_.state_dim; ++j) v += w[j] * state[j];
    out[i] = v;
  }
  return clamp_action(info_, ActionVec(std::move(out)));
}

EpsilonGreedyPolicy::EpsilonGreedyPolicy(PolicyPtr base, int num_actions, double epsilon)
    : base_(std::move(base)), num_actions_(num_actions), epsilon_(epsilon) {
  if (num_actions_ < 1) throw std::invalid_argument("EpsilonGreedyPolicy: no actions");
}

ActionVec EpsilonGreedyPolicy::act(const StateVec& state, Rng& rng) const {
  if (epsilon_ > 0.0 && uniform01(rng) < epsilon_)
    return ActionVec::discrete(std::uniform_int_distribution<int>(0, num_actions_ - 1)(rng));
  return base_->act(state, rng);
}

GaussianExplorationPolicy::GaussianExplorationPolicy(PolicyPtr base, const EnvInfo& info,
                                                     double sigma)
    : base_(std::move(base)), info_(info), sigma_(sigma) {}

ActionVec GaussianExplorationPolicy::act(const StateVec& state, Rng& rng) const {
  ActionVec a = base_->act(state, rng);
  if (sigma_ <= 0.0) return a;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sigma_ * standard_normal(rng);
  return clamp_action(info_, std::move(a));
}

}  // namespace sgat::core
