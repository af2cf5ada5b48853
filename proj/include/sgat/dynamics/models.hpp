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

#ifndef SGAT_DYNAMICS_MODELS_HPP
#define SGAT_DYNAMICS_MODELS_HPP

#include <optional>

#include "sgat/core/rng.hpp"
#include "sgat/core/types.hpp"

namespace sgat::dynamics {

/// Learned model of the real environment's transition function.
/// Returns std::nullopt where the model has no data for (s, a).
class ForwardModel {
 public:
  virtual ~ForwardModel() = default;
  /// Point prediction: the most likely next state (tabular) or the mean.
  virtual std::optional<core::StateVec> predict(const core::StateVec& s, const core::ActionVec& a) const = 0;
  /// Draw from the predicted next-state distribution.
  virtual std::optional<core::StateVec> sample(const core::StateVec& s, const core::ActionVec& a,
                                               core::Rng& rng) const = 0;
  virtual double training_loss() const = 0;
};

/// Learned inverse of the simulator: the action taking s to s'.
/// Returns std::nullopt when s' is unreachable from s in the data.
class InverseModel {
 public:
  virtual ~InverseModel() = default;
  virtual std::optional<core::ActionVec> invert(const core::StateVec& s, const core::StateVec& next) const = 0;
  virtual double training_loss() const = 0;
};

}  // namespace sgat::dynamics

#endif  // SGAT_DYNAMICS_MODELS_HPP
