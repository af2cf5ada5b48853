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

#ifndef SGAT_OPT_POLICY_ITERATION_HPP
#define SGAT_OPT_POLICY_ITERATION_HPP

#include <stdexcept>
#include <vector>

#include "sgat/core/tabular_model.hpp"

namespace sgat::opt {

using core::TabularMdpModel;

/// No policy reaches a terminal state with probability one from the start.
class NonEpisodicModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolicyIterationResult {
  std::vector<int> policy;
  /// Undiscounted expected return; terminal states are 0 and states from
  /// which no terminal is reachable almost surely are -infinity.
  std::vector<double> values;
  int improvements = 0;
  long sweeps = 0;
};

/// States from which some policy reaches a terminal state with probability
/// one, and for each such state an action that keeps the process inside
/// that set while moving closer to termination (a proper policy).
struct ProperSet {
  std::vector<bool> member;
  std::vector<int> action;
  /// admissible[s * A + a]: every successor of (s, a) stays in the set.
  std::vector<bool> admissible;
};

ProperSet proper_set(const TabularMdpModel& model);

/// Howard policy iteration on an undiscounted episodic model. Evaluation
/// runs Gauss-Seidel sweeps until the largest update falls below
/// `tolerance`; improvement is greedy with ties (within 1e-7, relative)
/// broken towards the lowest action index. Starts from a proper policy and
/// only considers actions that keep the process in the proper set, so every
/// evaluated policy terminates. Throws NonEpisodicModelError when the start
/// state admits no proper policy.
PolicyIterationResult policy_iteration(const TabularMdpModel& model, double tolerance = 1e-9,
                                       int max_improvements = 100);

}  // namespace sgat::opt

#endif  // SGAT_OPT_POLICY_ITERATION_HPP
