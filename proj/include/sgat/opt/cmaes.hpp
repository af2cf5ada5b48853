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

#ifndef SGAT_OPT_CMAES_HPP
#define SGAT_OPT_CMAES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "sgat/core/env.hpp"

namespace sgat::opt {

struct CmaesConfig {
  int population = 16;
  std::vector<double> initial_mean;
  double initial_step = 0.5;
  int max_generations = 200;
  /// Rollouts averaged per candidate by rollout_objective().
  int rollouts_per_candidate = 3;
  std::uint64_t seed = 0;
  /// Evaluate a generation's candidates with OpenMP. The serial path is the
  /// reference; both produce identical results.
  bool parallel = true;
};

/// Quantity to maximize. `eval_seed` is shared by all candidates of one
/// generation, so stochastic objectives compare candidates under common
/// random numbers. Must be safe to call concurrently.
using Objective = std::function<double(const Eigen::VectorXd& theta, std::uint64_t eval_seed)>;

struct CmaesResult {
  Eigen::VectorXd best;
  double best_value = 0.0;
  Eigen::VectorXd final_mean;
  double final_step = 0.0;
  int generations = 0;
  int failed_evaluations = 0;
  /// Best-so-far value after each generation (non-decreasing).
  std::vector<double> best_so_far;
  /// Candidate indices of each generation sorted best first.
  std::vector<std::vector<int>> rankings;
};

/// (mu/mu_w, lambda) CMA-ES with log-rank weights, cumulative step-size
/// adaptation and rank-one plus rank-mu covariance updates. Candidates of
/// a generation are evaluated in parallel; updates are sequential.
/// Non-finite or throwing evaluations rank last; a generation in which every
/// evaluation fails raises std::runtime_error.
CmaesResult cmaes_optimize(const Objective& objective, const CmaesConfig& config);

/// Mean episode return of LinearPolicy(theta) over config-many rollouts of
/// `env`; rollout j of a generation uses make_stream(eval_seed, {j}).
Objective rollout_objective(const core::Env& env, int rollouts, int horizon = 0);

}  // namespace sgat::opt

#endif  // SGAT_OPT_CMAES_HPP
