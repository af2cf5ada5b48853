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

#include "sgat/opt/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sgat/core/policy.hpp"
#include "sgat/core/rng.hpp"
#include "sgat/core/rollout.hpp"

namespace sgat::opt {

CmaesResult cmaes_optimize(const Objective& objective, const CmaesConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(cfg.initial_mean.size());
  if (n < 1) throw std::invalid_argument("cmaes: empty initial mean");
  if (cfg.population < 4) throw std::invalid_argument("cmaes: population must be >= 4");
  if (!(cfg.initial_step > 0.0)) throw std::invalid_argument("cmaes: initial step must be > 0");
  if (cfg.max_generations < 1) throw std::invalid_argument("cmaes: max_generations must be >= 1");

  const int lambda = cfg.population;
  const int mu = lambda / 2;
  Eigen::VectorXd weights(mu);
  for (int i = 0; i < mu; ++i) weights(i) = std::log(mu + 0.5) - std::log(i + 1.0);
  weights /= weights.sum();
  const double mu_eff = 1.0 / weights.squaredNorm();
  const double dn = static_cast<double>(n);

  const double c_sigma = (mu_eff + 2.0) / (dn + mu_eff + 5.0);
  const double d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (dn + 1.0)) - 1.0) + c_sigma;
  const double c_c = (4.0 + mu_eff / dn) / (dn + 4.0 + 2.0 * mu_eff / dn);
  const double c_1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + mu_eff);
  const double c_mu = std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((dn + 2.0) * (dn + 2.0) + mu_eff));
  const double chi_n = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

  Eigen::VectorXd mean = Eigen::Map<const Eigen::VectorXd>(cfg.initial_mean.data(), n);
  double sigma = cfg.initial_step;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd scales = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd p_sigma = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd p_c = Eigen::VectorXd::Zero(n);

  core::Rng rng = core::make_stream(cfg.seed, {0x636d61u});
  CmaesResult res;
  res.best_value = -std::numeric_limits<double>::infinity();
  res.best = mean;

  Eigen::MatrixXd z(n, lambda), y(n, lambda), x(n, lambda);
  std::vector<double> fitness(static_cast<std::size_t>(lambda));
  for (int gen = 0; gen < cfg.max_generations; ++gen) {
    for (int k = 0; k < lambda; ++k)
      for (Eigen::Index i = 0; i < n; ++i) z(i, k) = core::standard_normal(rng);
    y = basis * scales.asDiagonal() * z;
    x = (sigma * y).colwise() + mean;

    const std::uint64_t eval_seed = core::derive_seed(cfg.seed, {static_cast<std::uint64_t>(gen)});
    int failed = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : failed) if (cfg.parallel)
    for (int k = 0; k < lambda; ++k) {
      double f = -std::numeric_limits<double>::infinity();
      try {
        f = objective(x.col(k), eval_seed);
      } catch (...) {
        f = std::numeric_limits<double>::quiet_NaN();
      }
      if (!std::isfinite(f)) {
        ++failed;
        f = -std::numeric_limits<double>::infinity();
      }
      fitness[static_cast<std::size_t>(k)] = f;
    }
    res.failed_evaluations += failed;
    if (failed == lambda)
      throw std::runtime_error("cmaes: every candidate failed in generation " + std::to_string(gen));

    std::vector<int> order(static_cast<std::size_t>(lambda));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&fitness](int a, int b) {
      return fitness[static_cast<std::size_t>(a)] > fitness[static_cast<std::size_t>(b)];
    });
    res.rankings.push_back(order);
    if (fitness[static_cast<std::size_t>(order[0])] > res.best_value) {
      res.best_value = fitness[static_cast<std::size_t>(order[0])];
      res.best = x.col(order[0]);
    }
    res.best_so_far.push_back(res.best_value);

    Eigen::VectorXd y_w = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < mu; ++i) y_w += weights(i) * y.col(order[static_cast<std::size_t>(i)]);
    mean += sigma * y_w;

    // C^{-1/2} y_w = B D^{-1} B^T y_w
    const Eigen::VectorXd c_inv_sqrt_yw = basis * scales.cwiseInverse().asDiagonal() * basis.transpose() * y_w;
    p_sigma = (1.0 - c_sigma) * p_sigma + std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * c_inv_sqrt_yw;
    const double ps_norm = p_sigma.norm();
    const double h_denom = std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * (gen + 1)));
    const double h_sigma = ps_norm / h_denom < (1.4 + 2.0 / (dn + 1.0)) * chi_n ? 1.0 : 0.0;
    p_c = (1.0 - c_c) * p_c + h_sigma * std::sqrt(c_c * (2.0 - c_c) * mu_eff) * y_w;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < mu; ++i) {
      const auto yi = y.col(order[static_cast<std::size_t>(i)]);
      rank_mu += weights(i) * yi * yi.transpose();
    }
    const double delta_h = (1.0 - h_sigma) * c_c * (2.0 - c_c);
    cov = (1.0 - c_1 - c_mu + c_1 * delta_h) * cov + c_1 * p_c * p_c.transpose() + c_mu * rank_mu;
    cov = 0.5 * (cov + cov.transpose());
    sigma *= std::exp((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    basis = eig.eigenvectors();
    scales = eig.eigenvalues().cwiseMax(1e-300).cwiseSqrt();
    res.generations = gen + 1;
    if (!std::isfinite(sigma) || sigma * scales.maxCoeff() < 1e-30) break;
  }
  res.final_mean = mean;
  res.final_step = sigma;
  return res;
}

Objective rollout_objective(const core::Env& env, int rollouts, int horizon) {
  if (rollouts < 1) throw std::invalid_argument("rollout_objective: rollouts must be >= 1");
  const int h = horizon > 0 ? horizon : env.info().horizon;
  return [&env, rollouts, h](const Eigen::VectorXd& theta, std::uint64_t eval_seed) {
    const core::LinearPolicy policy(env.info(), std::vector<double>(theta.data(), theta.data() + theta.size()));
    double total = 0.0;
    for (int j = 0; j < rollouts; ++j) {
      core::Rng rng = core::make_stream(eval_seed, {static_cast<std::uint64_t>(j)});
      total += core::play_episode(env, policy, h, rng).episode_return;
    }
    return total / rollouts;
  };
}

}  // namespace sgat::opt
