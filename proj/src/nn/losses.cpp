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

#include "sgat/nn/losses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgat::nn {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace

GaussianHeadOutput split_gaussian(const Eigen::VectorXd& raw, LogSigmaRange range) {
  if (raw.size() % 2 != 0) throw std::invalid_argument("Gaussian head needs an even output size");
  const Eigen::Index d = raw.size() / 2;
  return {raw.head(d), raw.tail(d).cwiseMax(range.min).cwiseMin(range.max)};
}

double gaussian_nll(const GaussianHeadOutput& out, const Eigen::VectorXd& target) {
  if (out.mu.size() != target.size() || out.log_sigma.size() != target.size())
    throw std::invalid_argument("gaussian_nll: dimension mismatch");
  require_finite(out.mu, "mean");
  require_finite(out.log_sigma, "log sigma");
  require_finite(target, "target");
  double total = 0.0;
  for (Eigen::Index d = 0; d < target.size(); ++d) {
    const double diff = target(d) - out.mu(d);
    const double inv_var = std::exp(-2.0 * out.log_sigma(d));
    total += 0.5 * diff * diff * inv_var + out.log_sigma(d) + kHalfLog2Pi;
  }
  return total;
}

double gaussian_nll_with_grad(const Eigen::VectorXd& raw, const Eigen::VectorXd& target,
                              LogSigmaRange range, Eigen::VectorXd& d_raw) {
  const GaussianHeadOutput out = split_gaussian(raw, range);
  const double value = gaussian_nll(out, target);
  const Eigen::Index dim = target.size();
  d_raw.resize(raw.size());
  for (Eigen::Index d = 0; d < dim; ++d) {
    const double diff = target(d) - out.mu(d);
    const double inv_var = std::exp(-2.0 * out.log_sigma(d));
    d_raw(d) = -diff * inv_var;
    const double ls = raw(dim + d);
    d_raw(dim + d) = (ls < range.min || ls > range.max) ? 0.0 : 1.0 - diff * diff * inv_var;
  }
  return value;
}

LossClosure mse_loss(const Eigen::MatrixXd& targets) {
  return [&targets](const Eigen::MatrixXd& outputs, Eigen::MatrixXd& d_outputs) {
    if (outputs.rows() != targets.rows() || outputs.cols() != targets.cols())
      throw std::invalid_argument("mse_loss: shape mismatch");
    const double n = static_cast<double>(outputs.cols());
    const Eigen::MatrixXd diff = outputs - targets;
    d_outputs = (2.0 / n) * diff;
    return diff.squaredNorm() / n;
  };
}

LossClosure gaussian_nll_loss(const Eigen::MatrixXd& targets, LogSigmaRange range) {
  return [&targets, range](const Eigen::MatrixXd& outputs, Eigen::MatrixXd& d_outputs) {
    if (outputs.rows() != 2 * targets.rows() || outputs.cols() != targets.cols())
      throw std::invalid_argument("gaussian_nll_loss: shape mismatch");
    const double n = static_cast<double>(outputs.cols());
    d_outputs.resize(outputs.rows(), outputs.cols());
    double total = 0.0;
    Eigen::VectorXd d_col;
    for (Eigen::Index c = 0; c < outputs.cols(); ++c) {
      total += gaussian_nll_with_grad(outputs.col(c), targets.col(c), range, d_col);
      d_outputs.col(c) = d_col / n;
    }
    return total / n;
  };
}

}  // namespace sgat::nn
