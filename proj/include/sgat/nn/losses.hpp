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

#ifndef SGAT_NN_LOSSES_HPP
#define SGAT_NN_LOSSES_HPP

#include <Eigen/Dense>

#include "sgat/nn/mlp.hpp"

namespace sgat::nn {

/// Allowed range for the predicted log standard deviation.
struct LogSigmaRange {
  double min = -5.0;
  double max = 2.0;
};

/// Diagonal Gaussian read from a network output of size 2*D: the first D
/// entries are the mean, the last D the (clamped) log standard deviation.
struct GaussianHeadOutput {
  Eigen::VectorXd mu;
  Eigen::VectorXd log_sigma;

  Eigen::VectorXd sigma() const { return log_sigma.array().exp(); }
};

GaussianHeadOutput split_gaussian(const Eigen::VectorXd& raw, LogSigmaRange range = {});

/// sum_d (t_d - mu_d)^2 / (2 sigma_d^2) + log sigma_d + log(2 pi) / 2.
double gaussian_nll(const GaussianHeadOutput& out, const Eigen::VectorXd& target);

/// NLL of a raw 2*D output plus its gradient with respect to that output.
/// Log-sigma entries outside the clamp range get zero gradient.
double gaussian_nll_with_grad(const Eigen::VectorXd& raw, const Eigen::VectorXd& target,
                              LogSigmaRange range, Eigen::VectorXd& d_raw);

/// Batch mean of the per-sample summed squared error.
LossClosure mse_loss(const Eigen::MatrixXd& targets);

/// Batch mean of the per-sample Gaussian NLL.
LossClosure gaussian_nll_loss(const Eigen::MatrixXd& targets, LogSigmaRange range = {});

}  // namespace sgat::nn

#endif  // SGAT_NN_LOSSES_HPP
