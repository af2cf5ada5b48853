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

#ifndef SGAT_NN_TRAINING_HPP
#define SGAT_NN_TRAINING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sgat/nn/adam.hpp"
#include "sgat/nn/losses.hpp"
#include "sgat/nn/mlp.hpp"

namespace sgat::nn {

/// Per-feature affine normalization fitted on training data (one sample per
/// column). Features with (near) zero spread keep scale 1.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer fit(const Eigen::MatrixXd& samples);
  static Standardizer identity(Eigen::Index dim);

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  Eigen::VectorXd invert(const Eigen::VectorXd& z) const;
};

void save_standardizer(std::ostream& out, const Standardizer& s);
Standardizer load_standardizer(std::istream& in);

enum class LossKind { Mse, GaussianNll };

struct TrainConfig {
  int epochs = 30;
  int batch_size = 64;
  AdamConfig adam;
  LogSigmaRange log_sigma;
  /// The learning rate decays linearly from adam.learning_rate to this
  /// fraction of it over training. 1 keeps it constant.
  double final_lr_fraction = 1.0;
  std::uint64_t seed = 0;
};

struct TrainResult {
  std::vector<double> epoch_losses;
  double final_loss() const { return epoch_losses.empty() ? 0.0 : epoch_losses.back(); }
};

/// Minibatch Adam on (inputs, targets), one sample per column. The loss
/// reported per epoch is the sample-weighted mean of the minibatch losses.
TrainResult train(MlpParams& params, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                  LossKind loss, const TrainConfig& config);

}  // namespace sgat::nn

#endif  // SGAT_NN_TRAINING_HPP
