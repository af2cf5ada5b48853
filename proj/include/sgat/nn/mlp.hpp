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

#ifndef SGAT_NN_MLP_HPP
#define SGAT_NN_MLP_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "sgat/core/rng.hpp"

namespace sgat::nn {

enum class Activation { Tanh, Identity };

/// Dense feed-forward network. All weights and biases live in one flat
/// vector so optimizers and finite-difference checks can treat the network
/// as a point in R^n; weight(l) / bias(l) are views into it. Hidden layers
/// apply `hidden`; the output layer is linear.
class MlpParams {
 public:
  MlpParams() = default;
  MlpParams(std::vector<int> layer_sizes, Activation hidden);

  /// Glorot-uniform weights, zero biases.
  static MlpParams glorot(std::vector<int> layer_sizes, Activation hidden, core::Rng& rng);

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  std::size_t num_layers() const { return sizes_.size() - 1; }
  const std::vector<int>& layer_sizes() const { return sizes_; }
  Activation hidden() const { return hidden_; }

  Eigen::Map<Eigen::MatrixXd> weight(std::size_t layer);
  Eigen::Map<const Eigen::MatrixXd> weight(std::size_t layer) const;
  Eigen::Map<Eigen::VectorXd> bias(std::size_t layer);
  Eigen::Map<const Eigen::VectorXd> bias(std::size_t layer) const;

  Eigen::VectorXd& flat() { return data_; }
  const Eigen::VectorXd& flat() const { return data_; }
  std::size_t size() const { return static_cast<std::size_t>(data_.size()); }

  /// Same architecture, all entries zero.
  MlpParams zeros_like() const { return MlpParams(sizes_, hidden_); }
  bool same_shape(const MlpParams& other) const {
    return sizes_ == other.sizes_ && hidden_ == other.hidden_;
  }

 private:
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + static_cast<std::size_t>(sizes_[layer]) * sizes_[layer + 1];
  }

  std::vector<int> sizes_;
  std::vector<std::size_t> offsets_;
  Activation hidden_ = Activation::Tanh;
  Eigen::VectorXd data_;
};

/// Single-input forward pass. Throws std::invalid_argument on a shape
/// mismatch.
Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input);

/// Batched forward pass; one sample per column.
Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs);

/// Scalar loss over a batch of network outputs. Fills d_outputs with
/// dLoss/dOutputs (same shape as outputs) and returns the loss.
using LossClosure = std::function<double(const Eigen::MatrixXd& outputs, Eigen::MatrixXd& d_outputs)>;

struct LossAndGrad {
  double loss = 0.0;
  MlpParams gradient;
};

/// Reverse-mode gradient of loss(forward_batch(params, inputs)).
LossAndGrad grad(const MlpParams& params, const Eigen::MatrixXd& inputs, const LossClosure& loss);

/// Checkpoint text format (all values written with 17 significant digits):
///   mlp 1
///   activation <tanh|identity>
///   layers <L>
///   then per layer: "dense <in> <out>", <out> lines of <in> weights
///   (row-major), one line of <out> biases.
void save_checkpoint(std::ostream& out, const MlpParams& params);
MlpParams load_checkpoint(std::istream& in);

}  // namespace sgat::nn

#endif  // SGAT_NN_MLP_HPP
