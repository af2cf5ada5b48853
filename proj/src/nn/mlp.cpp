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

#include "sgat/nn/mlp.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sgat::nn {

MlpParams::MlpParams(std::vector<int> layer_sizes, Activation hidden)
    : sizes_(std::move(layer_sizes)), hidden_(hidden) {
  if (sizes_.size() < 2) throw std::invalid_argument("an MLP needs at least one layer");
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] < 1 || sizes_[l + 1] < 1) throw std::invalid_argument("layer sizes must be >= 1");
    offsets_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l] + 1) * sizes_[l + 1];
  }
  data_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
}

MlpParams MlpParams::glorot(std::vector<int> layer_sizes, Activation hidden, core::Rng& rng) {
  MlpParams p(std::move(layer_sizes), hidden);
  for (std::size_t l = 0; l < p.num_layers(); ++l) {
    const double limit = std::sqrt(6.0 / (p.sizes_[l] + p.sizes_[l + 1]));
    std::uniform_real_distribution<double> dist(-limit, limit);
    auto w = p.weight(l);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = dist(rng);
  }
  return p;
}

Eigen::Map<Eigen::MatrixXd> MlpParams::weight(std::size_t l) {
  return {data_.data() + weight_offset(l), sizes_[l + 1], sizes_[l]};
}
Eigen::Map<const Eigen::MatrixXd> MlpParams::weight(std::size_t l) const {
  return {data_.data() + weight_offset(l), sizes_[l + 1], sizes_[l]};
}
Eigen::Map<Eigen::VectorXd> MlpParams::bias(std::size_t l) {
  return {data_.data() + bias_offset(l), sizes_[l + 1]};
}
Eigen::Map<const Eigen::VectorXd> MlpParams::bias(std::size_t l) const {
  return {data_.data() + bias_offset(l), sizes_[l + 1]};
}

namespace {

void check_input(const MlpParams& params, Eigen::Index rows) {
  if (params.num_layers() == 0) throw std::invalid_argument("forward on an empty network");
  if (rows != params.input_dim())
    throw std::invalid_argument("input has " + std::to_string(rows) + " entries, network expects " +
                                std::to_string(params.input_dim()));
}

void activate(Activation act, Eigen::MatrixXd& z) {
  if (act == Activation::Tanh) z = z.array().tanh();
}

// Forward pass keeping every layer's activation (acts[0] = input).
std::vector<Eigen::MatrixXd> forward_cached(const MlpParams& params, const Eigen::MatrixXd& inputs) {
  check_input(params, inputs.rows());
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(params.num_layers() + 1);
  acts.push_back(inputs);
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    Eigen::MatrixXd z = params.weight(l) * acts.back();
    z.colwise() += params.bias(l);
    if (l + 1 < params.num_layers()) activate(params.hidden(), z);
    acts.push_back(std::move(z));
  }
  return acts;
}

}  // namespace

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input) {
  check_input(params, input.size());
  Eigen::VectorXd a = input;
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    Eigen::VectorXd z = params.weight(l) * a + params.bias(l);
    if (l + 1 < params.num_layers() && params.hidden() == Activation::Tanh) z = z.array().tanh();
    a = std::move(z);
  }
  return a;
}

Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs) {
  return std::move(forward_cached(params, inputs).back());
}

LossAndGrad grad(const MlpParams& params, const Eigen::MatrixXd& inputs, const LossClosure& loss) {
  std::vector<Eigen::MatrixXd> acts = forward_cached(params, inputs);
  LossAndGrad out{0.0, params.zeros_like()};
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(acts.back().rows(), acts.back().cols());
  out.loss = loss(acts.back(), delta);
  for (std::size_t l = params.num_layers(); l-- > 0;) {
    // delta holds dLoss/dz for layer l (the output layer is linear).
    out.gradient.weight(l) = delta * acts[l].transpose();
    out.gradient.bias(l) = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = params.weight(l).transpose() * delta;
    if (params.hidden() == Activation::Tanh)
      delta = upstream.array() * (1.0 - acts[l].array().square());
    else
      delta = std::move(upstream);
  }
  return out;
}

void save_checkpoint(std::ostream& out, const MlpParams& params) {
  const auto old_precision = out.precision(17);
  out << "mlp 1\n";
  out << "activation " << (params.hidden() == Activation::Tanh ? "tanh" : "identity") << "\n";
  out << "layers " << params.num_layers() << "\n";
  for (std::size_t l = 0; l < params.num_layers(); ++l) {
    const auto w = params.weight(l);
    out << "dense " << w.cols() << " " << w.rows() << "\n";
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) out << (j ? " " : "") << w(i, j);
      out << "\n";
    }
    const auto b = params.bias(l);
    for (Eigen::Index i = 0; i < b.size(); ++i) out << (i ? " " : "") << b(i);
    out << "\n";
  }
  out.precision(old_precision);
}

MlpParams load_checkpoint(std::istream& in) {
  auto expect = [&in](const std::string& word) {
    std::string got;
    if (!(in >> got) || got != word)
      throw std::runtime_error("checkpoint: expected '" + word + "', got '" + got + "'");
  };
  expect("mlp");
  int version = 0;
  if (!(in >> version) || version != 1) throw std::runtime_error("checkpoint: unsupported version");
  expect("activation");
  std::string act;
  in >> act;
  if (act != "tanh" && act != "identity") throw std::runtime_error("checkpoint: bad activation " + act);
  expect("layers");
  std::size_t n_layers = 0;
  if (!(in >> n_layers) || n_layers == 0) throw std::runtime_error("checkpoint: bad layer count");
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
  std::vector<int> sizes;
  for (std::size_t l = 0; l < n_layers; ++l) {
    expect("dense");
    int in_dim = 0, out_dim = 0;
    if (!(in >> in_dim >> out_dim) || in_dim < 1 || out_dim < 1)
      throw std::runtime_error("checkpoint: bad dense header");
    if (sizes.empty()) sizes.push_back(in_dim);
    if (sizes.back() != in_dim) throw std::runtime_error("checkpoint: layer shapes do not chain");
    sizes.push_back(out_dim);
    std::vector<double> w(static_cast<std::size_t>(in_dim) * out_dim);
    for (double& v : w)
      if (!(in >> v)) throw std::runtime_error("checkpoint: truncated weights");
    std::vector<double> b(static_cast<std::size_t>(out_dim));
    for (double& v : b)
      if (!(in >> v)) throw std::runtime_error("checkpoint: truncated biases");
    weights.push_back(std::move(w));
    biases.push_back(std::move(b));
  }
  MlpParams p(sizes, act == "tanh" ? Activation::Tanh : Activation::Identity);
  for (std::size_t l = 0; l < n_layers; ++l) {
    auto w = p.weight(l);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j)
        w(i, j) = weights[l][static_cast<std::size_t>(i * w.cols() + j)];
    auto b = p.bias(l);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = biases[l][static_cast<std::size_t>(i)];
  }
  return p;
}

}  // namespace sgat::nn
