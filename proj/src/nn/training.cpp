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

#include "sgat/nn/training.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sgat::nn {

Standardizer Standardizer::fit(const Eigen::MatrixXd& samples) {
  if (samples.cols() == 0) throw std::invalid_argument("Standardizer::fit on empty data");
  Standardizer s;
  s.mean = samples.rowwise().mean();
  const Eigen::MatrixXd centered = samples.colwise() - s.mean;
  s.scale = (centered.array().square().rowwise().sum() / static_cast<double>(samples.cols())).sqrt();
  for (Eigen::Index i = 0; i < s.scale.size(); ++i)
    if (!(s.scale(i) > 1e-12)) s.scale(i) = 1.0;
  return s;
}

Standardizer Standardizer::identity(Eigen::Index dim) {
  return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
}

Eigen::VectorXd Standardizer::apply(const Eigen::VectorXd& x) const {
  return (x - mean).cwiseQuotient(scale);
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  return (x.colwise() - mean).array().colwise() / scale.array();
}

Eigen::VectorXd Standardizer::invert(const Eigen::VectorXd& z) const {
  return z.cwiseProduct(scale) + mean;
}

void save_standardizer(std::ostream& out, const Standardizer& s) {
  const auto old = out.precision(17);
  out << "standardizer " << s.mean.size() << "\n";
  for (Eigen::Index i = 0; i < s.mean.size(); ++i) out << (i ? " " : "") << s.mean(i);
  out << "\n";
  for (Eigen::Index i = 0; i < s.scale.size(); ++i) out << (i ? " " : "") << s.scale(i);
  out << "\n";
  out.precision(old);
}

Standardizer load_standardizer(std::istream& in) {
  std::string word;
  Eigen::Index n = 0;
  if (!(in >> word >> n) || word != "standardizer" || n < 1)
    throw std::runtime_error("bad standardizer header");
  Standardizer s{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(in >> s.mean(i))) throw std::runtime_error("truncated standardizer");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(in >> s.scale(i))) throw std::runtime_error("truncated standardizer");
  return s;
}

TrainResult train(MlpParams& params, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                  LossKind loss, const TrainConfig& config) {
  if (inputs.cols() != targets.cols()) throw std::invalid_argument("train: sample count mismatch");
  if (inputs.cols() == 0) throw std::invalid_argument("train: no samples");
  if (config.batch_size < 1 || config.epochs < 0 || !(config.final_lr_fraction >= 0.0))
    throw std::invalid_argument("train: bad config");
  const Eigen::Index n = inputs.cols();
  const Eigen::Index batches_per_epoch = (n + config.batch_size - 1) / config.batch_size;
  const double total_steps = static_cast<double>(batches_per_epoch) * config.epochs;
  AdamConfig adam = config.adam;
  double step = 0.0;
  core::Rng rng = core::make_stream(config.seed, {0x7472u});
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  AdamState state = AdamState::zeros(static_cast<Eigen::Index>(params.size()));
  TrainResult result;
  Eigen::MatrixXd batch_in, batch_target;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (Eigen::Index start = 0; start < n; start += config.batch_size) {
      const Eigen::Index m = std::min<Eigen::Index>(config.batch_size, n - start);
      batch_in.resize(inputs.rows(), m);
      batch_target.resize(targets.rows(), m);
      for (Eigen::Index j = 0; j < m; ++j) {
        batch_in.col(j) = inputs.col(order[static_cast<std::size_t>(start + j)]);
        batch_target.col(j) = targets.col(order[static_cast<std::size_t>(start + j)]);
      }
      const LossClosure closure = loss == LossKind::Mse
                                      ? mse_loss(batch_target)
                                      : gaussian_nll_loss(batch_target, config.log_sigma);
      LossAndGrad lg = grad(params, batch_in, closure);
      adam.learning_rate =
          config.adam.learning_rate * (1.0 - (1.0 - config.final_lr_fraction) * (step++ / total_steps));
      adam_step(params.flat(), lg.gradient.flat(), state, adam);
      epoch_loss += lg.loss * static_cast<double>(m);
    }
    result.epoch_losses.push_back(epoch_loss / static_cast<double>(n));
  }
  return result;
}

}  // namespace sgat::nn
