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

#include "sgat/dynamics/neural.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sgat/core/rng.hpp"

namespace sgat::dynamics {

namespace {

Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd concat(std::span<const double> a, std::span<const double> b) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(a.size() + b.size()));
  out << to_eigen(a), to_eigen(b);
  return out;
}

Eigen::VectorXd inverse_features(const core::StateVec& s, const core::StateVec& next, InverseEncoding enc) {
  if (s.size() != next.size()) throw std::invalid_argument("inverse model: state sizes differ");
  if (enc == InverseEncoding::Concat) return concat(s.values(), next.values());
  Eigen::VectorXd out(static_cast<Eigen::Index>(2 * s.size()));
  const auto n = static_cast<Eigen::Index>(s.size());
  out.head(n) = to_eigen(s.values());
  out.tail(n) = to_eigen(next.values()) - to_eigen(s.values());
  return out;
}

std::size_t checked_count(std::span<const core::Trajectory> data, core::Provenance expected, const char* who) {
  std::size_t n = 0;
  for (const auto& t : data) {
    if (t.provenance != expected)
      throw std::invalid_argument(std::string(who) + ": expected " + core::to_string(expected) +
                                  " trajectories, got " + core::to_string(t.provenance));
    n += t.size();
  }
  if (n == 0) throw std::invalid_argument(std::string(who) + ": no transitions");
  return n;
}

std::vector<int> layer_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

void expect_word(std::istream& in, const char* word) {
  std::string got;
  if (!(in >> got) || got != word) throw std::runtime_error(std::string("expected '") + word + "'");
}

}  // namespace

NeuralForwardModel::NeuralForwardModel(nn::MlpParams params, nn::Standardizer input, nn::Standardizer target,
                                       ForwardHead head, nn::LogSigmaRange range, double training_loss)
    : params_(std::move(params)),
      input_(std::move(input)),
      target_(std::move(target)),
      head_(head),
      range_(range),
      training_loss_(training_loss) {
  const Eigen::Index d = target_.mean.size();
  const Eigen::Index expected_out = head_ == ForwardHead::Gaussian ? 2 * d : d;
  if (params_.input_dim() != input_.mean.size() || params_.output_dim() != expected_out)
    throw std::invalid_argument("neural forward model: network shape does not match standardizers");
}

Eigen::VectorXd NeuralForwardModel::raw_output(const core::StateVec& s, const core::ActionVec& a) const {
  return nn::forward(params_, input_.apply(concat(s.values(), a.values())));
}

nn::GaussianHeadOutput NeuralForwardModel::distribution(const core::StateVec& s, const core::ActionVec& a) const {
  const Eigen::VectorXd raw = raw_output(s, a);
  const Eigen::Index d = target_.mean.size();
  if (static_cast<Eigen::Index>(s.size()) != d) throw std::invalid_argument("neural forward model: state size");
  nn::GaussianHeadOutput z;
  if (head_ == ForwardHead::Gaussian) {
    z = nn::split_gaussian(raw, range_);
  } else {
    z.mu = raw;
    z.log_sigma = Eigen::VectorXd::Constant(d, -std::numeric_limits<double>::infinity());
  }
  nn::GaussianHeadOutput out;
  out.mu = to_eigen(s.values()) + target_.invert(z.mu);
  out.log_sigma = z.log_sigma.array() + target_.scale.array().log();
  return out;
}

std::optional<core::StateVec> NeuralForwardModel::predict(const core::StateVec& s, const core::ActionVec& a) const {
  const Eigen::VectorXd mu = distribution(s, a).mu;
  if (!mu.allFinite()) return std::nullopt;
  return core::StateVec(std::vector<double>(mu.data(), mu.data() + mu.size()));
}

std::optional<core::StateVec> NeuralForwardModel::sample(const core::StateVec& s, const core::ActionVec& a,
                                                         core::Rng& rng) const {
  if (head_ == ForwardHead::Deterministic) return predict(s, a);
  const auto dist = distribution(s, a);
  Eigen::VectorXd x = dist.mu;
  const Eigen::VectorXd sigma = dist.sigma();
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += sigma[i] * core::standard_normal(rng);
  if (!x.allFinite()) return std::nullopt;
  return core::StateVec(std::vector<double>(x.data(), x.data() + x.size()));
}

void NeuralForwardModel::save(std::ostream& out) const {
  const auto prec = out.precision(17);
  out << "neural_forward " << (head_ == ForwardHead::Gaussian ? "gaussian" : "deterministic") << " "
      << range_.min << " " << range_.max << " " << training_loss_ << "\n";
  nn::save_standardizer(out, input_);
  nn::save_standardizer(out, target_);
  nn::save_checkpoint(out, params_);
  out.precision(prec);
}

NeuralForwardModel NeuralForwardModel::load(std::istream& in) {
  expect_word(in, "neural_forward");
  std::string head;
  nn::LogSigmaRange range;
  double loss = 0.0;
  if (!(in >> head >> range.min >> range.max >> loss)) throw std::runtime_error("bad neural_forward header");
  if (head != "gaussian" && head != "deterministic") throw std::runtime_error("unknown head '" + head + "'");
  auto input = nn::load_standardizer(in);
  auto target = nn::load_standardizer(in);
  auto params = nn::load_checkpoint(in);
  return NeuralForwardModel(std::move(params), std::move(input), std::move(target),
                            head == "gaussian" ? ForwardHead::Gaussian : ForwardHead::Deterministic, range, loss);
}

NeuralInverseModel::NeuralInverseModel(nn::MlpParams params, nn::Standardizer input, nn::Standardizer target,
                                       InverseEncoding encoding, std::vector<double> action_low,
                                       std::vector<double> action_high, double training_loss)
    : params_(std::move(params)),
      input_(std::move(input)),
      target_(std::move(target)),
      encoding_(encoding),
      low_(std::move(action_low)),
      high_(std::move(action_high)),
      training_loss_(training_loss) {
  if (params_.input_dim() != input_.mean.size() || params_.output_dim() != target_.mean.size() ||
      low_.size() != static_cast<std::size_t>(target_.mean.size()) || high_.size() != low_.size())
    throw std::invalid_argument("neural inverse model: inconsistent shapes");
}

std::optional<core::ActionVec> NeuralInverseModel::invert(const core::StateVec& s, const core::StateVec& next) const {
  const Eigen::VectorXd a = target_.invert(nn::forward(params_, input_.apply(inverse_features(s, next, encoding_))));
  if (!a.allFinite()) return std::nullopt;
  std::vector<double> out(static_cast<std::size_t>(a.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(a[static_cast<Eigen::Index>(i)], low_[i], high_[i]);
  return core::ActionVec(std::move(out));
}

void NeuralInverseModel::save(std::ostream& out) const {
  const auto prec = out.precision(17);
  out << "neural_inverse " << (encoding_ == InverseEncoding::Concat ? "concat" : "delta") << " " << training_loss_
      << "\n" << low_.size();
  for (double v : low_) out << " " << v;
  for (double v : high_) out << " " << v;
  out << "\n";
  nn::save_standardizer(out, input_);
  nn::save_standardizer(out, target_);
  nn::save_checkpoint(out, params_);
  out.precision(prec);
}

NeuralInverseModel NeuralInverseModel::load(std::istream& in) {
  expect_word(in, "neural_inverse");
  std::string enc;
  double loss = 0.0;
  std::size_t n = 0;
  if (!(in >> enc >> loss >> n)) throw std::runtime_error("bad neural_inverse header");
  if (enc != "concat" && enc != "delta") throw std::runtime_error("unknown encoding '" + enc + "'");
  std::vector<double> low(n), high(n);
  for (double& v : low)
    if (!(in >> v)) throw std::runtime_error("truncated action bounds");
  for (double& v : high)
    if (!(in >> v)) throw std::runtime_error("truncated action bounds");
  auto input = nn::load_standardizer(in);
  auto target = nn::load_standardizer(in);
  auto params = nn::load_checkpoint(in);
  return NeuralInverseModel(std::move(params), std::move(input), std::move(target),
                            enc == "concat" ? InverseEncoding::Concat : InverseEncoding::Delta, std::move(low),
                            std::move(high), loss);
}

NeuralForwardModel fit_neural_forward(std::span<const core::Trajectory> real, ForwardHead head,
                                      const NeuralModelConfig& config) {
  const auto n = static_cast<Eigen::Index>(checked_count(real, core::Provenance::Real, "fit_neural_forward"));
  const auto& first = std::find_if(real.begin(), real.end(), [](const auto& t) { return t.size() > 0; })
                          ->transitions.front();
  const auto sd = static_cast<Eigen::Index>(first.state.size());
  const auto ad = static_cast<Eigen::Index>(first.action.size());
  Eigen::MatrixXd x(sd + ad, n), y(sd, n);
  Eigen::Index col = 0;
  for (const auto& traj : real)
    for (const auto& tr : traj.transitions) {
      if (static_cast<Eigen::Index>(tr.state.size()) != sd || static_cast<Eigen::Index>(tr.action.size()) != ad)
        throw std::invalid_argument("fit_neural_forward: inconsistent transition sizes");
      x.col(col) = concat(tr.state.values(), tr.action.values());
      y.col(col) = to_eigen(tr.next_state.values()) - to_eigen(tr.state.values());
      ++col;
    }
  auto in_std = nn::Standardizer::fit(x);
  auto out_std = nn::Standardizer::fit(y);
  const int out_dim = static_cast<int>(head == ForwardHead::Gaussian ? 2 * sd : sd);
  core::Rng rng = core::make_stream(config.train.seed, {0x66776471});
  auto params = nn::MlpParams::glorot(layer_sizes(static_cast<int>(sd + ad), config.hidden, out_dim),
                                      nn::Activation::Tanh, rng);
  const auto result = nn::train(params, in_std.apply(x), out_std.apply(y),
                                head == ForwardHead::Gaussian ? nn::LossKind::GaussianNll : nn::LossKind::Mse,
                                config.train);
  return NeuralForwardModel(std::move(params), std::move(in_std), std::move(out_std), head, config.train.log_sigma,
                            result.final_loss());
}

NeuralInverseModel fit_neural_inverse(std::span<const core::Trajectory> sim, const core::EnvInfo& sim_info,
                                      InverseEncoding encoding, const NeuralModelConfig& config) {
  const auto n = static_cast<Eigen::Index>(checked_count(sim, core::Provenance::Sim, "fit_neural_inverse"));
  const auto sd = static_cast<Eigen::Index>(sim_info.state_dim);
  const auto ad = static_cast<Eigen::Index>(sim_info.action_dim);
  if (sim_info.action_low.size() != sim_info.action_dim || sim_info.action_high.size() != sim_info.action_dim)
    throw std::invalid_argument("fit_neural_inverse: action bounds missing");
  Eigen::MatrixXd x(2 * sd, n), y(ad, n);
  Eigen::Index col = 0;
  for (const auto& traj : sim)
    for (const auto& tr : traj.transitions) {
      if (static_cast<Eigen::Index>(tr.state.size()) != sd || static_cast<Eigen::Index>(tr.action.size()) != ad)
        throw std::invalid_argument("fit_neural_inverse: transition does not match env info");
      x.col(col) = inverse_features(tr.state, tr.next_state, encoding);
      y.col(col) = to_eigen(tr.action.values());
      ++col;
    }
  auto in_std = nn::Standardizer::fit(x);
  auto out_std = nn::Standardizer::fit(y);
  core::Rng rng = core::make_stream(config.train.seed, {0x696e76});
  auto params = nn::MlpParams::glorot(layer_sizes(static_cast<int>(2 * sd), config.hidden, static_cast<int>(ad)),
                                      nn::Activation::Tanh, rng);
  const auto result = nn::train(params, in_std.apply(x), out_std.apply(y), nn::LossKind::Mse, config.train);
  return NeuralInverseModel(std::move(params), std::move(in_std), std::move(out_std), encoding, sim_info.action_low,
                            sim_info.action_high, result.final_loss());
}

}  // namespace sgat::dynamics
