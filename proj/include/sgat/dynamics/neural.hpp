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

#ifndef SGAT_DYNAMICS_NEURAL_HPP
#define SGAT_DYNAMICS_NEURAL_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/core/types.hpp"
#include "sgat/dynamics/models.hpp"
#include "sgat/nn/losses.hpp"
#include "sgat/nn/mlp.hpp"
#include "sgat/nn/training.hpp"

namespace sgat::dynamics {

struct NeuralModelConfig {
  std::vector<int> hidden = {64, 64};
  /// Annealed to 1% of the initial rate so the final iterate settles
  /// instead of jittering around the optimum.
  nn::TrainConfig train = [] {
    nn::TrainConfig c;
    c.final_lr_fraction = 0.01;
    return c;
  }();
};

/// Gaussian heads are trained with NLL and support sampling; deterministic
/// heads are trained with MSE and sample() returns the mean.
enum class ForwardHead { Gaussian, Deterministic };

/// MLP over standardized [s; a] predicting the standardized state change
/// s' - s, either as a diagonal Gaussian or as a point estimate.
class NeuralForwardModel final : public ForwardModel {
 public:
  NeuralForwardModel(nn::MlpParams params, nn::Standardizer input, nn::Standardizer target, ForwardHead head,
                     nn::LogSigmaRange range = {}, double training_loss = 0.0);

  /// Mean and standard deviation of s' in environment units.
  nn::GaussianHeadOutput distribution(const core::StateVec& s, const core::ActionVec& a) const;

  std::optional<core::StateVec> predict(const core::StateVec& s, const core::ActionVec& a) const override;
  std::optional<core::StateVec> sample(const core::StateVec& s, const core::ActionVec& a,
                                       core::Rng& rng) const override;
  double training_loss() const override { return training_loss_; }

  ForwardHead head() const { return head_; }
  const nn::MlpParams& params() const { return params_; }

  /// "neural_forward <gaussian|deterministic> <log_sigma_min> <log_sigma_max>
  /// <training_loss>", the two standardizers, then the MLP checkpoint.
  void save(std::ostream& out) const;
  static NeuralForwardModel load(std::istream& in);

 private:
  Eigen::VectorXd raw_output(const core::StateVec& s, const core::ActionVec& a) const;

  nn::MlpParams params_;
  nn::Standardizer input_;
  nn::Standardizer target_;
  ForwardHead head_;
  nn::LogSigmaRange range_;
  double training_loss_;
};

/// How (s, s') is presented to the inverse network. Delta feeds [s; s' - s],
/// which helps when per-step changes are small relative to the state.
enum class InverseEncoding { Concat, Delta };

/// MLP regression of the simulator action from (s, s'), trained with MSE.
/// Outputs are clamped into the simulator's action bounds.
class NeuralInverseModel final : public InverseModel {
 public:
  NeuralInverseModel(nn::MlpParams params, nn::Standardizer input, nn::Standardizer target,
                     InverseEncoding encoding, std::vector<double> action_low, std::vector<double> action_high,
                     double training_loss = 0.0);

  std::optional<core::ActionVec> invert(const core::StateVec& s, const core::StateVec& next) const override;
  double training_loss() const override { return training_loss_; }

  /// "neural_inverse <concat|delta> <training_loss>", the action bounds, the
  /// two standardizers, then the MLP checkpoint.
  void save(std::ostream& out) const;
  static NeuralInverseModel load(std::istream& in);

 private:
  nn::MlpParams params_;
  nn::Standardizer input_;
  nn::Standardizer target_;
  InverseEncoding encoding_;
  std::vector<double> low_;
  std::vector<double> high_;
  double training_loss_;
};

/// Fits on trajectories tagged Provenance::Real.
NeuralForwardModel fit_neural_forward(std::span<const core::Trajectory> real, ForwardHead head,
                                      const NeuralModelConfig& config);

/// Fits on trajectories tagged Provenance::Sim; `sim_info` supplies the
/// action bounds.
NeuralInverseModel fit_neural_inverse(std::span<const core::Trajectory> sim, const core::EnvInfo& sim_info,
                                      InverseEncoding encoding, const NeuralModelConfig& config);

}  // namespace sgat::dynamics

#endif  // SGAT_DYNAMICS_NEURAL_HPP
