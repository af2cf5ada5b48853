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

#ifndef SGAT_DYNAMICS_TABULAR_HPP
#define SGAT_DYNAMICS_TABULAR_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "sgat/core/types.hpp"
#include "sgat/dynamics/models.hpp"

namespace sgat::dynamics {

/// Visit counts N(s, a, s') from real trajectories; P(s'|s,a) is the
/// empirical frequency. Pairs without data are unseen and yield nullopt.
class TabularForwardModel final : public ForwardModel {
 public:
  TabularForwardModel(int num_states, int num_actions);

  void add(int s, int a, int next, double count = 1.0);

  bool seen(int s, int a) const { return totals_[index(s, a)] > 0.0; }
  double count(int s, int a, int next) const { return counts_[index(s, a) * states_ + next]; }
  /// Empirical distribution; all zeros when unseen.
  std::vector<double> probabilities(int s, int a) const;
  /// argmax of the empirical distribution; ties go to the lowest index.
  std::optional<int> mode(int s, int a) const;

  std::optional<core::StateVec> predict(const core::StateVec& s, const core::ActionVec& a) const override;
  std::optional<core::StateVec> sample(const core::StateVec& s, const core::ActionVec& a,
                                       core::Rng& rng) const override;
  /// Mean negative log-likelihood of the fitted data under P-hat.
  double training_loss() const override;

  int num_states() const { return states_; }
  int num_actions() const { return actions_; }

  /// Text format: header "tabular_forward <S> <A>", then one line per seen
  /// (s, a): "<s> <a>" followed by the S counts N(s, a, .).
  void save(std::ostream& out) const;
  static TabularForwardModel load(std::istream& in);

 private:
  std::size_t index(int s, int a) const { return static_cast<std::size_t>(s) * actions_ + a; }

  int states_;
  int actions_;
  std::vector<double> counts_;
  std::vector<double> totals_;
};

/// For each (s, s') the actions observed to produce it in the simulator.
/// invert() returns the most frequent one (ties: lowest index).
class TabularInverseModel final : public InverseModel {
 public:
  TabularInverseModel(int num_states, int num_actions);

  void add(int s, int next, int a, double count = 1.0);
  std::optional<int> action_for(int s, int next) const;

  std::optional<core::ActionVec> invert(const core::StateVec& s, const core::StateVec& next) const override;
  /// Fraction of recorded transitions whose action differs from the one
  /// invert() returns (0 for a deterministic simulator with unique actions).
  double training_loss() const override;

  /// Text format: header "tabular_inverse <S> <A>", then one line per
  /// observed (s, s'): "<s> <s'>" followed by the A counts.
  void save(std::ostream& out) const;
  static TabularInverseModel load(std::istream& in);

 private:
  std::size_t index(int s, int next) const { return static_cast<std::size_t>(s) * states_ + next; }

  int states_;
  int actions_;
  std::vector<double> counts_;  // [s][s'][a]
};

/// Fits from trajectories tagged Provenance::Real; throws
/// std::invalid_argument on any other provenance or when there is no data.
TabularForwardModel fit_tabular_forward(std::span<const core::Trajectory> real, int num_states, int num_actions);

/// Fits from trajectories tagged Provenance::Sim.
TabularInverseModel fit_tabular_inverse(std::span<const core::Trajectory> sim, int num_states, int num_actions);

}  // namespace sgat::dynamics

#endif  // SGAT_DYNAMICS_TABULAR_HPP
