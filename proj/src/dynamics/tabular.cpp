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

#include "sgat/dynamics/tabular.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sgat::dynamics {

namespace {

void check_range(int value, int limit, const char* what) {
  if (value < 0 || value >= limit)
    throw std::out_of_range(std::string(what) + " index " + std::to_string(value) + " out of range");
}

std::size_t count_transitions(std::span<const core::Trajectory> data, core::Provenance expected,
                              const char* who) {
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

}  // namespace

TabularForwardModel::TabularForwardModel(int num_states, int num_actions)
    : states_(num_states),
      actions_(num_actions),
      counts_(static_cast<std::size_t>(num_states) * num_actions * num_states, 0.0),
      totals_(static_cast<std::size_t>(num_states) * num_actions, 0.0) {
  if (num_states < 1 || num_actions < 1) throw std::invalid_argument("tabular model needs states and actions");
}

void TabularForwardModel::add(int s, int a, int next, double count) {
  check_range(s, states_, "state");
  check_range(a, actions_, "action");
  check_range(next, states_, "next state");
  counts_[index(s, a) * states_ + next] += count;
  totals_[index(s, a)] += count;
}

std::vector<double> TabularForwardModel::probabilities(int s, int a) const {
  std::vector<double> p(static_cast<std::size_t>(states_), 0.0);
  const double total = totals_[index(s, a)];
  if (total <= 0.0) return p;
  for (int t = 0; t < states_; ++t) p[static_cast<std::size_t>(t)] = count(s, a, t) / total;
  return p;
}

std::optional<int> TabularForwardModel::mode(int s, int a) const {
  if (!seen(s, a)) return std::nullopt;
  int best = 0;
  for (int t = 1; t < states_; ++t)
    if (count(s, a, t) > count(s, a, best)) best = t;
  return best;
}

std::optional<core::StateVec> TabularForwardModel::predict(const core::StateVec& s, const core::ActionVec& a) const {
  const auto m = mode(s.index(), a.index());
  if (!m) return std::nullopt;
  return core::StateVec::discrete(*m);
}

std::optional<core::StateVec> TabularForwardModel::sample(const core::StateVec& s, const core::ActionVec& a,
                                                          core::Rng& rng) const {
  const int si = s.index(), ai = a.index();
  if (!seen(si, ai)) return std::nullopt;
  double u = core::uniform01(rng) * totals_[index(si, ai)];
  int last = 0;
  for (int t = 0; t < states_; ++t) {
    const double c = count(si, ai, t);
    if (c <= 0.0) continue;
    last = t;
    if (u < c) return core::StateVec::discrete(t);
    u -= c;
  }
  return core::StateVec::discrete(last);
}

double TabularForwardModel::training_loss() const {
  double nll = 0.0, n = 0.0;
  for (int s = 0; s < states_; ++s)
    for (int a = 0; a < actions_; ++a) {
      const double total = totals_[index(s, a)];
      if (total <= 0.0) continue;
      for (int t = 0; t < states_; ++t) {
        const double c = count(s, a, t);
        if (c > 0.0) nll -= c * std::log(c / total);
      }
      n += total;
    }
  return n > 0.0 ? nll / n : 0.0;
}

void TabularForwardModel::save(std::ostream& out) const {
  out << "tabular_forward " << states_ << " " << actions_ << "\n";
  for (int s = 0; s < states_; ++s)
    for (int a = 0; a < actions_; ++a) {
      if (!seen(s, a)) continue;
      out << s << " " << a;
      for (int t = 0; t < states_; ++t) out << " " << count(s, a, t);
      out << "\n";
    }
}

TabularForwardModel TabularForwardModel::load(std::istream& in) {
  std::string word;
  int S = 0, A = 0;
  if (!(in >> word >> S >> A) || word != "tabular_forward") throw std::runtime_error("bad tabular_forward header");
  TabularForwardModel m(S, A);
  int s = 0, a = 0;
  while (in >> s >> a) {
    for (int t = 0; t < S; ++t) {
      double c = 0.0;
      if (!(in >> c)) throw std::runtime_error("truncated tabular_forward row");
      if (c > 0.0) m.add(s, a, t, c);
    }
  }
  return m;
}

TabularInverseModel::TabularInverseModel(int num_states, int num_actions)
    : states_(num_states),
      actions_(num_actions),
      counts_(static_cast<std::size_t>(num_states) * num_states * num_actions, 0.0) {
  if (num_states < 1 || num_actions < 1) throw std::invalid_argument("tabular model needs states and actions");
}

void TabularInverseModel::add(int s, int next, int a, double count) {
  check_range(s, states_, "state");
  check_range(next, states_, "next state");
  check_range(a, actions_, "action");
  counts_[index(s, next) * actions_ + a] += count;
}

std::optional<int> TabularInverseModel::action_for(int s, int next) const {
  const double* row = counts_.data() + index(s, next) * actions_;
  int best = -1;
  for (int a = 0; a < actions_; ++a)
    if (row[a] > 0.0 && (best < 0 || row[a] > row[best])) best = a;
  if (best < 0) return std::nullopt;
  return best;
}

std::optional<core::ActionVec> TabularInverseModel::invert(const core::StateVec& s, const core::StateVec& next) const {
  const auto a = action_for(s.index(), next.index());
  if (!a) return std::nullopt;
  return core::ActionVec::discrete(*a);
}

double TabularInverseModel::training_loss() const {
  double wrong = 0.0, total = 0.0;
  for (int s = 0; s < states_; ++s)
    for (int t = 0; t < states_; ++t) {
      const auto best = action_for(s, t);
      if (!best) continue;
      for (int a = 0; a < actions_; ++a) {
        const double c = counts_[index(s, t) * actions_ + a];
        total += c;
        if (a != *best) wrong += c;
      }
    }
  return total > 0.0 ? wrong / total : 0.0;
}

void TabularInverseModel::save(std::ostream& out) const {
  out << "tabular_inverse " << states_ << " " << actions_ << "\n";
  for (int s = 0; s < states_; ++s)
    for (int t = 0; t < states_; ++t) {
      if (!action_for(s, t)) continue;
      out << s << " " << t;
      for (int a = 0; a < actions_; ++a) out << " " << counts_[index(s, t) * actions_ + a];
      out << "\n";
    }
}

TabularInverseModel TabularInverseModel::load(std::istream& in) {
  std::string word;
  int S = 0, A = 0;
  if (!(in >> word >> S >> A) || word != "tabular_inverse") throw std::runtime_error("bad tabular_inverse header");
  TabularInverseModel m(S, A);
  int s = 0, t = 0;
  while (in >> s >> t) {
    for (int a = 0; a < A; ++a) {
      double c = 0.0;
      if (!(in >> c)) throw std::runtime_error("truncated tabular_inverse row");
      if (c > 0.0) m.add(s, t, a, c);
    }
  }
  return m;
}

TabularForwardModel fit_tabular_forward(std::span<const core::Trajectory> real, int num_states, int num_actions) {
  count_transitions(real, core::Provenance::Real, "fit_tabular_forward");
  TabularForwardModel m(num_states, num_actions);
  for (const auto& traj : real)
    for (const auto& tr : traj.transitions) m.add(tr.state.index(), tr.action.index(), tr.next_state.index());
  return m;
}

TabularInverseModel fit_tabular_inverse(std::span<const core::Trajectory> sim, int num_states, int num_actions) {
  count_transitions(sim, core::Provenance::Sim, "fit_tabular_inverse");
  TabularInverseModel m(num_states, num_actions);
  for (const auto& traj : sim)
    for (const auto& tr : traj.transitions) m.add(tr.state.index(), tr.next_state.index(), tr.action.index());
  return m;
}

}  // namespace sgat::dynamics
