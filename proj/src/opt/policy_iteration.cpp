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

#include "sgat/opt/policy_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sgat::opt {

namespace {

double q_value(const TabularMdpModel& m, const std::vector<double>& v, int s, int a) {
  double q = 0.0;
  const auto row = m.row(s, a);
  for (int t = 0; t < m.num_states; ++t) {
    const double p = row[static_cast<std::size_t>(t)];
    if (p > 0.0) q += p * (m.r(s, a, t) + v[static_cast<std::size_t>(t)]);
  }
  return q;
}

}  // namespace

ProperSet proper_set(const TabularMdpModel& m) {
  const auto S = static_cast<std::size_t>(m.num_states);
  const auto A = static_cast<std::size_t>(m.num_actions);
  std::vector<bool> candidate(S, true);
  ProperSet out;
  while (true) {
    // Support check against the current candidate set.
    std::vector<bool> admissible(S * A, false);
    for (std::size_t s = 0; s < S; ++s)
      for (std::size_t a = 0; a < A; ++a) {
        bool ok = true;
        const auto row = m.row(static_cast<int>(s), static_cast<int>(a));
        for (std::size_t t = 0; t < S && ok; ++t) ok = row[t] == 0.0 || candidate[t];
        admissible[s * A + a] = ok;
      }
    // Backward attractor from the terminal states using admissible actions.
    std::vector<bool> reached(S, false);
    std::vector<int> action(S, 0);
    for (std::size_t s = 0; s < S; ++s) reached[s] = m.terminal[s] && candidate[s];
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<bool> next = reached;
      for (std::size_t s = 0; s < S; ++s) {
        if (reached[s] || !candidate[s]) continue;
        for (std::size_t a = 0; a < A && !next[s]; ++a) {
          if (!admissible[s * A + a]) continue;
          const auto row = m.row(static_cast<int>(s), static_cast<int>(a));
          for (std::size_t t = 0; t < S; ++t)
            if (row[t] > 0.0 && reached[t]) {
              next[s] = true;
              action[s] = static_cast<int>(a);
              grew = true;
              break;
            }
        }
      }
      reached = std::move(next);
    }
    if (reached == candidate) {
      out.member = std::move(reached);
      out.action = std::move(action);
      out.admissible = std::move(admissible);
      return out;
    }
    candidate = std::move(reached);
  }
}

PolicyIterationResult policy_iteration(const TabularMdpModel& m, double tolerance,
                                       int max_improvements) {
  if (const std::string err = m.validate(1e-6); !err.empty())
    throw std::invalid_argument("policy_iteration: " + err);
  const ProperSet proper = proper_set(m);
  if (!proper.member[static_cast<std::size_t>(m.start_state)])
    throw NonEpisodicModelError("policy_iteration: no policy terminates with probability one from state " +
                                std::to_string(m.start_state));
  const auto S = static_cast<std::size_t>(m.num_states);
  const auto A = static_cast<std::size_t>(m.num_actions);
  const double neg_inf = -std::numeric_limits<double>::infinity();

  PolicyIterationResult res;
  res.policy = proper.action;
  res.values.assign(S, 0.0);
  for (std::size_t s = 0; s < S; ++s)
    if (!proper.member[s]) res.values[s] = neg_inf;

  const long max_sweeps = 10'000'000;
  for (int iter = 0;; ++iter) {
    // Evaluation.
    for (;;) {
      double delta = 0.0;
      for (std::size_t s = 0; s < S; ++s) {
        if (!proper.member[s] || m.terminal[s]) continue;
        const double v = q_value(m, res.values, static_cast<int>(s), res.policy[s]);
        delta = std::max(delta, std::abs(v - res.values[s]));
        res.values[s] = v;
      }
      if (++res.sweeps > max_sweeps)
        throw std::runtime_error("policy_iteration: evaluation did not converge");
      if (delta < tolerance) break;
    }
    // Greedy improvement.
    bool stable = true;
    for (std::size_t s = 0; s < S; ++s) {
      if (!proper.member[s] || m.terminal[s]) continue;
      std::vector<double> q(A, neg_inf);
      double best = neg_inf;
      for (std::size_t a = 0; a < A; ++a) {
        if (!proper.admissible[s * A + a]) continue;
        q[a] = q_value(m, res.values, static_cast<int>(s), static_cast<int>(a));
        best = std::max(best, q[a]);
      }
      const double tie = 1e-7 * std::max(1.0, std::abs(best));
      int chosen = res.policy[s];
      for (std::size_t a = 0; a < A; ++a)
        if (q[a] >= best - tie) {
          chosen = static_cast<int>(a);
          break;
        }
      if (chosen != res.policy[s]) {
        res.policy[s] = chosen;
        stable = false;
      }
    }
    if (stable) return res;
    if (++res.improvements > max_improvements)
      throw std::runtime_error("policy_iteration: no convergence within " +
                               std::to_string(max_improvements) + " improvements");
  }
}

}  // namespace sgat::opt
