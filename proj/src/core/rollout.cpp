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

#include "sgat/core/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgat::core {

namespace {

EvalStats reduce(const std::vector<EpisodeOutcome>& outcomes) {
  EvalStats stats;
  const int n = static_cast<int>(outcomes.size());
  stats.episodes = n;
  double sum = 0.0;
  int failures = 0;
  for (const auto& o : outcomes) {
    sum += o.episode_return;
    failures += o.failed ? 1 : 0;
  }
  stats.mean_return = sum / n;
  stats.failure_rate = static_cast<double>(failures) / n;
  if (n > 1) {
    // Shifted by the first return so identical returns give exactly zero.
    const double shift = outcomes.front().episode_return;
    double s1 = 0.0, s2 = 0.0;
    for (const auto& o : outcomes) {
      s1 += o.episode_return - shift;
      s2 += (o.episode_return - shift) * (o.episode_return - shift);
    }
    const double var = std::max(0.0, (s2 - s1 * s1 / n) / (n - 1));
    stats.std_error = std::sqrt(var / n);
  }
  return stats;
}

int resolve_horizon(const Env& env, int horizon) {
  const int h = horizon > 0 ? horizon : env.info().horizon;
  if (h < 1) throw std::invalid_argument("horizon must be >= 1");
  return h;
}

}  // namespace

EpisodeOutcome play_episode(const Env& env, const Policy& policy, int horizon, Rng& rng) {
  EpisodeOutcome out;
  StateVec state = env.reset(rng);
  for (int t = 0; t < horizon; ++t) {
    const ActionVec action = policy.act(state, rng);
    StepResult step = env.step(state, action, rng);
    if (!step.next_state.all_finite())
      throw RolloutError("non-finite state at step " + std::to_string(t), t);
    out.episode_return += step.reward;
    out.length = t + 1;
    if (step.terminal) {
      out.failed = env.is_failure(step.next_state);
      break;
    }
    state = std::move(step.next_state);
  }
  return out;
}

Trajectory rollout(const Env& env, const Policy& policy, int horizon, Rng& rng) {
  if (horizon < 1) throw std::invalid_argument("rollout: horizon must be >= 1");
  Trajectory traj;
  traj.provenance = env.provenance();
  StateVec state = env.reset(rng);
  for (int t = 0; t < horizon; ++t) {
    ActionVec action = policy.act(state, rng);
    StepResult step = env.step(state, action, rng);
    if (!step.next_state.all_finite())
      throw RolloutError("non-finite state at step " + std::to_string(t), t);
    traj.episode_return += step.reward;
    const bool terminal = step.terminal;
    traj.transitions.push_back(
        {std::move(state), std::move(action), step.next_state, step.reward, terminal});
    if (terminal) break;
    state = std::move(step.next_state);
  }
  return traj;
}

EvalStats evaluate(const Env& env, const Policy& policy, int n_episodes,
                   std::uint64_t master_seed, int horizon) {
  if (n_episodes < 1) throw std::invalid_argument("evaluate: n_episodes must be >= 1");
  const int h = resolve_horizon(env, horizon);
  std::vector<EpisodeOutcome> outcomes(static_cast<std::size_t>(n_episodes));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64)
  for (int i = 0; i < n_episodes; ++i) {
    try {
      Rng rng = make_stream(master_seed, {static_cast<std::uint64_t>(i)});
      outcomes[static_cast<std::size_t>(i)] = play_episode(env, policy, h, rng);
    } catch (...) {
#pragma omp critical(sgat_evaluate_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return reduce(outcomes);
}

EvalStats evaluate_serial(const Env& env, const Policy& policy, int n_episodes,
                          std::uint64_t master_seed, int horizon) {
  if (n_episodes < 1) throw std::invalid_argument("evaluate: n_episodes must be >= 1");
  const int h = resolve_horizon(env, horizon);
  std::vector<EpisodeOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(n_episodes));
  for (int i = 0; i < n_episodes; ++i) {
    Rng rng = make_stream(master_seed, {static_cast<std::uint64_t>(i)});
    outcomes.push_back(play_episode(env, policy, h, rng));
  }
  return reduce(outcomes);
}

std::vector<Trajectory> collect(const Env& env, const Policy& policy, int n_episodes,
                                std::uint64_t seed, int horizon) {
  if (n_episodes < 1) throw std::invalid_argument("collect: n_episodes must be >= 1");
  const int h = resolve_horizon(env, horizon);
  std::vector<Trajectory> out(static_cast<std::size_t>(n_episodes));
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n_episodes; ++i) {
    try {
      Rng rng = make_stream(seed, {static_cast<std::uint64_t>(i)});
      out[static_cast<std::size_t>(i)] = rollout(env, policy, h, rng);
    } catch (...) {
#pragma omp critical(sgat_collect_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace sgat::core
