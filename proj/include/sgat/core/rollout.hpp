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

#ifndef SGAT_CORE_ROLLOUT_HPP
#define SGAT_CORE_ROLLOUT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgat/core/env.hpp"
#include "sgat/core/policy.hpp"
#include "sgat/core/rng.hpp"
#include "sgat/core/types.hpp"

namespace sgat::core {

/// Raised when an environment produces a non-finite state.
class RolloutError : public std::runtime_error {
 public:
  RolloutError(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

struct EpisodeOutcome {
  double episode_return = 0.0;
  int length = 0;
  bool failed = false;
};

/// Same dynamics and random draws as rollout() without storing transitions.
EpisodeOutcome play_episode(const Env& env, const Policy& policy, int horizon, Rng& rng);

/// Runs one episode of at most `horizon` steps, stopping early on a
/// terminal transition.
Trajectory rollout(const Env& env, const Policy& policy, int horizon, Rng& rng);

struct EvalStats {
  double mean_return = 0.0;
  double std_error = 0.0;
  double failure_rate = 0.0;
  int episodes = 0;
};

/// Monte-Carlo estimate over n_episodes rollouts. Episode i draws from
/// make_stream(master_seed, {i}), and returns are reduced in episode order,
/// so the result does not depend on the OpenMP thread count.
EvalStats evaluate(const Env& env, const Policy& policy, int n_episodes, std::uint64_t master_seed,
                   int horizon = 0);

/// Single-threaded reference for evaluate(); bit-identical output.
EvalStats evaluate_serial(const Env& env, const Policy& policy, int n_episodes,
                          std::uint64_t master_seed, int horizon = 0);

/// Collects n_episodes trajectories; episode i uses make_stream(seed, {i}).
std::vector<Trajectory> collect(const Env& env, const Policy& policy, int n_episodes,
                                std::uint64_t seed, int horizon = 0);

}  // namespace sgat::core

#endif  // SGAT_CORE_ROLLOUT_HPP
