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

#ifndef SGAT_CORE_RNG_HPP
#define SGAT_CORE_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sgat::core {

/// Every stochastic call in the library draws from an explicitly passed Rng.
using Rng = std::mt19937_64;

/// Derives an independent stream from a master seed and a list of indices
/// (episode, generation, trial, ...). Pure function of its arguments.
Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path = {});

/// 64-bit seed derived the same way; used when a seed must cross an API
/// boundary instead of a whole engine.
std::uint64_t derive_seed(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace sgat::core

#endif  // SGAT_CORE_RNG_HPP
