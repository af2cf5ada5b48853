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

#ifndef SGAT_CORE_TYPES_HPP
#define SGAT_CORE_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgat::core {

namespace detail {

/// Fixed-length real vector shared by states and actions. Discrete
/// environments store a single entry holding the integer index.
template <typename Tag>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::vector<double> values) : values_(std::move(values)) {}
  Vec(std::initializer_list<double> values) : values_(values) {}

  static Vec discrete(int index) { return Vec(std::vector<double>{static_cast<double>(index)}); }

  /// Index of a discrete state or action.
  int index() const {
    if (values_.size() != 1) throw std::logic_error("index() on a non-discrete vector");
    return static_cast<int>(values_[0]);
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  bool all_finite() const {
    for (double v : values_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> values_;
};

struct StateTag {};
struct ActionTag {};

}  // namespace detail

using StateVec = detail::Vec<detail::StateTag>;
using ActionVec = detail::Vec<detail::ActionTag>;

/// Which environment produced a trajectory. Forward models accept only
/// Real data and inverse models only Sim data.
enum class Provenance { Sim, Real, Grounded };

std::string to_string(Provenance p);

struct StepResult {
  StateVec next_state;
  double reward = 0.0;
  bool terminal = false;
};

struct Transition {
  StateVec state;
  ActionVec action;
  StateVec next_state;
  double reward = 0.0;
  bool terminal = false;
};

struct Trajectory {
  std::vector<Transition> transitions;
  double episode_return = 0.0;
  Provenance provenance = Provenance::Sim;

  std::size_t size() const { return transitions.size(); }
  bool empty() const { return transitions.empty(); }
};

/// Checks the chaining, return-additivity and terminal-placement invariants.
/// Returns an empty string when the trajectory is well formed, otherwise a
/// description of the first violation.
std::string check_trajectory(const Trajectory& trajectory);

}  // namespace sgat::core

#endif  // SGAT_CORE_TYPES_HPP
