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

#include "sgat/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgat/core/env.hpp"
#include "sgat/core/tabular_model.hpp"

namespace sgat::core {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Sim:
      return "sim";
    case Provenance::Real:
      return "real";
    case Provenance::Grounded:
      return "grounded";
  }
  return "unknown";
}

std::string check_trajectory(const Trajectory& trajectory) {
  double sum = 0.0;
  const auto& ts = trajectory.transitions;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!std::isfinite(ts[i].reward)) return "non-finite reward at step " + std::to_string(i);
    if (i + 1 < ts.size()) {
      if (ts[i].terminal) return "terminal transition before the end at step " + std::to_string(i);
      if (!(ts[i].next_state == ts[i + 1].state))
        return "chain broken between steps " + std::to_string(i) + " and " + std::to_string(i + 1);
    }
    sum += ts[i].reward;
  }
  if (sum != trajectory.episode_return) {
    std::ostringstream msg;
    msg << "episode_return " << trajectory.episode_return << " != reward sum " << sum;
    return msg.str();
  }
  return {};
}

ActionVec clamp_action(const EnvInfo& info, ActionVec action) {
  if (info.discrete) return action;
  for (std::size_t i = 0; i < action.size() && i < info.action_low.size(); ++i)
    action[i] = std::clamp(action[i], info.action_low[i], info.action_high[i]);
  return action;
}

std::string TabularMdpModel::validate(double tolerance) const {
  if (num_states <= 0 || num_actions <= 0) return "empty model";
  if (transition.size() != static_cast<std::size_t>(num_states) * num_actions * num_states)
    return "transition table has wrong size";
  if (!transition_reward.empty() && transition_reward.size() != transition.size())
    return "transition reward table has wrong size";
  for (int s = 0; s < num_states; ++s)
    for (int a = 0; a < num_actions; ++a) {
      double total = 0.0;
      for (double p : row(s, a)) {
        if (!(p >= 0.0)) return "negative or NaN probability at s=" + std::to_string(s);
        total += p;
      }
      if (std::abs(total - 1.0) > tolerance)
        return "row (s=" + std::to_string(s) + ", a=" + std::to_string(a) + ") sums to " +
               std::to_string(total);
    }
  return {};
}

}  // namespace sgat::core
