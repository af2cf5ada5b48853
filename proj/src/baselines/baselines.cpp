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

#include "sgat/baselines/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "sgat/core/tabular_model.hpp"
#include "sgat/opt/policy_iteration.hpp"

namespace sgat::baselines {

std::string AneConfig::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) return "sigma must be a finite non-negative number";
  return {};
}

AneEnv::AneEnv(std::shared_ptr<const core::Env> base, AneConfig config) : base_(std::move(base)), config_(config) {
  if (!base_) throw std::invalid_argument("AneEnv: null base environment");
  if (base_->info().discrete) throw std::invalid_argument("AneEnv: action noise needs continuous actions");
  if (const auto err = config_.validate(); !err.empty()) throw std::invalid_argument("AneEnv: " + err);
}

core::ActionVec AneEnv::executed_action(const core::ActionVec& action, core::Rng& rng) const {
  if (config_.sigma == 0.0) return action;
  core::ActionVec noisy = action;
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] += config_.sigma * core::standard_normal(rng);
  return core::clamp_action(base_->info(), std::move(noisy));
}

core::StepResult AneEnv::step(const core::StateVec& state, const core::ActionVec& action, core::Rng& rng) const {
  return base_->step(state, executed_action(action, rng), rng);
}

std::shared_ptr<const core::Env> ane_wrap(std::shared_ptr<const core::Env> base, AneConfig config) {
  return std::make_shared<const AneEnv>(std::move(base), config);
}

Improver cmaes_improver(const core::EnvInfo& info, opt::CmaesConfig config) {
  if (config.initial_mean.empty()) config.initial_mean.assign(core::LinearPolicy::param_count(info), 0.0);
  return [info, config](const core::Env& env, std::uint64_t seed) -> core::PolicyPtr {
    opt::CmaesConfig cfg = config;
    cfg.seed = seed;
    const auto result = opt::cmaes_optimize(opt::rollout_objective(env, cfg.rollouts_per_candidate), cfg);
    return std::make_shared<core::LinearPolicy>(
        info, std::vector<double>(result.best.data(), result.best.data() + result.best.size()));
  };
}

Improver policy_iteration_improver() {
  return [](const core::Env& env, std::uint64_t) -> core::PolicyPtr {
    const auto* tabular = dynamic_cast<const core::TabularEnv*>(&env);
    if (!tabular) throw std::invalid_argument("policy iteration needs a tabular environment");
    return std::make_shared<core::TabularPolicy>(opt::policy_iteration(tabular->exact_model()).policy);
  };
}

core::PolicyPtr train_no_grounding(const core::Env& sim, const Improver& improve, std::uint64_t seed) {
  return improve(sim, seed);
}

AneSearchResult ane_grid_search(std::span<const double> sigmas, std::shared_ptr<const core::Env> sim,
                                const Improver& improve, const core::Env& real, int eval_episodes,
                                std::uint64_t seed) {
  if (sigmas.empty()) throw std::invalid_argument("ane_grid_search: no candidate sigma");
  if (eval_episodes < 1) throw std::invalid_argument("ane_grid_search: eval_episodes must be >= 1");
  AneSearchResult out;
  const std::uint64_t eval_seed = core::derive_seed(seed, {0x6576616c});
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto env = ane_wrap(sim, AneConfig{sigmas[i]});
    AneCandidate c;
    c.sigma = sigmas[i];
    c.policy = improve(*env, core::derive_seed(seed, {i}));
    c.real_eval = core::evaluate(real, *c.policy, eval_episodes, eval_seed);
    out.candidates.push_back(std::move(c));
  }
  const AneCandidate* best = &out.candidates.front();
  for (const auto& c : out.candidates) {
    const double m = c.real_eval.mean_return, b = best->real_eval.mean_return;
    if (m > b || (m == b && c.sigma < best->sigma)) best = &c;
  }
  out.best_sigma = best->sigma;
  out.best_policy = best->policy;
  out.best_eval = best->real_eval;
  return out;
}

}  // namespace sgat::baselines
