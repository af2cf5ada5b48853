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

#include "sgat/grounding/hooks.hpp"

#include <stdexcept>

#include "sgat/core/rollout.hpp"
#include "sgat/core/tabular_model.hpp"
#include "sgat/dynamics/tabular.hpp"
#include "sgat/opt/policy_iteration.hpp"

namespace sgat::grounding {

std::vector<core::Trajectory> sweep_tabular(const core::TabularEnv& sim, int sweeps, std::uint64_t seed) {
  const auto model = sim.exact_model();
  core::Rng rng = core::make_stream(seed);
  std::vector<core::Trajectory> out;
  for (int k = 0; k < sweeps; ++k)
    for (int s = 0; s < model.num_states; ++s) {
      if (model.terminal[static_cast<std::size_t>(s)]) continue;
      for (int a = 0; a < model.num_actions; ++a) {
        const auto state = core::StateVec::discrete(s);
        const auto action = core::ActionVec::discrete(a);
        const auto step = sim.step(state, action, rng);
        core::Trajectory t;
        t.transitions.push_back({state, action, step.next_state, step.reward, step.terminal});
        t.episode_return = step.reward;
        t.provenance = sim.provenance();
        out.push_back(std::move(t));
      }
    }
  return out;
}

GroundingHooks tabular_hooks(std::shared_ptr<const core::TabularEnv> sim, const TabularGroundingOptions& options) {
  if (!sim) throw std::invalid_argument("tabular_hooks: null simulator");
  if (options.sim_sweeps < 1) throw std::invalid_argument("tabular_hooks: sim_sweeps must be >= 1");
  const int S = sim->info().num_states, A = sim->info().num_actions;
  auto exact = std::make_shared<const core::TabularMdpModel>(sim->exact_model());

  GroundingHooks h;
  h.explore = [A, eps = options.epsilon](const core::PolicyPtr& current) -> core::PolicyPtr {
    return std::make_shared<core::EpsilonGreedyPolicy>(current, A, eps);
  };
  h.collect_sim = [sweeps = options.sim_sweeps](const core::Env& env, const core::PolicyPtr&, std::uint64_t seed) {
    const auto* tabular = dynamic_cast<const core::TabularEnv*>(&env);
    if (!tabular) throw std::invalid_argument("tabular_hooks: simulator is not tabular");
    return sweep_tabular(*tabular, sweeps, seed);
  };
  h.fit_forward = [S, A](std::span<const core::Trajectory> real, GroundingMode) {
    return std::shared_ptr<const dynamics::ForwardModel>(
        std::make_shared<dynamics::TabularForwardModel>(dynamics::fit_tabular_forward(real, S, A)));
  };
  h.fit_inverse = [S, A](std::span<const core::Trajectory> data) {
    return std::shared_ptr<const dynamics::InverseModel>(
        std::make_shared<dynamics::TabularInverseModel>(dynamics::fit_tabular_inverse(data, S, A)));
  };
  h.improve = [exact](const GroundedEnv& grounded, const core::PolicyPtr&, std::uint64_t) -> core::PolicyPtr {
    const auto& t = grounded.transformer();
    const auto* forward = dynamic_cast<const dynamics::TabularForwardModel*>(&t.forward());
    const auto* inverse = dynamic_cast<const dynamics::TabularInverseModel*>(&t.inverse());
    if (!forward || !inverse) throw std::invalid_argument("tabular_hooks: models are not tabular");
    const auto model =
        induced_tabular_model(*exact, *forward, *inverse, t.mode(), grounded.reward_action(), t.counters().get());
    return std::make_shared<core::TabularPolicy>(opt::policy_iteration(model).policy);
  };
  return h;
}

GroundingHooks continuous_hooks(const core::EnvInfo& sim_info, const ContinuousGroundingOptions& options) {
  GroundingHooks h;
  h.explore = [sim_info, sigma = options.exploration_sigma](const core::PolicyPtr& current) -> core::PolicyPtr {
    return std::make_shared<core::GaussianExplorationPolicy>(current, sim_info, sigma);
  };
  h.fit_forward = [cfg = options.forward_model](std::span<const core::Trajectory> real, GroundingMode mode) {
    const auto head = mode == GroundingMode::Sgat ? dynamics::ForwardHead::Gaussian : dynamics::ForwardHead::Deterministic;
    return std::shared_ptr<const dynamics::ForwardModel>(
        std::make_shared<dynamics::NeuralForwardModel>(dynamics::fit_neural_forward(real, head, cfg)));
  };
  h.fit_inverse = [sim_info, cfg = options.inverse_model,
                   enc = options.inverse_encoding](std::span<const core::Trajectory> sim) {
    return std::shared_ptr<const dynamics::InverseModel>(
        std::make_shared<dynamics::NeuralInverseModel>(dynamics::fit_neural_inverse(sim, sim_info, enc, cfg)));
  };
  h.improve = [sim_info, cmaes = options.cmaes, reselect = options.reselect_episodes](
                  const GroundedEnv& grounded, const core::PolicyPtr& current, std::uint64_t seed) -> core::PolicyPtr {
    const auto* linear = dynamic_cast<const core::LinearPolicy*>(current.get());
    if (!linear) throw std::invalid_argument("continuous_hooks: current policy is not linear");
    opt::CmaesConfig cfg = cmaes;
    cfg.initial_mean.assign(linear->params().begin(), linear->params().end());
    cfg.seed = seed;
    const auto result = opt::cmaes_optimize(opt::rollout_objective(grounded, cfg.rollouts_per_candidate), cfg);
    const auto to_policy = [&](const Eigen::VectorXd& theta) {
      return std::make_shared<core::LinearPolicy>(sim_info, std::vector<double>(theta.data(), theta.data() + theta.size()));
    };
    auto best = to_policy(result.best);
    if (reselect <= 0) return best;
    auto mean = to_policy(result.final_mean);
    const auto eval_seed = core::derive_seed(seed, {0x72736c});
    const double best_score = core::evaluate(grounded, *best, reselect, eval_seed).mean_return;
    const double mean_score = core::evaluate(grounded, *mean, reselect, eval_seed).mean_return;
    return mean_score > best_score ? mean : best;
  };
  return h;
}

}  // namespace sgat::grounding
