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

#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "sgat/core/rollout.hpp"
#include "sgat/dynamics/tabular.hpp"
#include "sgat/envs/cliff_world.hpp"
#include "sgat/envs/toy_mdp.hpp"
#include "sgat/grounding/hooks.hpp"
#include "sgat/grounding/loop.hpp"
#include "sgat/grounding/transformer.hpp"
#include "sgat/opt/policy_iteration.hpp"

using namespace sgat;
using core::ActionVec;
using core::Provenance;
using core::StateVec;
using grounding::GroundingMode;

namespace {

std::shared_ptr<const envs::ToyMdp> toy(envs::ToyVariant v) {
  return std::make_shared<const envs::ToyMdp>(envs::ToyMdpSpec{.variant = v});
}

// Forward counts proportional to the exact kernel: the limit of exhaustive
// real data.
std::shared_ptr<dynamics::TabularForwardModel> exhaustive_forward(const core::TabularMdpModel& m) {
  auto f = std::make_shared<dynamics::TabularForwardModel>(m.num_states, m.num_actions);
  for (int s = 0; s < m.num_states; ++s) {
    if (m.terminal[static_cast<std::size_t>(s)]) continue;
    for (int a = 0; a < m.num_actions; ++a)
      for (int t = 0; t < m.num_states; ++t)
        if (m.p(s, a, t) > 0.0) f->add(s, a, t, m.p(s, a, t));
  }
  return f;
}

std::shared_ptr<dynamics::TabularInverseModel> swept_inverse(const core::TabularEnv& sim) {
  const auto data = grounding::sweep_tabular(sim, 1, 3);
  return std::make_shared<dynamics::TabularInverseModel>(
      dynamics::fit_tabular_inverse(data, sim.info().num_states, sim.info().num_actions));
}

grounding::ActionTransformer toy_transformer(envs::ToyVariant sim, envs::ToyVariant real, GroundingMode mode) {
  return grounding::ActionTransformer(exhaustive_forward(toy(real)->exact_model()), swept_inverse(*toy(sim)), mode);
}

core::PolicyPtr constant(int action, int states) {
  return std::make_shared<core::TabularPolicy>(std::vector<int>(static_cast<std::size_t>(states), action));
}

}  // namespace

TEST_CASE("GAT swaps the two actions of the flipped pair") {
  const auto t = toy_transformer(envs::ToyVariant::Sim2, envs::ToyVariant::Real2, GroundingMode::Gat);
  core::Rng rng = core::make_stream(1);
  const StateVec s0 = StateVec::discrete(0);
  CHECK(t.transform_action(s0, ActionVec::discrete(0), rng) == ActionVec::discrete(1));
  CHECK(t.transform_action(s0, ActionVec::discrete(1), rng) == ActionVec::discrete(0));
  CHECK(t.counts().transforms == 2);
  CHECK(t.counts().forward_unseen == 0);
}

TEST_CASE("GAT transformer fitted from real rollouts swaps as well") {
  const auto real = toy(envs::ToyVariant::Real2);
  core::EpsilonGreedyPolicy uniform(constant(0, 3), 2, 1.0);
  const auto data = core::collect(*real, uniform, 200, 4);
  auto forward = std::make_shared<dynamics::TabularForwardModel>(dynamics::fit_tabular_forward(data, 3, 2));
  grounding::ActionTransformer t(forward, swept_inverse(*toy(envs::ToyVariant::Sim2)), GroundingMode::Gat);
  core::Rng rng = core::make_stream(2);
  CHECK(t.transform_action(StateVec::discrete(0), ActionVec::discrete(0), rng) == ActionVec::discrete(1));
}

TEST_CASE("identity configuration leaves sim dynamics unchanged") {
  auto sim = std::make_shared<const envs::CliffWorld>(envs::CliffWorldSpec{}, Provenance::Sim);
  const auto exact = sim->exact_model();
  const auto inverse = swept_inverse(*sim);
  for (auto mode : {GroundingMode::Gat, GroundingMode::Sgat}) {
    grounding::GroundedEnv g(sim, grounding::ActionTransformer(exhaustive_forward(exact), inverse, mode));
    core::Rng rng_g = core::make_stream(6), rng_s = core::make_stream(6);
    for (int s = 0; s < exact.num_states; ++s) {
      if (exact.terminal[static_cast<std::size_t>(s)]) continue;
      for (int a = 0; a < 4; ++a) {
        const auto state = StateVec::discrete(s);
        const auto action = ActionVec::discrete(a);
        const auto gs = g.step(state, action, rng_g);
        const auto ss = sim->step(state, action, rng_s);
        CHECK(gs.next_state == ss.next_state);
        CHECK(gs.reward == ss.reward);
        CHECK(gs.terminal == ss.terminal);
        // The action itself is recovered unless a wall makes two actions
        // indistinguishable.
        int producers = 0;
        for (int b = 0; b < 4; ++b) producers += envs::cliff_move(sim->spec(), s, envs::Direction(b)) == ss.next_state.index();
        if (producers == 1) CHECK(g.transformer().transform_action(state, action, rng_g) == action);
      }
    }
    CHECK(g.transformer().counts().inverse_unreachable == 0);
  }
}

TEST_CASE("SGAT maps a2 to a3 with the real branch probability") {
  const auto t = toy_transformer(envs::ToyVariant::Sim3, envs::ToyVariant::Real3, GroundingMode::Sgat);
  core::Rng rng = core::make_stream(7);
  int a3 = 0;
  for (int i = 0; i < 10000; ++i) a3 += t.transform_action(StateVec::discrete(0), ActionVec::discrete(1), rng).index() == 2;
  CHECK(std::abs(a3 / 10000.0 - 0.2) <= 0.012);
}

TEST_CASE("grounded action values on the three-action pair") {
  const auto sim = toy(envs::ToyVariant::Sim3);
  const grounding::GroundedEnv gat(sim, toy_transformer(envs::ToyVariant::Sim3, envs::ToyVariant::Real3, GroundingMode::Gat));
  const std::vector<double> expected{1.0, -1.0, -1.0};
  for (int a = 0; a < 3; ++a) {
    const auto stats = core::evaluate(gat, *constant(a, 4), 100, 9);
    CHECK(stats.mean_return == expected[static_cast<std::size_t>(a)]);
    CHECK(stats.std_error == 0.0);
  }
  const grounding::GroundedEnv sgat(sim, toy_transformer(envs::ToyVariant::Sim3, envs::ToyVariant::Real3, GroundingMode::Sgat));
  const auto a2 = core::evaluate(sgat, *constant(1, 4), 10000, 10);
  CHECK(std::abs(a2.mean_return - 1.2) <= 0.1);
}

TEST_CASE("SGAT induced kernel equals the real kernel on the toy pair") {
  const auto sim = toy(envs::ToyVariant::Sim3)->exact_model();
  const auto real = toy(envs::ToyVariant::Real3)->exact_model();
  const auto forward = exhaustive_forward(real);
  const auto inverse = swept_inverse(*toy(envs::ToyVariant::Sim3));
  const auto g = grounding::induced_tabular_model(sim, *forward, *inverse, GroundingMode::Sgat);
  double tv = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int t = 0; t < 4; ++t) tv += 0.5 * std::abs(g.p(0, a, t) - real.p(0, a, t));
  CHECK(tv == 0.0);
  CHECK(g.validate().empty());
  const auto pi = opt::policy_iteration(g);
  CHECK(pi.policy[0] == 1);
  CHECK(pi.values[0] == doctest::Approx(1.2).epsilon(1e-12));

  const auto gat = grounding::induced_tabular_model(sim, *forward, *inverse, GroundingMode::Gat);
  const auto pg = opt::policy_iteration(gat);
  CHECK(pg.policy[0] == 0);
  CHECK(pg.values[0] == 1.0);
}

TEST_CASE("induced kernel matches grounded rollouts on a noisy cliff") {
  auto sim = std::make_shared<const envs::CliffWorld>(envs::CliffWorldSpec{}, Provenance::Sim);
  const envs::CliffWorld real(envs::CliffWorldSpec{.slip_prob = 0.4}, Provenance::Real);
  // Partial data so that unseen pairs exercise the fallback.
  core::EpsilonGreedyPolicy explore(constant(0, 48), 4, 1.0);
  const auto data = core::collect(real, explore, 30, 12, 40);
  auto forward = std::make_shared<dynamics::TabularForwardModel>(dynamics::fit_tabular_forward(data, 48, 4));
  const auto inverse = swept_inverse(*sim);
  for (auto mode : {GroundingMode::Gat, GroundingMode::Sgat}) {
    grounding::FallbackCounters counters;
    const auto m = grounding::induced_tabular_model(sim->exact_model(), *forward, *inverse, mode,
                                                    grounding::RewardAction::Transformed, &counters);
    CHECK(m.validate().empty());
    CHECK(counters.forward_unseen.load() > 0);
    grounding::GroundedEnv g(sim, grounding::ActionTransformer(forward, inverse, mode));
    core::Rng rng = core::make_stream(13);
    for (int s : {0, 13, 25, 36}) {
      for (int a = 0; a < 4; ++a) {
        constexpr int kN = 4000;
        std::vector<int> hits(48, 0);
        for (int i = 0; i < kN; ++i) ++hits[static_cast<std::size_t>(g.step(StateVec::discrete(s), ActionVec::discrete(a), rng).next_state.index())];
        for (int t = 0; t < 48; ++t) {
          const double p = m.p(s, a, t);
          const double tol = 4 * std::sqrt(p * (1 - p) / kN) + 1e-12;
          CHECK(std::abs(hits[static_cast<std::size_t>(t)] / double(kN) - p) <= tol);
        }
      }
    }
  }
}

TEST_CASE("GAT grounding is deterministic end to end") {
  auto sim = std::make_shared<const envs::CliffWorld>(envs::CliffWorldSpec{}, Provenance::Sim);
  const envs::CliffWorld real(envs::CliffWorldSpec{.slip_prob = 0.3}, Provenance::Real);
  core::EpsilonGreedyPolicy explore(constant(0, 48), 4, 1.0);
  auto forward = std::make_shared<dynamics::TabularForwardModel>(
      dynamics::fit_tabular_forward(core::collect(real, explore, 200, 2, 60), 48, 4));
  grounding::GroundedEnv g(sim, grounding::ActionTransformer(forward, swept_inverse(*sim), GroundingMode::Gat));
  core::EpsilonGreedyPolicy wander(constant(3, 48), 4, 0.5);
  for (int i = 0; i < 20; ++i) {
    core::Rng a = core::make_stream(100 + i), b = core::make_stream(100 + i);
    const auto ta = core::rollout(g, wander, 60, a);
    const auto tb = core::rollout(g, wander, 60, b);
    REQUIRE(ta.size() == tb.size());
    for (std::size_t k = 0; k < ta.size(); ++k) {
      CHECK(ta.transitions[k].next_state == tb.transitions[k].next_state);
      // Given (s, a) the grounded successor never varies.
      core::Rng other = core::make_stream(999 + k);
      CHECK(g.step(ta.transitions[k].state, ta.transitions[k].action, other).next_state == ta.transitions[k].next_state);
    }
  }
}

TEST_CASE("reward can be scored with the original action") {
  struct ActionReward final : core::Env {
    core::EnvInfo i{.discrete = true, .num_states = 2, .num_actions = 2, .horizon = 1};
    const core::EnvInfo& info() const override { return i; }
    StateVec reset(core::Rng&) const override { return StateVec::discrete(0); }
    core::StepResult step(const StateVec&, const ActionVec& a, core::Rng&) const override {
      return {StateVec::discrete(1), reward(a, StateVec::discrete(1)), true};
    }
    double reward(const ActionVec& a, const StateVec&) const override { return a.index() == 0 ? 5.0 : 7.0; }
  };
  auto sim = std::make_shared<const ActionReward>();
  auto forward = std::make_shared<dynamics::TabularForwardModel>(2, 2);
  forward->add(0, 0, 1);
  auto inverse = std::make_shared<dynamics::TabularInverseModel>(2, 2);
  inverse->add(0, 1, 1);  // only a=1 is known to reach s1
  core::Rng rng = core::make_stream(1);
  const grounding::ActionTransformer t(forward, inverse, GroundingMode::Gat);
  CHECK(grounding::GroundedEnv(sim, t).step(StateVec::discrete(0), ActionVec::discrete(0), rng).reward == 7.0);
  CHECK(grounding::GroundedEnv(sim, t, grounding::RewardAction::Original)
            .step(StateVec::discrete(0), ActionVec::discrete(0), rng)
            .reward == 5.0);
}

TEST_CASE("inverse fallback returns the agent's action and is counted") {
  auto forward = std::make_shared<dynamics::TabularForwardModel>(3, 2);
  forward->add(0, 0, 0);  // predicted self-loop the sim cannot produce
  auto inverse = std::make_shared<dynamics::TabularInverseModel>(3, 2);
  inverse->add(0, 1, 0);
  const grounding::ActionTransformer t(forward, inverse, GroundingMode::Gat);
  core::Rng rng = core::make_stream(1);
  CHECK(t.transform_action(StateVec::discrete(0), ActionVec::discrete(0), rng) == ActionVec::discrete(0));
  CHECK(t.transform_action(StateVec::discrete(0), ActionVec::discrete(1), rng) == ActionVec::discrete(1));
  const auto c = t.counts();
  CHECK(c.inverse_unreachable == 1);
  CHECK(c.forward_unseen == 1);
}

namespace {

// The simulator's dynamics presented as the real environment.
struct AsReal final : core::Env {
  std::shared_ptr<const core::Env> base;
  explicit AsReal(std::shared_ptr<const core::Env> b) : base(std::move(b)) {}
  const core::EnvInfo& info() const override { return base->info(); }
  StateVec reset(core::Rng& rng) const override { return base->reset(rng); }
  core::StepResult step(const StateVec& s, const ActionVec& a, core::Rng& rng) const override {
    return base->step(s, a, rng);
  }
  double reward(const ActionVec& a, const StateVec& s) const override { return base->reward(a, s); }
  Provenance provenance() const override { return Provenance::Real; }
};

grounding::GroundingResult run_toy_loop(envs::ToyVariant sim_v, envs::ToyVariant real_v, GroundingMode mode) {
  auto sim = toy(sim_v);
  const AsReal real(toy(real_v));
  grounding::GroundingLoopConfig cfg;
  cfg.mode = mode;
  cfg.iterations = 2;
  cfg.real_episodes = 3000;
  cfg.eval_episodes = 2000;
  cfg.seed = 21;
  const auto initial = std::make_shared<core::TabularPolicy>(opt::policy_iteration(sim->exact_model()).policy);
  return grounding::ground_and_improve(cfg, grounding::tabular_hooks(sim, {.epsilon = 1.0}), sim, real, initial);
}

int first_action(const core::PolicyPtr& p) { return dynamic_cast<const core::TabularPolicy&>(*p).action(0); }

}  // namespace

TEST_CASE("grounding loop on the toy pair") {
  const auto sgat = run_toy_loop(envs::ToyVariant::Sim3, envs::ToyVariant::Real3, GroundingMode::Sgat);
  CHECK(first_action(sgat.best) == 1);
  CHECK(first_action(sgat.policies.front()) == 1);
  const auto gat = run_toy_loop(envs::ToyVariant::Sim3, envs::ToyVariant::Real3, GroundingMode::Gat);
  CHECK(first_action(gat.best) == 0);
  CHECK(gat.best_eval.mean_return == 1.0);
  for (auto mode : {GroundingMode::Gat, GroundingMode::Sgat}) {
    const auto same = run_toy_loop(envs::ToyVariant::Sim3, envs::ToyVariant::Sim3, mode);
    CHECK(first_action(same.best) == 2);
  }
  // The loop stops once the real return no longer improves.
  CHECK(sgat.diagnostics.size() == 2);
  CHECK(sgat.diagnostics.back().real_eval.mean_return <= 1.2 + 0.2);
}

TEST_CASE("loop keeps real and sim data apart") {
  auto sim = toy(envs::ToyVariant::Sim3);
  const auto real = toy(envs::ToyVariant::Real3);
  auto hooks = grounding::tabular_hooks(sim, {.epsilon = 1.0});
  std::vector<Provenance> seen_forward, seen_inverse;
  auto fit_f = hooks.fit_forward;
  auto fit_i = hooks.fit_inverse;
  hooks.fit_forward = [&](std::span<const core::Trajectory> d, GroundingMode m) {
    for (const auto& t : d) seen_forward.push_back(t.provenance);
    return fit_f(d, m);
  };
  hooks.fit_inverse = [&](std::span<const core::Trajectory> d) {
    for (const auto& t : d) seen_inverse.push_back(t.provenance);
    return fit_i(d);
  };
  grounding::GroundingLoopConfig cfg;
  cfg.iterations = 2;
  cfg.improvement_threshold = 0.0;
  cfg.real_episodes = 50;
  cfg.eval_episodes = 10;
  const auto result = grounding::ground_and_improve(cfg, hooks, sim, *real, constant(2, 4));
  CHECK_FALSE(seen_forward.empty());
  CHECK_FALSE(seen_inverse.empty());
  for (auto p : seen_forward) CHECK(p == Provenance::Real);
  for (auto p : seen_inverse) CHECK(p == Provenance::Sim);
  // Accumulated data: the second fit sees both iterations' real episodes.
  CHECK(result.diagnostics.back().real_transitions == 100);

  // A "real" environment that is really the simulator is rejected.
  CHECK_THROWS_AS(grounding::ground_and_improve(cfg, grounding::tabular_hooks(sim), sim, *sim, constant(2, 4)),
                  std::logic_error);
}

TEST_CASE("improvement failure returns the best policy so far") {
  auto sim = toy(envs::ToyVariant::Sim3);
  const auto real = toy(envs::ToyVariant::Real3);
  auto hooks = grounding::tabular_hooks(sim, {.epsilon = 1.0});
  int calls = 0;
  auto improve = hooks.improve;
  hooks.improve = [&](const grounding::GroundedEnv& g, const core::PolicyPtr& p, std::uint64_t seed) {
    if (++calls == 2) throw std::runtime_error("diverged");
    return improve(g, p, seed);
  };
  grounding::GroundingLoopConfig cfg;
  cfg.mode = GroundingMode::Gat;
  cfg.iterations = 4;
  cfg.improvement_threshold = 0.0;
  cfg.real_episodes = 500;
  cfg.eval_episodes = 100;
  const auto r = grounding::ground_and_improve(cfg, hooks, sim, *real, constant(2, 4));
  CHECK(r.stop_reason == "improvement_failed");
  CHECK(r.diagnostics.size() == 2);
  CHECK(r.diagnostics.back().error == "diverged");
  CHECK(r.best_iteration == 1);
  CHECK(first_action(r.best) == 0);
}

TEST_CASE("loop config validation names the field") {
  grounding::GroundingLoopConfig cfg;
  cfg.real_episodes = 0;
  CHECK(cfg.validate().find("real_episodes") != std::string::npos);
  cfg = {};
  cfg.improvement_threshold = std::nan("");
  CHECK(cfg.validate().find("improvement_threshold") != std::string::npos);
}
