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

// Serial reference vs OpenMP kernels: policy evaluation and CMA-ES
// generations. Reports wall time and checks the outputs agree.

#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <functional>

#include "sgat/core/policy.hpp"
#include "sgat/core/rollout.hpp"
#include "sgat/envs/cart_pole.hpp"
#include "sgat/envs/cliff_world.hpp"
#include "sgat/opt/cmaes.hpp"
#include "sgat/opt/policy_iteration.hpp"

using namespace sgat;

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeats;
}

void report(const char* name, double serial, double parallel, bool identical) {
  fmt::print("{:<28} serial {:9.4f} s  parallel {:9.4f} s  speedup {:5.2f}x  identical {}\n", name, serial,
             parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  fmt::print("threads {}\n", omp_get_max_threads());

  envs::CliffWorldSpec spec;
  spec.slip_prob = 0.3;
  const envs::CliffWorld cliff(spec, core::Provenance::Real);
  const auto plan = opt::policy_iteration(cliff.exact_model());
  const core::TabularPolicy greedy(plan.policy);
  core::EvalStats a, b;
  const double cs = seconds([&] { a = core::evaluate_serial(cliff, greedy, 20000, 1); }, repeats);
  const double cp = seconds([&] { b = core::evaluate(cliff, greedy, 20000, 1); }, repeats);
  report("evaluate cliff 20k", cs, cp, a.mean_return == b.mean_return && a.std_error == b.std_error);

  const envs::CartPole pole(envs::CartPoleSpec{}.with_mismatch(10.0, 0.3), core::Provenance::Real);
  const core::LinearPolicy linear(pole.info(), {0.1, 1.0, 20.0, 2.0, 0.0});
  const double ps = seconds([&] { a = core::evaluate_serial(pole, linear, 2000, 2); }, repeats);
  const double pp = seconds([&] { b = core::evaluate(pole, linear, 2000, 2); }, repeats);
  report("evaluate cart-pole 2k", ps, pp, a.mean_return == b.mean_return && a.std_error == b.std_error);

  opt::CmaesConfig cfg;
  cfg.initial_mean.assign(core::LinearPolicy::param_count(pole.info()), 0.0);
  cfg.max_generations = 10;
  cfg.seed = 3;
  const auto objective = opt::rollout_objective(pole, 3);
  opt::CmaesResult rs, rp;
  cfg.parallel = false;
  const double ms = seconds([&] { rs = opt::cmaes_optimize(objective, cfg); }, repeats);
  cfg.parallel = true;
  const double mp = seconds([&] { rp = opt::cmaes_optimize(objective, cfg); }, repeats);
  report("cmaes cart-pole 10 gens", ms, mp, rs.best == rp.best && rs.rankings == rp.rankings);
  return 0;
}
