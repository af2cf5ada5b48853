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

#include "sgat/harness/experiment.hpp"

#include <fmt/format.h>

#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>

#include "sgat/baselines/baselines.hpp"
#include "sgat/core/rollout.hpp"
#include "sgat/envs/cart_pole.hpp"
#include "sgat/envs/cliff_world.hpp"
#include "sgat/envs/toy_mdp.hpp"
#include "sgat/grounding/hooks.hpp"
#include "sgat/grounding/loop.hpp"
#include "sgat/opt/policy_iteration.hpp"

namespace sgat::harness {

namespace {

using Clock = std::chrono::steady_clock;

enum Purpose : std::uint64_t { kNone = 11, kLoop = 12, kAne = 13, kEval = 14 };

struct EnvPair {
  std::shared_ptr<const core::Env> sim;
  std::shared_ptr<const core::Env> real;
};

EnvPair make_envs(const ExperimentConfig& c, double noise) {
  if (c.name == "toy") {
    envs::ToyMdpSpec sim{.variant = envs::ToyVariant::Sim3};
    envs::ToyMdpSpec real{.variant = envs::ToyVariant::Real3, .real_a2_to_s2 = 1.0 - noise};
    return {std::make_shared<const envs::ToyMdp>(sim), std::make_shared<const envs::ToyMdp>(real)};
  }
  if (c.name == "cliff-sweep") {
    envs::CliffWorldSpec spec;
    spec.step_penalty = c.cliff_step_penalty;
    spec.goal_reward = c.cliff_goal_reward;
    spec.cliff_reward = c.cliff_cliff_reward;
    spec.horizon = c.cliff_horizon;
    envs::CliffWorldSpec real = spec;
    real.slip_prob = noise;
    return {std::make_shared<const envs::CliffWorld>(spec, core::Provenance::Sim),
            std::make_shared<const envs::CliffWorld>(real, core::Provenance::Real)};
  }
  envs::CartPoleSpec spec;
  spec.horizon = c.cartpole_horizon;
  const double factor = c.name == "cartpole-noisyreal" ? c.pole_mass_factor : 1.0;
  return {std::make_shared<const envs::CartPole>(spec, core::Provenance::Sim),
          std::make_shared<const envs::CartPole>(spec.with_mismatch(factor, noise), core::Provenance::Real)};
}

opt::CmaesConfig cmaes_config(const ExperimentConfig& c) {
  opt::CmaesConfig cfg;
  cfg.population = c.population;
  cfg.max_generations = c.generations;
  cfg.rollouts_per_candidate = c.rollouts;
  cfg.initial_step = c.initial_step;
  return cfg;
}

dynamics::NeuralModelConfig model_config(const ExperimentConfig& c, std::uint64_t seed) {
  dynamics::NeuralModelConfig m;
  m.hidden = c.hidden;
  m.train.epochs = c.epochs;
  m.train.batch_size = c.batch_size;
  m.train.adam.learning_rate = c.learning_rate;
  m.train.final_lr_fraction = c.final_lr_fraction;
  m.train.seed = seed;
  return m;
}

grounding::GroundingHooks make_hooks(const ExperimentConfig& c, const EnvPair& envs, std::uint64_t seed) {
  if (c.tabular()) {
    auto sim = std::dynamic_pointer_cast<const core::TabularEnv>(envs.sim);
    return grounding::tabular_hooks(sim, {.epsilon = c.epsilon, .sim_sweeps = c.sim_sweeps});
  }
  grounding::ContinuousGroundingOptions o;
  o.exploration_sigma = c.exploration_sigma;
  o.forward_model = model_config(c, core::derive_seed(seed, {1}));
  o.inverse_model = model_config(c, core::derive_seed(seed, {2}));
  o.inverse_encoding =
      c.inverse_encoding == "delta" ? dynamics::InverseEncoding::Delta : dynamics::InverseEncoding::Concat;
  o.cmaes = cmaes_config(c);
  o.reselect_episodes = c.reselect_episodes;
  return grounding::continuous_hooks(envs.sim->info(), o);
}

struct JobOutput {
  std::vector<ResultRow> results;
  std::vector<DiagnosticRow> diagnostics;
};

JobOutput run_job(const ExperimentConfig& c, double noise, std::uint64_t trial_seed, std::uint64_t job_seed) {
  JobOutput out;
  const EnvPair envs = make_envs(c, noise);
  const auto improver = c.tabular() ? baselines::policy_iteration_improver()
                                    : baselines::cmaes_improver(envs.sim->info(), cmaes_config(c));

  const auto none_start = Clock::now();
  const core::PolicyPtr none =
      baselines::train_no_grounding(*envs.sim, improver, core::derive_seed(job_seed, {kNone}));
  const double none_seconds = std::chrono::duration<double>(Clock::now() - none_start).count();
  const auto eval_seed = core::derive_seed(job_seed, {kEval});

  for (const auto& algorithm : c.algorithms) {
    const auto start = Clock::now();
    core::PolicyPtr policy = none;
    int iteration = 0;
    const auto diag = [&](int it) {
      DiagnosticRow d;
      d.experiment = c.name;
      d.algorithm = algorithm;
      d.noise = noise;
      d.seed = trial_seed;
      d.iteration = it;
      return d;
    };
    if (algorithm == "gat" || algorithm == "sgat") {
      grounding::GroundingLoopConfig loop;
      loop.mode = grounding::parse_grounding_mode(algorithm);
      loop.iterations = c.iterations;
      loop.real_episodes = c.effective_real_episodes();
      loop.sim_episodes = c.sim_episodes;
      loop.eval_episodes = c.loop_eval_episodes;
      loop.improvement_threshold = c.improvement_threshold;
      loop.accumulate_data = c.accumulate_data;
      loop.reward_action =
          c.reward_action == "original" ? grounding::RewardAction::Original : grounding::RewardAction::Transformed;
      loop.seed = core::derive_seed(job_seed, {kLoop});
      const auto r =
          grounding::ground_and_improve(loop, make_hooks(c, envs, loop.seed), envs.sim, *envs.real, none);
      policy = r.best;
      iteration = r.best_iteration;
      for (const auto& it : r.diagnostics) {
        DiagnosticRow d = diag(it.iteration);
        d.real_transitions = it.real_transitions;
        d.sim_transitions = it.sim_transitions;
        d.forward_loss = it.forward_loss;
        d.inverse_loss = it.inverse_loss;
        d.transforms = it.fallbacks.transforms;
        d.forward_unseen = it.fallbacks.forward_unseen;
        d.inverse_unreachable = it.fallbacks.inverse_unreachable;
        d.mean_return = it.real_eval.mean_return;
        d.std_error = it.real_eval.std_error;
        if (!it.error.empty()) {
          d.note = "improvement failed: " + it.error;
          std::replace(d.note.begin(), d.note.end(), ',', ';');
        }
        out.diagnostics.push_back(std::move(d));
      }
    } else if (algorithm == "ane") {
      const auto r = baselines::ane_grid_search(c.ane_sigmas, envs.sim, improver, *envs.real, c.ane_eval_episodes,
                                                core::derive_seed(job_seed, {kAne}));
      policy = r.best_policy;
      for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        DiagnosticRow d = diag(static_cast<int>(i) + 1);
        d.mean_return = r.candidates[i].real_eval.mean_return;
        d.std_error = r.candidates[i].real_eval.std_error;
        d.note = "ane_sigma=" + format_double(r.candidates[i].sigma) +
                 (r.candidates[i].sigma == r.best_sigma ? " selected" : "");
        out.diagnostics.push_back(std::move(d));
      }
    }
    const auto stats = core::evaluate(*envs.real, *policy, c.eval_episodes, eval_seed);
    ResultRow row;
    row.experiment = c.name;
    row.algorithm = algorithm;
    row.noise = noise;
    row.seed = trial_seed;
    row.iteration = iteration;
    row.mean_return = stats.mean_return;
    row.std_error = stats.std_error;
    row.failure_rate = stats.failure_rate;
    row.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count() +
                       (algorithm == "none" ? none_seconds : 0.0);
    out.results.push_back(std::move(row));
  }
  return out;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config, const LogFn& log) {
  config.validate();
  const int noise_count = static_cast<int>(config.noise.size());
  const int jobs = noise_count * config.trials;
  std::vector<JobOutput> outputs(static_cast<std::size_t>(jobs));
  std::exception_ptr error;
  std::mutex mu;
  int done = 0;
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < jobs; ++j) {
    const int n = j / config.trials;
    const int t = j % config.trials;
    const std::uint64_t trial_seed = config.seed + static_cast<std::uint64_t>(t);
    try {
      outputs[static_cast<std::size_t>(j)] =
          run_job(config, config.noise[static_cast<std::size_t>(n)], trial_seed,
                  core::derive_seed(trial_seed, {static_cast<std::uint64_t>(n)}));
      std::lock_guard lock(mu);
      ++done;
      if (log)
        log(fmt::format("[{}/{}] {} noise={} seed={}", done, jobs, config.name,
                        format_double(config.noise[static_cast<std::size_t>(n)]), trial_seed));
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  ExperimentOutput out;
  for (auto& o : outputs) {
    out.results.insert(out.results.end(), o.results.begin(), o.results.end());
    out.diagnostics.insert(out.diagnostics.end(), o.diagnostics.begin(), o.diagnostics.end());
  }
  return out;
}

std::string diagnostics_path(const std::string& results_path) {
  std::filesystem::path p(results_path);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "_diagnostics.csv")).string();
}

WrittenFiles write_outputs(const std::string& results_path, const ExperimentOutput& output) {
  const std::filesystem::path p(results_path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  WrittenFiles files{results_path, diagnostics_path(results_path)};
  std::ofstream results(files.results, std::ios::binary);
  if (!results) throw std::runtime_error("cannot write " + files.results);
  write_results(results, output.results);
  std::ofstream diagnostics(files.diagnostics, std::ios::binary);
  if (!diagnostics) throw std::runtime_error("cannot write " + files.diagnostics);
  write_diagnostics(diagnostics, output.diagnostics);
  return files;
}

}  // namespace sgat::harness
