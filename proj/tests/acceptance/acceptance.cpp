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

// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is non-zero when any criterion fails.
//
// Usage: acceptance [criterion numbers...]   (default: all)

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sgat/core/policy.hpp"
#include "sgat/core/rollout.hpp"
#include "sgat/dynamics/neural.hpp"
#include "sgat/dynamics/tabular.hpp"
#include "sgat/envs/cliff_world.hpp"
#include "sgat/envs/toy_mdp.hpp"
#include "sgat/grounding/hooks.hpp"
#include "sgat/grounding/loop.hpp"
#include "sgat/grounding/transformer.hpp"
#include "sgat/harness/config.hpp"
#include "sgat/harness/experiment.hpp"
#include "sgat/harness/results.hpp"
#include "sgat/nn/losses.hpp"
#include "sgat/nn/mlp.hpp"
#include "support/linear_gaussian.hpp"
#include "sgat/opt/cmaes.hpp"
#include "sgat/opt/policy_iteration.hpp"

using namespace sgat;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------- 1: toy MDP

int first_action(const core::Policy& p) { return dynamic_cast<const core::TabularPolicy&>(p).action(0); }

// Forward counts proportional to the exact real kernel: exhaustive data.
dynamics::TabularForwardModel exhaustive_forward(const core::TabularMdpModel& m) {
  dynamics::TabularForwardModel f(m.num_states, m.num_actions);
  for (int s = 0; s < m.num_states; ++s) {
    if (m.terminal[static_cast<std::size_t>(s)]) continue;
    for (int a = 0; a < m.num_actions; ++a)
      for (int t = 0; t < m.num_states; ++t)
        if (m.p(s, a, t) > 0.0) f.add(s, a, t, m.p(s, a, t));
  }
  return f;
}

Outcome toy_exactness() {
  auto sim = std::make_shared<const envs::ToyMdp>(envs::ToyMdpSpec{.variant = envs::ToyVariant::Sim3});
  const envs::ToyMdp real({.variant = envs::ToyVariant::Real3});
  const auto real_plan = opt::policy_iteration(real.exact_model());
  const double real_value = real_plan.values[0];

  auto forward = std::make_shared<dynamics::TabularForwardModel>(exhaustive_forward(real.exact_model()));
  auto inverse = std::make_shared<dynamics::TabularInverseModel>(dynamics::fit_tabular_inverse(
      grounding::sweep_tabular(*sim, 1, 5), sim->info().num_states, sim->info().num_actions));

  struct Run {
    int action;
    core::EvalStats grounded;
  };
  const auto pipeline = [&](grounding::GroundingMode mode) {
    const auto model = grounding::induced_tabular_model(sim->exact_model(), *forward, *inverse, mode);
    const core::TabularPolicy policy(opt::policy_iteration(model).policy);
    const grounding::GroundedEnv grounded(sim, grounding::ActionTransformer(forward, inverse, mode));
    return Run{first_action(policy), core::evaluate(grounded, policy, 10000, 31)};
  };
  const Run gat = pipeline(grounding::GroundingMode::Gat);
  const Run sgat = pipeline(grounding::GroundingMode::Sgat);

  // The same outcome through the full loop, learning the forward model from
  // real rollouts instead of the exact kernel.
  grounding::GroundingLoopConfig cfg;
  cfg.iterations = 2;
  cfg.real_episodes = 5000;
  cfg.eval_episodes = 2000;
  cfg.seed = 8;
  const auto initial = std::make_shared<core::TabularPolicy>(opt::policy_iteration(sim->exact_model()).policy);
  const auto hooks = grounding::tabular_hooks(sim, {.epsilon = 1.0});
  cfg.mode = grounding::GroundingMode::Gat;
  const int loop_gat = first_action(*grounding::ground_and_improve(cfg, hooks, sim, real, initial).best);
  cfg.mode = grounding::GroundingMode::Sgat;
  const int loop_sgat = first_action(*grounding::ground_and_improve(cfg, hooks, sim, real, initial).best);

  const bool pass = real_plan.policy[0] == 1 && std::abs(real_value - 1.2) < 1e-12 && gat.action == 0 &&
                    gat.grounded.mean_return == 1.0 && gat.grounded.std_error == 0.0 && sgat.action == 1 &&
                    std::abs(sgat.grounded.mean_return - 1.2) <= 0.1 && loop_gat == 0 && loop_sgat == 1;
  return {pass, fmt::format("real optimum a{} = {}; GAT a{} grounded {} (se {}); SGAT a{} grounded {:.4f}; "
                            "loop GAT a{} SGAT a{}",
                            real_plan.policy[0] + 1, real_value, gat.action + 1, gat.grounded.mean_return,
                            gat.grounded.std_error, sgat.action + 1, sgat.grounded.mean_return, loop_gat + 1,
                            loop_sgat + 1)};
}

// ------------------------------------------------------ 2, 3, 9: cliff sweep

std::string sgat_binary() { return SGAT_CLI_PATH; }

std::string scratch_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / fmt::format("sgat-acceptance-{}", leaf);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::vector<harness::ResultRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<harness::ParseIssue> issues;
  auto rows = harness::read_results(in, issues);
  if (!issues.empty()) throw std::runtime_error(fmt::format("{}:{}: {}", path, issues[0].line, issues[0].message));
  return rows;
}

struct Pair {
  harness::ResultRow gat;
  harness::ResultRow sgat;
  double gap() const { return sgat.mean_return - gat.mean_return; }
  double band() const { return 3.0 * std::hypot(gat.std_error, sgat.std_error); }
};

std::map<double, Pair> pair_up(const std::vector<harness::ResultRow>& rows) {
  std::map<double, Pair> out;
  for (const auto& r : rows) {
    if (r.algorithm == "gat") out[r.noise].gat = r;
    if (r.algorithm == "sgat") out[r.noise].sgat = r;
  }
  return out;
}

Outcome endpoints() {
  auto cfg = harness::fig5_config();
  cfg.noise = {0.0, 1.0};
  const auto pairs = pair_up(harness::run_experiment(cfg).results);
  bool pass = pairs.size() == 2;
  std::string detail;
  for (const auto& [noise, p] : pairs) {
    pass = pass && std::abs(p.gap()) <= p.band();
    detail += fmt::format("slip {}: GAT {:.3f} SGAT {:.3f} |diff| {:.3g} <= {:.3g}; ", noise, p.gat.mean_return,
                          p.sgat.mean_return, std::abs(p.gap()), p.band());
  }
  return {pass, detail};
}

// First `sgat reproduce fig5` output, shared by criteria 3 and 9.
std::string g_fig5_first;

Outcome run_fig5(const std::string& leaf, std::string& csv) {
  const std::string dir = scratch_dir(leaf);
  const std::string cmd = fmt::format("\"{}\" -q reproduce fig5 --output-dir \"{}\" > /dev/null", sgat_binary(), dir);
  if (std::system(cmd.c_str()) != 0) return {false, "reproduce fig5 failed: " + cmd};
  csv = dir + "/fig5.csv";
  return {true, ""};
}

Outcome interior() {
  if (auto r = run_fig5("fig5-a", g_fig5_first); !r.pass) return r;
  const auto pairs = pair_up(read_csv(g_fig5_first));
  bool pass = pairs.size() == 11;
  std::string detail;
  for (int k = 1; k <= 9; ++k) {
    const double slip = k / 10.0;
    const auto it = std::find_if(pairs.begin(), pairs.end(),
                                 [slip](const auto& kv) { return std::abs(kv.first - slip) < 1e-12; });
    if (it == pairs.end()) return {false, fmt::format("slip {} missing", slip)};
    const Pair& p = it->second;
    const bool strict_needed = k >= 2 && k <= 8;
    const bool ok = p.gap() >= 0.0 && (!strict_needed || p.gap() > p.band());
    pass = pass && ok;
    detail += fmt::format("{}:{:+.2f}{}{} ", slip, p.gap(), strict_needed ? (p.gap() > p.band() ? ">" : "<=") : "",
                          strict_needed ? fmt::format("{:.2f}", p.band()) : "");
  }
  return {pass, "SGAT-GAT gap vs 3se band: " + detail};
}

std::string strip_wall_clock(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

Outcome determinism() {
  if (g_fig5_first.empty())
    if (auto r = run_fig5("fig5-a", g_fig5_first); !r.pass) return r;
  std::string second;
  if (auto r = run_fig5("fig5-b", second); !r.pass) return r;
  const std::string a = strip_wall_clock(g_fig5_first);
  const std::string b = strip_wall_clock(second);
  std::ifstream da(harness::diagnostics_path(g_fig5_first)), db(harness::diagnostics_path(second));
  std::stringstream sa, sb;
  sa << da.rdbuf();
  sb << db.rdbuf();
  const bool pass = !a.empty() && a == b && sa.str() == sb.str();
  return {pass, fmt::format("results {} bytes {}, diagnostics {}", a.size(), a == b ? "identical" : "DIFFER",
                            sa.str() == sb.str() ? "identical" : "DIFFER")};
}

// ------------------------------------------------------------ 4: cliff optimum

// Independent oracle: breadth-first search over the deterministic grid.
int bfs_steps(const envs::CliffWorldSpec& spec) {
  const int rows = spec.rows, cols = spec.cols;
  std::vector<int> dist(static_cast<std::size_t>(rows * cols), -1);
  std::vector<int> queue{spec.start_cell()};
  dist[static_cast<std::size_t>(spec.start_cell())] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int c = queue[head];
    if (c == spec.goal_cell()) return dist[static_cast<std::size_t>(c)];
    const int r = c / cols, col = c % cols;
    const int dr[] = {-1, 0, 1, 0}, dc[] = {0, 1, 0, -1};
    for (int k = 0; k < 4; ++k) {
      const int nr = r + dr[k], nc = col + dc[k];
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      const int n = nr * cols + nc;
      if (spec.is_cliff(n) || dist[static_cast<std::size_t>(n)] >= 0) continue;
      dist[static_cast<std::size_t>(n)] = dist[static_cast<std::size_t>(c)] + 1;
      queue.push_back(n);
    }
  }
  return -1;
}

Outcome cliff_optimum() {
  const envs::CliffWorldSpec spec;
  const envs::CliffWorld sim(spec, core::Provenance::Sim);
  const int shortest = bfs_steps(spec);
  const auto plan = opt::policy_iteration(sim.exact_model());
  const double value = plan.values[static_cast<std::size_t>(spec.start_cell())];
  const core::TabularPolicy greedy(plan.policy);
  core::Rng rng = core::make_stream(0);
  const auto path = core::rollout(sim, greedy, 1000, rng);
  const double oracle = spec.goal_reward + spec.step_penalty * shortest;
  const bool pass = shortest == 13 && std::abs(value - 98.7) < 1e-9 && std::abs(value - oracle) < 1e-9 &&
                    path.size() == 13 && path.transitions.back().terminal;
  return {pass, fmt::format("BFS {} steps, value {:.12g}, greedy path {} steps", shortest, value, path.size())};
}

// ---------------------------------------------------------- 5: Gaussian NLL

Outcome nll_machinery() {
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  const double at_origin = nn::gaussian_nll({Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1)}, Eigen::VectorXd::Zero(1));
  core::Rng rng = core::make_stream(55);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int in = 1 + static_cast<int>(rng() % 5);
    const int out = 1 + static_cast<int>(rng() % 3);
    const int hidden = 2 + static_cast<int>(rng() % 8);
    const int batch = 1 + static_cast<int>(rng() % 4);
    nn::MlpParams p = nn::MlpParams::glorot({in, hidden, 2 * out}, nn::Activation::Tanh, rng);
    p.flat() *= 0.5;
    const Eigen::MatrixXd x = Eigen::MatrixXd::NullaryExpr(in, batch, [&] { return core::standard_normal(rng); });
    const Eigen::MatrixXd t = Eigen::MatrixXd::NullaryExpr(out, batch, [&] { return core::standard_normal(rng); });
    const auto loss = nn::gaussian_nll_loss(t);
    const Eigen::VectorXd analytic = nn::grad(p, x, loss).gradient.flat();
    Eigen::VectorXd numeric(analytic.size());
    Eigen::MatrixXd scratch;
    for (Eigen::Index i = 0; i < numeric.size(); ++i) {
      const double orig = p.flat()(i);
      p.flat()(i) = orig + 1e-5;
      const double up = loss(nn::forward_batch(p, x), scratch);
      p.flat()(i) = orig - 1e-5;
      const double down = loss(nn::forward_batch(p, x), scratch);
      p.flat()(i) = orig;
      numeric(i) = (up - down) / 2e-5;
    }
    worst = std::max(worst, (analytic - numeric).norm() / std::max({analytic.norm(), numeric.norm(), 1e-12}));
  }
  const bool pass = worst < 1e-4 && std::abs(at_origin - half_log_2pi) < 1e-9;
  return {pass, fmt::format("worst relative gradient error {:.3g}; NLL(0;0,1) - log(2pi)/2 = {:.3g}", worst,
                            at_origin - half_log_2pi)};
}

// ------------------------------------------------------ 6: model recovery

Outcome model_recovery() {
  const testing::LinearGaussianSystem sys;
  const auto train = sys.sample(50000, 11);
  const auto held_out = sys.sample(5000, 12);
  dynamics::NeuralModelConfig cfg;
  cfg.train.epochs = 10;
  cfg.train.seed = 4;
  const auto sgat_model = dynamics::fit_neural_forward(train, dynamics::ForwardHead::Gaussian, cfg);
  const auto gat_model = dynamics::fit_neural_forward(train, dynamics::ForwardHead::Deterministic, cfg);
  const auto s = testing::assess(sgat_model, sys, held_out);
  const auto g = testing::assess(gat_model, sys, held_out);
  bool pass = true;
  for (int d = 0; d < 2; ++d) {
    pass = pass && std::abs(s.mean_sigma[d] - sys.sigma) < 0.2 * sys.sigma;
    pass = pass && std::abs(g.mean_residual[d]) < 3.0 * g.residual_se[d];
  }
  return {pass, fmt::format("sigma {:.4f}/{:.4f} vs {}; MSE-model residual {:.2g}/{:.2g} vs 3se {:.2g}/{:.2g}",
                            s.mean_sigma[0], s.mean_sigma[1], sys.sigma, g.mean_residual[0], g.mean_residual[1],
                            3 * g.residual_se[0], 3 * g.residual_se[1])};
}

// ------------------------------------------------------------ 7: CMA-ES

Outcome cmaes_sanity() {
  opt::CmaesConfig cfg;
  cfg.population = 16;
  cfg.initial_mean = std::vector<double>(5, 1.0);
  cfg.max_generations = 200;
  cfg.seed = 12;
  const auto sphere = [](const Eigen::VectorXd& x, std::uint64_t) { return -x.squaredNorm(); };
  const auto res = opt::cmaes_optimize(sphere, cfg);
  const double worst = res.best.cwiseAbs().maxCoeff();

  // 2f + 5 is exact in floating point while fitness values stay well above
  // the rounding scale, which holds for the first 60 generations here.
  cfg.max_generations = 60;
  const auto a = opt::cmaes_optimize(sphere, cfg);
  const auto b = opt::cmaes_optimize(
      [&](const Eigen::VectorXd& x, std::uint64_t s) { return 2.0 * sphere(x, s) + 5.0; }, cfg);
  const bool invariant = a.rankings == b.rankings && a.best == b.best;
  return {worst < 1e-4 && res.generations <= 200 && invariant,
          fmt::format("max |x| {:.3g} after {} generations; selection under 2f+5 {}", worst, res.generations,
                      invariant ? "identical" : "DIFFERS")};
}

// ---------------------------------------------------------- 8: cart-pole

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome cartpole() {
  auto cfg = harness::load_config(std::string(SGAT_SOURCE_DIR) + "/configs/cartpole_noisyreal.ini");
  cfg.algorithms = {"none", "gat", "sgat"};
  cfg.noise = {0.0, 0.3, 0.6};
  cfg.trials = 5;
  cfg.pole_mass_factor = 10.0;
  const auto rows = harness::run_experiment(cfg).results;
  std::map<std::pair<std::string, double>, std::vector<double>> returns;
  for (const auto& r : rows) returns[{r.algorithm, r.noise}].push_back(r.mean_return);
  std::string detail;
  for (double sigma : cfg.noise)
    detail += fmt::format("sigma {}: none {:.1f} gat {:.1f} sgat {:.1f}; ", sigma, median(returns[{"none", sigma}]),
                          median(returns[{"gat", sigma}]), median(returns[{"sgat", sigma}]));
  const double none = median(returns[{"none", 0.6}]);
  const double gat = median(returns[{"gat", 0.6}]);
  const double sgat = median(returns[{"sgat", 0.6}]);
  return {sgat >= gat && gat >= none && sgat >= none, "medians over 5 seeds, " + detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "toy MDP exactness", 5, toy_exactness},
      {2, "cliff sweep endpoints", 60, endpoints},
      {3, "cliff sweep interior dominance", 600, interior},
      {4, "cliff slip 0 optimality", 1, cliff_optimum},
      {5, "Gaussian NLL machinery", 30, nll_machinery},
      {6, "dynamics model recovery", 300, model_recovery},
      {7, "CMA-ES sanity", 30, cmaes_sanity},
      {8, "cart-pole sim to noisy real", 1800, cartpole},
      {9, "reproduce fig5 determinism", 600, determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    fmt::print("[{}] criterion {}: {} ({:.2f}s / {}s budget{}) {}\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
               c.budget_seconds, in_time ? "" : ", OVER BUDGET", o.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
