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
#include <cstdlib>
#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "sgat/harness/config.hpp"
#include "sgat/harness/experiment.hpp"
#include "sgat/harness/results.hpp"

using namespace sgat::harness;

namespace {

ExperimentConfig parse(const std::string& text, const std::vector<std::string>& overrides = {}) {
  std::istringstream in(text);
  return parse_config(in, overrides);
}

std::string config_error(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

ResultRow row(const std::string& algorithm, double noise, std::uint64_t seed, double mean, double se) {
  ResultRow r;
  r.experiment = "cliff-sweep";
  r.algorithm = algorithm;
  r.noise = noise;
  r.seed = seed;
  r.mean_return = mean;
  r.std_error = se;
  return r;
}

std::string without_wall_clock(const std::vector<ResultRow>& rows) {
  auto copy = rows;
  for (auto& r : copy) r.wall_seconds = 0.0;
  std::ostringstream out;
  write_results(out, copy);
  return out.str();
}

}  // namespace

TEST_CASE("config sections, lists and overrides") {
  const auto c = parse(
      "[experiment]\nname = toy\nalgorithms = none, sgat\nnoise = 0.1, 0.3\ntrials = 2\nseed = 9\n"
      "[model]\nhidden = 32, 16\n",
      {"cmaes.generations=7", "experiment.seed=11"});
  CHECK(c.name == "toy");
  CHECK(c.algorithms == std::vector<std::string>{"none", "sgat"});
  CHECK(c.noise == std::vector<double>{0.1, 0.3});
  CHECK(c.trials == 2);
  CHECK(c.seed == 11);
  CHECK(c.hidden == std::vector<int>{32, 16});
  CHECK(c.generations == 7);
}

TEST_CASE("config errors name the offending field") {
  CHECK(config_error("[experiment]\ncolour = red\n").rfind("experiment.colour:", 0) == 0);
  CHECK(config_error("[experiment]\ntrials = 0\n").rfind("experiment.trials:", 0) == 0);
  CHECK(config_error("[experiment]\nname = cliff-sweep\nnoise = 0.5, 1.5\n").rfind("experiment.noise:", 0) == 0);
  CHECK(config_error("[experiment]\nname = cartpole-noisysim\nnoise = -0.1\n").rfind("experiment.noise:", 0) == 0);
  CHECK(config_error("[experiment]\nalgorithms = gat, magic\n").rfind("experiment.algorithms:", 0) == 0);
  CHECK(config_error("[experiment]\nseed = twelve\n").rfind("experiment.seed:", 0) == 0);
  CHECK(config_error("", {"cmaes.population"}).find("cmaes.population") != std::string::npos);
  CHECK(config_error("[experiment]\nname = toy\nnoise = 0.5\n").empty());
}

TEST_CASE("written config parses back to the same text") {
  auto c = fig5_config();
  c.hidden = {8, 4};
  c.learning_rate = 0.0025;
  c.output = "out/x.csv";
  const std::string text = write_config(c);
  CHECK(write_config(parse(text)) == text);
}

TEST_CASE("output path falls back to the environment directory") {
  ExperimentConfig c;
  c.output = "given.csv";
  CHECK(resolve_output_path(c) == "given.csv");
  c.output.clear();
  c.name = "toy";
  ::setenv("SGAT_OUTPUT_DIR", "/tmp/sgat-out", 1);
  CHECK(resolve_output_path(c) == "/tmp/sgat-out/toy.csv");
  ::unsetenv("SGAT_OUTPUT_DIR");
  CHECK(resolve_output_path(c) == "results/toy.csv");
  CHECK(diagnostics_path("a/b/run.csv") == "a/b/run_diagnostics.csv");
}

TEST_CASE("summarize a single row returns that row") {
  const auto agg = summarize({row("gat", 0.2, 1, 3.5, 0.25)});
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].trials == 1);
  CHECK(agg[0].mean_return == 3.5);
  CHECK(agg[0].std_error == 0.25);
}

TEST_CASE("summarize averages trials and pools standard errors") {
  const auto agg = summarize({row("sgat", 0.5, 1, 1.0, 0.3), row("sgat", 0.5, 2, 1.2, 0.4)});
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].mean_return == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(agg[0].std_error == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("summarize with no rows is an explicit error") {
  CHECK_THROWS_AS(summarize({}), NoDataError);
  std::istringstream empty("");
  std::vector<ParseIssue> issues;
  CHECK(read_results(empty, issues).empty());
  CHECK_THROWS_WITH(summarize(read_results(empty, issues)), "no data");
}

TEST_CASE("malformed rows are reported with line numbers and skipped") {
  std::ostringstream out;
  write_results(out, {row("gat", 0.1, 1, 2.0, 0.1), row("sgat", 0.1, 1, 3.0, 0.1)});
  std::string text = out.str();
  text.insert(text.find("cliff-sweep,sgat"), "cliff-sweep,gat,zero,1,0,1,0,0,0\nshort,row\n");
  std::istringstream in(text);
  std::vector<ParseIssue> issues;
  const auto rows = read_results(in, issues);
  CHECK(rows.size() == 2);
  REQUIRE(issues.size() == 2);
  CHECK(issues[0].line == 3);
  CHECK(issues[1].line == 4);
}

TEST_CASE("result CSV round trips") {
  auto r = row("ane", 0.3, 42, -1.0 / 3.0, 1e-17);
  r.iteration = 3;
  r.failure_rate = 0.125;
  std::ostringstream out;
  write_results(out, {r});
  std::istringstream in(out.str());
  std::vector<ParseIssue> issues;
  const auto back = read_results(in, issues);
  REQUIRE(back.size() == 1);
  CHECK(issues.empty());
  CHECK(back[0].mean_return == r.mean_return);
  CHECK(back[0].std_error == r.std_error);
  CHECK(back[0].seed == 42);
  CHECK(back[0].iteration == 3);
  CHECK(back[0].failure_rate == 0.125);
}

TEST_CASE("toy experiment reports GAT at 1.0 and SGAT near 1.2") {
  auto c = parse(
      "[experiment]\nname = toy\nalgorithms = none, gat, sgat\nnoise = 0.2\nseed = 3\neval_episodes = 10000\n"
      "[grounding]\niterations = 2\nreal_episodes = 3000\n[tabular]\nepsilon = 1\n");
  const auto out = run_experiment(c);
  REQUIRE(out.results.size() == 3);
  CHECK(out.results[0].algorithm == "none");
  CHECK(out.results[0].mean_return == -1.0);
  CHECK(out.results[1].algorithm == "gat");
  CHECK(out.results[1].mean_return == 1.0);
  CHECK(out.results[1].std_error == 0.0);
  CHECK(out.results[2].algorithm == "sgat");
  CHECK(std::abs(out.results[2].mean_return - 1.2) < 4.0 * out.results[2].std_error);
}

TEST_CASE("cliff sweep shape, unique triples and determinism") {
  auto c = fig5_config();
  c.eval_episodes = 500;
  c.loop_eval_episodes = 200;
  c.iterations = 2;
  const auto a = run_experiment(c);
  CHECK(a.results.size() == 22);
  std::set<std::tuple<std::string, double, std::uint64_t>> triples;
  for (const auto& r : a.results) {
    CHECK(r.std_error >= 0.0);
    triples.emplace(r.algorithm, r.noise, r.seed);
  }
  CHECK(triples.size() == a.results.size());
  const auto b = run_experiment(c);
  CHECK(without_wall_clock(a.results) == without_wall_clock(b.results));
  std::ostringstream da, db;
  write_diagnostics(da, a.diagnostics);
  write_diagnostics(db, b.diagnostics);
  CHECK(da.str() == db.str());
}

TEST_CASE("trials differ only in seed and outcome columns") {
  auto c = fig5_config();
  c.noise = {0.0, 0.3};
  c.trials = 2;
  c.eval_episodes = 300;
  c.loop_eval_episodes = 100;
  c.iterations = 2;
  const auto out = run_experiment(c);
  REQUIRE(out.results.size() == 8);
  for (std::size_t i = 0; i < out.results.size(); i += 4) {
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& first = out.results[i + k];
      const auto& second = out.results[i + 2 + k];
      CHECK(first.experiment == second.experiment);
      CHECK(first.algorithm == second.algorithm);
      CHECK(first.noise == second.noise);
      CHECK(first.seed == c.seed);
      CHECK(second.seed == c.seed + 1);
    }
  }
  // Deterministic slip-free evaluation gives identical outcomes across trials.
  CHECK(out.results[0].mean_return == out.results[2].mean_return);
}

TEST_CASE("continuous pipelines and the noise-envelope baseline run end to end") {
  auto c = parse(
      "[experiment]\nname = cartpole-noisysim\nalgorithms = none, gat, sgat, ane\nnoise = 0.3\nseed = 5\n"
      "eval_episodes = 20\n[grounding]\niterations = 1\nreal_episodes = 3\nsim_episodes = 3\neval_episodes = 5\n"
      "[model]\nhidden = 8\nepochs = 2\n[cmaes]\npopulation = 6\ngenerations = 2\nrollouts = 1\n"
      "[continuous]\nreselect_episodes = 4\ninverse_encoding = delta\n[ane]\nsigmas = 0, 0.5\neval_episodes = 5\n");
  const auto out = run_experiment(c);
  REQUIRE(out.results.size() == 4);
  for (const auto& r : out.results) {
    CHECK(std::isfinite(r.mean_return));
    CHECK(r.mean_return >= 0.0);
    CHECK(r.mean_return <= 200.0);
  }
  int ane_rows = 0;
  for (const auto& d : out.diagnostics)
    if (d.algorithm == "ane") {
      ++ane_rows;
      CHECK(d.note.rfind("ane_sigma=", 0) == 0);
    }
  CHECK(ane_rows == 2);
}
