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

// Command-line front end: run an experiment, summarize a results CSV, or
// regenerate a canonical figure.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sgat/harness/config.hpp"
#include "sgat/harness/experiment.hpp"
#include "sgat/harness/results.hpp"

namespace h = sgat::harness;

namespace {

int run_and_write(const h::ExperimentConfig& config, const std::string& output, bool quiet) {
  const auto log = [quiet](const std::string& line) {
    if (!quiet) std::cerr << line << '\n';
  };
  const auto result = h::run_experiment(config, log);
  const auto files = h::write_outputs(output, result);
  std::cout << files.results << '\n' << files.diagnostics << '\n';
  return 0;
}

int summarize(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    return 1;
  }
  std::vector<h::ParseIssue> issues;
  const auto rows = h::read_results(in, issues);
  for (const auto& issue : issues) std::cerr << path << ":" << issue.line << ": " << issue.message << '\n';
  try {
    h::write_summary_table(std::cout, h::summarize(rows));
  } catch (const h::NoDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grounded action transformation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  auto* run = app.add_subcommand("run", "Run an experiment from an INI config");
  std::string config_path;
  std::vector<std::string> overrides;
  std::string run_output;
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", overrides, "Override, as section.key=value")->take_all();
  run->add_option("-o,--output", run_output, "Results CSV path");

  auto* sum = app.add_subcommand("summarize", "Aggregate a results CSV into a plot-ready table");
  std::string csv_path;
  sum->add_option("csv", csv_path, "Results CSV")->required();

  auto* repro = app.add_subcommand("reproduce", "Regenerate a canonical figure");
  std::string figure;
  std::string output_dir = "results";
  repro->add_option("figure", figure, "Figure name")->required()->check(CLI::IsMember({"fig5"}));
  repro->add_option("--output-dir", output_dir, "Directory for config and CSVs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto config = h::load_config(config_path, overrides);
      const std::string output = run_output.empty() ? h::resolve_output_path(config) : run_output;
      return run_and_write(config, output, quiet);
    }
    if (*sum) return summarize(csv_path);
    if (*repro) {
      const auto config = h::fig5_config();
      std::filesystem::create_directories(output_dir);
      const auto ini = (std::filesystem::path(output_dir) / "fig5.ini").string();
      std::ofstream(ini) << h::write_config(config);
      if (!quiet) std::cerr << "wrote " << ini << '\n';
      return run_and_write(config, (std::filesystem::path(output_dir) / "fig5.csv").string(), quiet);
    }
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
