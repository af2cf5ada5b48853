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

#ifndef SGAT_HARNESS_EXPERIMENT_HPP
#define SGAT_HARNESS_EXPERIMENT_HPP

#include <functional>
#include <string>
#include <vector>

#include "sgat/harness/config.hpp"
#include "sgat/harness/results.hpp"

namespace sgat::harness {

struct ExperimentOutput {
  /// One row per (noise, trial, algorithm), in that nesting order.
  std::vector<ResultRow> results;
  std::vector<DiagnosticRow> diagnostics;
};

using LogFn = std::function<void(const std::string&)>;

/// Runs every (noise, trial) job, in parallel across jobs. Trial t uses seed
/// config.seed + t. Within a job all algorithms share the simulator, the
/// real environment, the no-grounding starting policy and the final
/// evaluation streams. Output depends only on the configuration.
ExperimentOutput run_experiment(const ExperimentConfig& config, const LogFn& log = {});

/// "<dir>/<stem>_diagnostics.csv" for "<dir>/<stem>.csv".
std::string diagnostics_path(const std::string& results_path);

struct WrittenFiles {
  std::string results;
  std::string diagnostics;
};

/// Writes both CSVs, creating parent directories as needed.
WrittenFiles write_outputs(const std::string& results_path, const ExperimentOutput& output);

}  // namespace sgat::harness

#endif  // SGAT_HARNESS_EXPERIMENT_HPP
