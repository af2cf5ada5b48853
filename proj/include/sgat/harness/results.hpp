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

#ifndef SGAT_HARNESS_RESULTS_HPP
#define SGAT_HARNESS_RESULTS_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgat::harness {

/// One evaluated policy: columns of the results CSV in order.
struct ResultRow {
  std::string experiment;
  std::string algorithm;
  double noise = 0.0;
  std::uint64_t seed = 0;
  /// Grounding iteration that produced the policy (0: no grounding).
  int iteration = 0;
  double mean_return = 0.0;
  double std_error = 0.0;
  double failure_rate = 0.0;
  double wall_seconds = 0.0;
};

/// Per-iteration record of a grounding run or per-candidate record of an
/// ANE search; written to a separate CSV so result rows stay one per policy.
struct DiagnosticRow {
  std::string experiment;
  std::string algorithm;
  double noise = 0.0;
  std::uint64_t seed = 0;
  int iteration = 0;
  std::size_t real_transitions = 0;
  std::size_t sim_transitions = 0;
  double forward_loss = 0.0;
  double inverse_loss = 0.0;
  long transforms = 0;
  long forward_unseen = 0;
  long inverse_unreachable = 0;
  double mean_return = 0.0;
  double std_error = 0.0;
  /// Free text without commas: the ANE sigma or an improvement failure.
  std::string note;
};

extern const char* const kResultHeader;
extern const char* const kDiagnosticHeader;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

void write_results(std::ostream& out, const std::vector<ResultRow>& rows);
void write_diagnostics(std::ostream& out, const std::vector<DiagnosticRow>& rows);

struct ParseIssue {
  int line = 0;
  std::string message;
};

/// Reads a results CSV. Malformed lines are skipped and reported in
/// `issues` with their 1-based line numbers.
std::vector<ResultRow> read_results(std::istream& in, std::vector<ParseIssue>& issues);

struct Aggregate {
  std::string experiment;
  std::string algorithm;
  double noise = 0.0;
  int trials = 0;
  double mean_return = 0.0;
  /// sqrt(sum of squared per-trial standard errors) / trials.
  double std_error = 0.0;
};

class NoDataError : public std::runtime_error {
 public:
  NoDataError() : std::runtime_error("no data") {}
};

/// Mean of per-trial means for every (experiment, algorithm, noise), in
/// order of first appearance of the algorithm and ascending noise.
/// Throws NoDataError when `rows` is empty.
std::vector<Aggregate> summarize(const std::vector<ResultRow>& rows);

/// Plot-ready table: one line per noise value with a mean and a standard
/// error column per algorithm.
void write_summary_table(std::ostream& out, const std::vector<Aggregate>& aggregates);

}  // namespace sgat::harness

#endif  // SGAT_HARNESS_RESULTS_HPP
