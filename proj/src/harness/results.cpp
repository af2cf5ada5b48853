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

#include "sgat/harness/results.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace sgat::harness {

const char* const kResultHeader =
    "experiment,algorithm,noise,seed,iteration,mean_return,std_error,failure_rate,wall_seconds";
const char* const kDiagnosticHeader =
    "experiment,algorithm,noise,seed,iteration,real_transitions,sim_transitions,forward_loss,inverse_loss,"
    "transforms,forward_unseen,inverse_unreachable,mean_return,std_error,note";

std::string format_double(double v) { return fmt::format("{}", v); }

void write_results(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultHeader << "\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{},{},{},{:.3f}\n", r.experiment, r.algorithm, format_double(r.noise), r.seed,
                       r.iteration, format_double(r.mean_return), format_double(r.std_error),
                       format_double(r.failure_rate), r.wall_seconds);
}

void write_diagnostics(std::ostream& out, const std::vector<DiagnosticRow>& rows) {
  out << kDiagnosticHeader << "\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.experiment, r.algorithm,
                       format_double(r.noise), r.seed, r.iteration, r.real_transitions, r.sim_transitions,
                       format_double(r.forward_loss), format_double(r.inverse_loss), r.transforms, r.forward_unseen,
                       r.inverse_unreachable, format_double(r.mean_return), format_double(r.std_error), r.note);
}

namespace {

template <typename T>
bool parse_field(const std::string& text, T& value) {
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return !text.empty() && ec == std::errc() && end == text.data() + text.size();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<ResultRow> read_results(std::istream& in, std::vector<ParseIssue>& issues) {
  std::vector<ResultRow> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kResultHeader) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 9) {
      issues.push_back({number, fmt::format("expected 9 columns, found {}", cells.size())});
      continue;
    }
    ResultRow r;
    r.experiment = cells[0];
    r.algorithm = cells[1];
    const bool ok = !r.experiment.empty() && !r.algorithm.empty() && parse_field(cells[2], r.noise) &&
                    parse_field(cells[3], r.seed) && parse_field(cells[4], r.iteration) &&
                    parse_field(cells[5], r.mean_return) && parse_field(cells[6], r.std_error) &&
                    parse_field(cells[7], r.failure_rate) && parse_field(cells[8], r.wall_seconds);
    if (!ok || !std::isfinite(r.mean_return) || !(r.std_error >= 0.0)) {
      issues.push_back({number, "unparseable or out-of-range field"});
      continue;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<Aggregate> summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw NoDataError();
  std::vector<std::string> algorithm_order;
  struct Acc {
    int n = 0;
    double sum = 0.0, se_sq = 0.0;
  };
  std::map<std::tuple<std::string, std::size_t, double>, Acc> groups;
  for (const auto& r : rows) {
    auto it = std::find(algorithm_order.begin(), algorithm_order.end(), r.algorithm);
    if (it == algorithm_order.end()) it = algorithm_order.insert(algorithm_order.end(), r.algorithm);
    auto& acc = groups[{r.experiment, static_cast<std::size_t>(it - algorithm_order.begin()), r.noise}];
    ++acc.n;
    acc.sum += r.mean_return;
    acc.se_sq += r.std_error * r.std_error;
  }
  std::vector<Aggregate> out;
  for (const auto& [key, acc] : groups) {
    const auto& [experiment, algo, noise] = key;
    out.push_back({experiment, algorithm_order[algo], noise, acc.n, acc.sum / acc.n, std::sqrt(acc.se_sq) / acc.n});
  }
  std::stable_sort(out.begin(), out.end(), [](const Aggregate& a, const Aggregate& b) {
    return std::tie(a.experiment, a.noise) < std::tie(b.experiment, b.noise);
  });
  return out;
}

void write_summary_table(std::ostream& out, const std::vector<Aggregate>& aggregates) {
  std::vector<std::string> algorithms;
  for (const auto& a : aggregates)
    if (std::find(algorithms.begin(), algorithms.end(), a.algorithm) == algorithms.end())
      algorithms.push_back(a.algorithm);
  const bool several_experiments =
      std::any_of(aggregates.begin(), aggregates.end(),
                  [&](const Aggregate& a) { return a.experiment != aggregates.front().experiment; });
  out << (several_experiments ? "experiment,noise" : "noise");
  for (const auto& name : algorithms) out << "," << name << "_mean," << name << "_se";
  out << "\n";
  for (std::size_t i = 0; i < aggregates.size();) {
    std::size_t j = i;
    while (j < aggregates.size() && aggregates[j].experiment == aggregates[i].experiment &&
           aggregates[j].noise == aggregates[i].noise)
      ++j;
    if (several_experiments) out << aggregates[i].experiment << ",";
    out << format_double(aggregates[i].noise);
    for (const auto& name : algorithms) {
      const auto hit = std::find_if(aggregates.begin() + static_cast<std::ptrdiff_t>(i),
                                    aggregates.begin() + static_cast<std::ptrdiff_t>(j),
                                    [&](const Aggregate& a) { return a.algorithm == name; });
      if (hit == aggregates.begin() + static_cast<std::ptrdiff_t>(j))
        out << ",,";
      else
        out << "," << format_double(hit->mean_return) << "," << format_double(hit->std_error);
    }
    out << "\n";
    i = j;
  }
}

}  // namespace sgat::harness
