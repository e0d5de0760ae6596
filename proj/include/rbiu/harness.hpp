// Copyright 2026 The RBIU Authors.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbiu/instance.hpp"

namespace rbiu {

enum class Study { kDeltaSweep, kDeltaCCSweep, kSelectionStudy, kBoundStudy };
const char* to_string(Study s);  // "delta", "cc", "selection", "bound"
std::optional<Study> parse_study(std::string_view text);

struct IntRange {
  int lo = 0;
  int hi = 0;
};

struct ExperimentPlan {
  Study study = Study::kDeltaSweep;
  std::size_t replications = 3;
  std::size_t n = 100;
  IntRange cost_range{21, 80};
  IntRange weight_range{41, 60};
  double capacity_fraction = 0.5;
  std::vector<double> u_grid;
  std::vector<double> delta_grid;  // fractions of b
  std::vector<double> p_grid;      // conservatism Γ/|U|
  std::uint64_t seed = 1;
  double flip_p = 0.5;             // bound study: P(prescribed 0 stays 0)
  double flip_q = 0.5;             // bound study: P(prescribed 1 stays 1)
  std::size_t bound_trials = 10000;
  std::size_t workers = 1;

  // Grids of the knapsack study for the given study kind.
  static ExperimentPlan defaults(Study study);
  void validate() const;
};

// Number of uncertain variables: round(u n), at least 1.
std::size_t uncertain_count(double u, std::size_t n);
// round(p |U|) clamped to [1, |U|].
std::size_t gamma_for(double p, std::size_t num_uncertain);

// Knapsack instance for one replication (independent of u); uncertain set is
// the first uncertain_count(u, n) indices.
BlpInstance generate_instance(const ExperimentPlan& plan, std::size_t replication);
std::pair<BlpInstance, UncertaintyPartition> generate_instance(const ExperimentPlan& plan,
                                                               std::size_t replication,
                                                               double u);

// NaN marks a field that does not apply to the row's kind.
struct ResultRow {
  std::string study;
  std::size_t replication = 0;
  double u = 0.0;
  std::size_t num_uncertain = 0;
  double delta_fraction = 0.0;
  double delta = 0.0;
  double conservatism = 0.0;
  std::size_t gamma_cap = 0;
  std::string kind;    // baseline, robust, sp1..sp8
  std::string source;  // deterministic, rbiu-delta, rbiu-delta-cc
  std::string status;  // optimal, infeasible, not-found, node-limit
  double objective = 0.0;
  double robust_level = 0.0;
  double single_ratio = 0.0;
  double violation = 0.0;
  double mean_ratio = 0.0;
  double feasibility = 0.0;
  std::string sim_mode;
  double theoretical = 0.0;
  double empirical = 0.0;
  double difference = 0.0;

  // Field-wise equality that treats NaN == NaN and compares doubles bitwise.
  bool same_as(const ResultRow& other) const;
};

using ResultsTable = std::vector<ResultRow>;

inline constexpr int kResultsSchemaVersion = 1;
const std::vector<std::string>& result_columns();

class ResultsParseError : public std::runtime_error {
 public:
  ResultsParseError(const std::string& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string format_results(const ResultsTable& table);
ResultsTable parse_results(std::string_view text, const std::string& source = "<memory>");
void write_results(const ResultsTable& table, const std::filesystem::path& path);
ResultsTable read_results(const std::filesystem::path& path);

ResultsTable run_delta_sweep(const ExperimentPlan& plan);
ResultsTable run_delta_cc_sweep(const ExperimentPlan& plan);
ResultsTable run_selection_study(const ExperimentPlan& plan);
ResultsTable run_bound_study(const ExperimentPlan& plan);
ResultsTable run_study(const ExperimentPlan& plan);

// Worker count from RBIU_WORKERS (>= 1); fallback when unset or invalid.
std::size_t workers_from_env(std::size_t fallback = 1);

}  // namespace rbiu
