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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rbiu/milp_model.hpp"

namespace rbiu {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kNodeLimit };

const char* to_string(SolveStatus s);

struct Tolerances {
  double primal = 1e-7;
  double reduced_cost = 1e-9;
  double integrality = 1e-6;
  double pivot = 1e-11;
};

struct LpSolution {
  std::vector<double> values;
  double objective = 0.0;  // includes the model's objective offset
  SolveStatus status = SolveStatus::kInfeasible;
  std::size_t iterations = 0;
};

struct SolveStats {
  std::size_t nodes_explored = 0;
  std::size_t lp_iterations = 0;
  std::chrono::duration<double> wall_time{0};
  double gap = 0.0;
};

struct MilpOptions {
  std::size_t node_limit = 2'000'000;
  Tolerances tolerances;
  // Node log, one line per `log_every` nodes. Disabled when null.
  std::ostream* log = nullptr;
  std::size_t log_every = 1000;
};

struct MilpResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;  // best incumbent, if any
  double objective = kInfinity;
  SolveStats stats;
};

// LP relaxation of the model (binaries relaxed to their bounds within [0,1]).
LpSolution solve_lp(const MilpModel& model, const Tolerances& tol = {});

// Same, with per-variable bound overrides (used by branch-and-bound).
LpSolution solve_lp(const MilpModel& model, std::span<const double> lower,
                    std::span<const double> upper, const Tolerances& tol = {});

// Best-bound branch-and-bound over the binaries. Branches on the most
// fractional binary (lowest index on ties); open nodes are ordered by LP
// bound, then depth (deeper first), then creation order.
MilpResult solve_milp(const MilpModel& model, const MilpOptions& options = {});

struct KnapsackResult {
  std::int64_t value = 0;
  std::vector<std::uint8_t> selection;
};

// Exact 0/1 knapsack by dynamic programming over capacities. Among optimal
// selections returns the one whose sorted index list is lexicographically
// smallest (an item is taken at the first index where optima differ).
// Throws std::length_error when the n x capacity table exceeds its budget.
KnapsackResult solve_knapsack_dp(std::span<const std::int64_t> profits,
                                 std::span<const std::int64_t> weights,
                                 std::int64_t capacity);

// Floors a real capacity; exact because attainable integer weights are
// integers. Returns nullopt for a negative capacity.
std::optional<std::int64_t> floor_capacity(double capacity);

// Exact solve that routes pure integer knapsack models (one row, binaries
// only, nonnegative integer weights, nonpositive integer costs) to the DP and
// everything else to branch-and-bound.
MilpResult solve_exact(const MilpModel& model, const MilpOptions& options = {});

}  // namespace rbiu
