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

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbiu/solver.hpp"

namespace rbiu {

namespace {

constexpr std::size_t kDpCellBudget = 25'000'000;

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

std::optional<std::int64_t> floor_capacity(double capacity) {
  if (capacity < 0.0) return std::nullopt;
  return static_cast<std::int64_t>(std::floor(capacity + 1e-9));
}

KnapsackResult solve_knapsack_dp(std::span<const std::int64_t> profits,
                                 std::span<const std::int64_t> weights,
                                 std::int64_t capacity) {
  const std::size_t n = profits.size();
  if (weights.size() != n) {
    throw std::invalid_argument("profits and weights differ in length");
  }
  if (capacity < 0) throw std::invalid_argument("capacity must be >= 0");
  for (std::size_t i = 0; i < n; ++i) {
    if (profits[i] < 0 || weights[i] < 0) {
      throw std::invalid_argument("knapsack data must be nonnegative");
    }
  }
  const std::size_t width = static_cast<std::size_t>(capacity) + 1;
  if ((n + 1) > kDpCellBudget / width) {
    throw std::length_error("knapsack table of " + std::to_string(n + 1) + " x " +
                            std::to_string(width) + " exceeds the DP budget");
  }

  // best[i][w]: optimum over items i..n-1 with capacity w. Suffix order lets
  // the forward reconstruction prefer taking the earliest item on ties.
  std::vector<std::int64_t> best((n + 1) * width, 0);
  for (std::size_t i = n; i-- > 0;) {
    const std::int64_t* next = &best[(i + 1) * width];
    std::int64_t* cur = &best[i * width];
    const auto wi = weights[i];
    for (std::size_t w = 0; w < width; ++w) {
      std::int64_t v = next[w];
      if (wi <= static_cast<std::int64_t>(w)) {
        v = std::max(v, next[w - static_cast<std::size_t>(wi)] + profits[i]);
      }
      cur[w] = v;
    }
  }

  KnapsackResult result;
  result.value = best[static_cast<std::size_t>(capacity)];
  result.selection.assign(n, 0);
  std::size_t w = static_cast<std::size_t>(capacity);
  for (std::size_t i = 0; i < n; ++i) {
    const auto wi = weights[i];
    if (wi <= static_cast<std::int64_t>(w) &&
        best[(i + 1) * width + w - static_cast<std::size_t>(wi)] + profits[i] ==
            best[i * width + w]) {
      result.selection[i] = 1;
      w -= static_cast<std::size_t>(wi);
    }
  }
  return result;
}

MilpResult solve_exact(const MilpModel& model, const MilpOptions& options) {
  const auto& vars = model.variables();
  bool knapsack = model.rows().size() == 1;
  for (std::size_t j = 0; knapsack && j < vars.size(); ++j) {
    knapsack = vars[j].type == VarType::kBinary && is_integer(model.objective()[j]) &&
               model.objective()[j] <= 0.0;
  }
  if (knapsack) {
    std::vector<double> weight(vars.size(), 0.0);
    for (const auto& t : model.rows()[0].terms) weight[t.var] += t.coef;
    for (double w : weight) knapsack = knapsack && is_integer(w) && w >= 0.0;
  }
  if (!knapsack) return solve_milp(model, options);

  const auto start = std::chrono::steady_clock::now();
  std::vector<double> weight(vars.size(), 0.0);
  for (const auto& t : model.rows()[0].terms) weight[t.var] += t.coef;

  // Fixed binaries are folded into the capacity; the rest go to the DP.
  double capacity = model.rows()[0].rhs;
  std::vector<std::size_t> free_vars;
  std::vector<double> values(vars.size(), 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].lower == vars[j].upper) {
      values[j] = vars[j].lower;
      capacity -= weight[j] * values[j];
    } else {
      free_vars.push_back(j);
    }
  }

  MilpResult result;
  result.stats.nodes_explored = 1;
  const auto cap = floor_capacity(capacity);
  if (!cap) {
    result.status = SolveStatus::kInfeasible;
    result.stats.wall_time = std::chrono::steady_clock::now() - start;
    return result;
  }
  std::vector<std::int64_t> p, w;
  for (std::size_t j : free_vars) {
    p.push_back(static_cast<std::int64_t>(-model.objective()[j]));
    w.push_back(static_cast<std::int64_t>(weight[j]));
  }
  const auto kp = solve_knapsack_dp(p, w, *cap);
  for (std::size_t k = 0; k < free_vars.size(); ++k) {
    values[free_vars[k]] = kp.selection[k];
  }
  double obj = model.objective_offset();
  for (std::size_t j = 0; j < vars.size(); ++j) obj += model.objective()[j] * values[j];
  result.status = SolveStatus::kOptimal;
  result.values = std::move(values);
  result.objective = obj;
  result.stats.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace rbiu
