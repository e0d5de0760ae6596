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

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>
#include <vector>

#include "rbiu/solver.hpp"

namespace rbiu {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kNodeLimit:
      return "node-limit";
  }
  return "unknown";
}

namespace {

struct Node {
  double bound;
  std::size_t depth;
  std::size_t id;
  std::size_t branch_var;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const MilpOptions& options)
      : model_(model), opt_(options) {
    for (std::size_t j = 0; j < model.num_vars(); ++j) {
      if (model.variables()[j].type == VarType::kBinary) binaries_.push_back(j);
    }
  }

  MilpResult run() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> lower(model_.num_vars()), upper(model_.num_vars());
    for (std::size_t j = 0; j < model_.num_vars(); ++j) {
      lower[j] = model_.variables()[j].lower;
      upper[j] = model_.variables()[j].upper;
    }

    bool unbounded = false;
    evaluate(std::move(lower), std::move(upper), 0, &unbounded);
    bool hit_limit = false;
    while (!open_.empty() && !unbounded) {
      Node node = open_.top();
      open_.pop();
      if (prunable(node.bound)) continue;
      if (result_.stats.nodes_explored + 2 > opt_.node_limit) {
        open_.push(std::move(node));
        hit_limit = true;
        break;
      }
      const std::size_t k = node.branch_var;
      for (double v : {0.0, 1.0}) {
        auto lo = node.lower;
        auto up = node.upper;
        lo[k] = v;
        up[k] = v;
        evaluate(std::move(lo), std::move(up), node.depth + 1, &unbounded);
        if (unbounded) break;
      }
      log_progress();
    }

    if (unbounded) {
      result_.status = SolveStatus::kUnbounded;
      result_.values.clear();
      result_.objective = -kInfinity;
    } else if (hit_limit) {
      result_.status = SolveStatus::kNodeLimit;
      double best_open = kInfinity;
      for (auto q = open_; !q.empty(); q.pop()) best_open = std::min(best_open, q.top().bound);
      result_.stats.gap = has_incumbent_ ? std::max(0.0, result_.objective - best_open)
                                         : kInfinity;
    } else {
      result_.status = has_incumbent_ ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      result_.stats.gap = 0.0;
    }
    result_.stats.wall_time = std::chrono::steady_clock::now() - start;
    return result_;
  }

 private:
  bool prunable(double bound) const {
    if (!has_incumbent_) return false;
    const double inc = result_.objective;
    if (model_.integral_objective()) {
      return bound > inc - 1.0 + opt_.tolerances.integrality;
    }
    return bound >= inc - 1e-6 * std::max(1.0, std::abs(inc));
  }

  void evaluate(std::vector<double> lower, std::vector<double> upper,
                std::size_t depth, bool* unbounded) {
    ++result_.stats.nodes_explored;
    LpSolution lp = solve_lp(model_, lower, upper, opt_.tolerances);
    result_.stats.lp_iterations += lp.iterations;
    if (lp.status == SolveStatus::kInfeasible) return;
    if (lp.status == SolveStatus::kUnbounded) {
      *unbounded = true;
      return;
    }
    if (prunable(lp.objective)) return;

    std::size_t branch = model_.num_vars();
    double best_frac = opt_.tolerances.integrality;
    for (std::size_t j : binaries_) {
      const double v = lp.values[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch == model_.num_vars()) {
      accept_integral(lp, lower, upper);
      return;
    }
    open_.push(Node{lp.objective, depth, next_id_++, branch, std::move(lower),
                    std::move(upper)});
  }

  // Fixes the binaries at their rounded values and re-solves so the
  // continuous part of the incumbent is exact.
  void accept_integral(const LpSolution& lp, std::vector<double> lower,
                       std::vector<double> upper) {
    for (std::size_t j : binaries_) {
      const double v = std::round(lp.values[j]);
      lower[j] = v;
      upper[j] = v;
    }
    LpSolution fixed = solve_lp(model_, lower, upper, opt_.tolerances);
    result_.stats.lp_iterations += fixed.iterations;
    const LpSolution& use = fixed.status == SolveStatus::kOptimal ? fixed : lp;
    if (has_incumbent_ && use.objective >= result_.objective) return;
    has_incumbent_ = true;
    result_.objective = use.objective;
    result_.values = use.values;
    for (std::size_t j : binaries_) result_.values[j] = std::round(lp.values[j]);
    if (opt_.log) {
      *opt_.log << "incumbent " << result_.objective << " at node "
                << result_.stats.nodes_explored << "\n";
    }
  }

  void log_progress() {
    if (!opt_.log || opt_.log_every == 0) return;
    if (result_.stats.nodes_explored % opt_.log_every > 1) return;
    *opt_.log << "nodes " << result_.stats.nodes_explored << " open "
              << open_.size() << " bound "
              << (open_.empty() ? result_.objective : open_.top().bound)
              << " incumbent "
              << (has_incumbent_ ? result_.objective : kInfinity) << "\n";
  }

  const MilpModel& model_;
  MilpOptions opt_;
  std::vector<std::size_t> binaries_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::size_t next_id_ = 0;
  bool has_incumbent_ = false;
  MilpResult result_;
};

}  // namespace

MilpResult solve_milp(const MilpModel& model, const MilpOptions& options) {
  return BranchAndBound(model, options).run();
}

}  // namespace rbiu
