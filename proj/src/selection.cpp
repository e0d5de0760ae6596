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

#include "rbiu/selection.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rbiu {

namespace {

void require_optimal(const RobustSolution& robust, const BlpInstance& inst,
                     const UncertaintyPartition& part) {
  if (!robust.optimal()) throw std::invalid_argument("robust solution is not optimal");
  if (robust.x_star.size() != inst.num_vars() || part.num_vars() != inst.num_vars()) {
    throw DimensionError("robust solution does not match instance");
  }
}

// Deterministic model with x_C fixed to x*_C by bounds; rhs optionally shifted.
std::optional<BinarySolution> best_completion(const BlpInstance& inst,
                                              const UncertaintyPartition& part,
                                              const RobustSolution& robust,
                                              const std::vector<double>* delta,
                                              int selection_problem,
                                              const MilpOptions& options) {
  require_optimal(robust, inst, part);
  std::vector<double> rhs(inst.rhs().begin(), inst.rhs().end());
  if (delta) {
    for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += (*delta)[j];
  }
  const BlpInstance shifted(std::vector<double>(inst.costs().begin(), inst.costs().end()),
                            inst.matrix(), std::move(rhs), inst.sense());
  MilpModel model = build_deterministic(shifted);
  model.set_selection_problem(selection_problem);
  for (std::size_t i : part.deterministic()) model.fix_source(i, robust.x_star[i]);

  const MilpResult res = solve_exact(model, options);
  if (res.status == SolveStatus::kInfeasible) return std::nullopt;
  if (res.status != SolveStatus::kOptimal) {
    throw std::runtime_error(std::string("selection solve ended ") + to_string(res.status));
  }
  BinarySolution out(inst.num_vars());
  for (std::size_t k = 0; k < model.num_vars(); ++k) {
    const auto& v = model.variables()[k];
    if (v.source_index) out.set(*v.source_index, std::round(res.values[k]) != 0.0);
  }
  return out;
}

BinarySolution closed_form(const RobustSolution& robust, const BlpInstance& inst,
                           const UncertaintyPartition& part, bool upper) {
  require_optimal(robust, inst, part);
  BinarySolution out = robust.x_star;
  for (std::size_t i : part.uncertain()) {
    const bool nonneg = inst.costs()[i] >= 0.0;
    out.set(i, upper ? nonneg : !nonneg);
  }
  return out;
}

}  // namespace

const char* to_string(Selector s) {
  switch (s) {
    case Selector::kDeterministic:
      return "deterministic";
    case Selector::kRelaxed:
      return "relaxed";
    case Selector::kUpperBound:
      return "upper-bound";
    case Selector::kLowerBound:
      return "lower-bound";
  }
  return "unknown";
}

std::optional<Selector> parse_selector(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (Selector sel : {Selector::kDeterministic, Selector::kRelaxed,
                       Selector::kUpperBound, Selector::kLowerBound}) {
    if (s == to_string(sel) || s == "sp" + std::to_string(static_cast<int>(sel))) {
      return sel;
    }
  }
  return std::nullopt;
}

std::optional<BinarySolution> select_deterministic(const BlpInstance& inst,
                                                   const UncertaintyPartition& part,
                                                   const RobustSolution& robust,
                                                   const MilpOptions& options) {
  return best_completion(inst, part, robust, nullptr, 1, options);
}

std::optional<BinarySolution> select_relaxed(const BlpInstance& inst,
                                             const UncertaintyPartition& part,
                                             const RobustSolution& robust,
                                             const RobustConfig& cfg,
                                             const MilpOptions& options) {
  cfg.validate(inst, part);
  return best_completion(inst, part, robust, &cfg.delta, 2, options);
}

BinarySolution select_upper_bound(const RobustSolution& robust, const BlpInstance& inst,
                                  const UncertaintyPartition& part) {
  return closed_form(robust, inst, part, true);
}

BinarySolution select_lower_bound(const RobustSolution& robust, const BlpInstance& inst,
                                  const UncertaintyPartition& part) {
  return closed_form(robust, inst, part, false);
}

std::optional<BinarySolution> select(Selector which, const BlpInstance& inst,
                                     const UncertaintyPartition& part,
                                     const RobustSolution& robust,
                                     const RobustConfig& cfg,
                                     const MilpOptions& options) {
  switch (which) {
    case Selector::kDeterministic:
      return select_deterministic(inst, part, robust, options);
    case Selector::kRelaxed:
      return select_relaxed(inst, part, robust, cfg, options);
    case Selector::kUpperBound:
      return select_upper_bound(robust, inst, part);
    case Selector::kLowerBound:
      return select_lower_bound(robust, inst, part);
  }
  throw std::invalid_argument("unknown selector");
}

}  // namespace rbiu
