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

#include "rbiu/simulation.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace rbiu {

const char* to_string(SimMode m) {
  return m == SimMode::kEnumerated ? "enumerated" : "sampled";
}

double objective_ratio(const BinarySolution& x, const BlpInstance& inst,
                       double reference_optimum) {
  if (reference_optimum == 0.0) throw std::domain_error("reference optimum is zero");
  return 1.0 - evaluate_objective(inst, x) / reference_optimum;
}

double violation_level(const BinarySolution& x, const BlpInstance& inst,
                       ViolationMode mode) {
  const auto lhs = evaluate_constraints(inst, x);
  double worst = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    const double b = inst.rhs()[j];
    double excess = std::max(lhs[j] - b, 0.0);
    if (mode == ViolationMode::kRelative) {
      if (b <= 0.0) {
        throw std::domain_error("relative violation needs b_j > 0 (row " +
                                std::to_string(j + 1) + ")");
      }
      excess /= b;
    }
    worst = std::max(worst, excess);
  }
  return worst;
}

SimReport simulate(const BlpInstance& inst, const BinarySolution& x,
                   const std::vector<std::size_t>& sim_uncertain,
                   double reference_optimum, std::uint64_t seed) {
  if (x.size() != inst.num_vars()) throw DimensionError("solution size does not match instance");
  if (sim_uncertain.empty()) throw std::invalid_argument("simulated index set is empty");
  if (inst.sense() == Sense::kMaximize ? reference_optimum <= 0.0 : reference_optimum == 0.0) {
    throw std::domain_error("degenerate reference optimum");
  }
  const UncertaintyPartition part(inst.num_vars(), sim_uncertain);

  SimReport r;
  r.reference_optimum = reference_optimum;
  r.single_ratio = objective_ratio(x, inst, reference_optimum);
  r.violation_absolute =
      std::any_of(inst.rhs().begin(), inst.rhs().end(), [](double b) { return b <= 0.0; });
  r.violation = violation_level(
      x, inst, r.violation_absolute ? ViolationMode::kAbsolute : ViolationMode::kRelative);

  double total = 0.0;
  auto visit = [&](const BinarySolution& y) {
    total += evaluate_objective(inst, y);
    if (is_deterministic_feasible(inst, y)) ++r.feasible;
    ++r.trials;
  };

  if (part.uncertain().size() <= kEnumerationThreshold) {
    r.mode = SimMode::kEnumerated;
    for_each_outcome(x, part, visit);
  } else {
    r.mode = SimMode::kSampled;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    BinarySolution y = x;
    for (std::size_t t = 0; t < kSampleSize; ++t) {
      for (std::size_t i : part.uncertain()) y.set(i, coin(rng));
      visit(y);
    }
  }

  const double count = static_cast<double>(r.trials);
  r.mean_objective = total / count;
  r.feasibility_level = static_cast<double>(r.feasible) / count;
  r.mean_objective_ratio = 1.0 - total / (reference_optimum * count);
  r.difference_form = reference_optimum - r.mean_objective;
  return r;
}

}  // namespace rbiu
