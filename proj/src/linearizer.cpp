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

#include "rbiu/linearizer.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace rbiu {

namespace {

void check_enumerable(const UncertaintyPartition& part) {
  if (part.uncertain().size() > kMaxEnumeratedUncertain) {
    throw std::length_error("|U| = " + std::to_string(part.uncertain().size()) +
                            " exceeds the enumeration cap");
  }
}

}  // namespace

std::span<const double> Target::coefficients(const BlpInstance& inst) const {
  if (is_objective()) return inst.costs();
  if (*row_ >= inst.num_rows()) {
    throw std::out_of_range("row " + std::to_string(*row_) + " out of range");
  }
  return inst.row(*row_);
}

PartialAssignment deterministic_part(const BinarySolution& x,
                                     const UncertaintyPartition& part) {
  if (x.size() != part.num_vars()) {
    throw DimensionError("solution size does not match partition");
  }
  PartialAssignment out(x.size());
  for (std::size_t i : part.deterministic()) out[i] = x[i];
  return out;
}

double worst_case_linear(std::span<const double> coeffs,
                         const UncertaintyPartition& part,
                         const PartialAssignment& x_c) {
  if (coeffs.size() != part.num_vars() || x_c.size() != part.num_vars()) {
    throw DimensionError("coefficient/assignment size does not match partition");
  }
  double value = 0.0;
  for (std::size_t i : part.deterministic()) {
    if (!x_c[i]) {
      throw std::invalid_argument("deterministic index " + std::to_string(i) +
                                  " is unassigned");
    }
    if (*x_c[i]) value += coeffs[i];
  }
  for (std::size_t i : part.uncertain()) value += positive_part(coeffs[i]);
  return value;
}

double worst_case_objective_linear(const BlpInstance& inst,
                                   const UncertaintyPartition& part,
                                   const PartialAssignment& x_c) {
  return worst_case_linear(inst.costs(), part, x_c);
}

double worst_case_constraint_linear(const BlpInstance& inst,
                                    const UncertaintyPartition& part,
                                    std::size_t j, const PartialAssignment& x_c) {
  return worst_case_linear(Target::row(j).coefficients(inst), part, x_c);
}

double brute_force_worst_case(const BlpInstance& inst,
                              const UncertaintyPartition& part,
                              const BinarySolution& x, Target target) {
  check_enumerable(part);
  const auto coeffs = target.coefficients(inst);
  double best = -std::numeric_limits<double>::infinity();
  for_each_outcome(x, part, [&](const BinarySolution& y) {
    double v = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i]) v += coeffs[i];
    }
    best = std::max(best, v);
  });
  return best;
}

double brute_force_cc_protection(const BlpInstance& inst,
                                 const UncertaintyPartition& part,
                                 const BinarySolution& x, std::size_t gamma,
                                 Target target) {
  check_enumerable(part);
  if (x.size() != inst.num_vars()) {
    throw DimensionError("solution size does not match instance");
  }
  const auto coeffs = target.coefficients(inst);
  const auto& u = part.uncertain();

  double deterministic = 0.0;
  for (std::size_t i : part.deterministic()) {
    if (x[i]) deterministic += coeffs[i];
  }

  double best = -std::numeric_limits<double>::infinity();
  const std::uint32_t total = std::uint32_t{1} << u.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > gamma) continue;
    double v = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) {
      const std::size_t i = u[t];
      if ((mask >> t) & 1U) {
        v += positive_part(coeffs[i]);
      } else if (x[i]) {
        v += coeffs[i];
      }
    }
    best = std::max(best, v);
  }
  return deterministic + best;
}

}  // namespace rbiu
