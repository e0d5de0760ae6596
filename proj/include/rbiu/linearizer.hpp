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
#include <optional>
#include <span>
#include <vector>

#include "rbiu/instance.hpp"

namespace rbiu {

// Selects the linear expression a worst case is taken over: the objective
// c'x or the left-hand side of constraint row j.
class Target {
 public:
  static Target objective() { return Target(std::nullopt); }
  static Target row(std::size_t j) { return Target(j); }

  bool is_objective() const { return !row_; }
  std::size_t row_index() const { return *row_; }
  std::span<const double> coefficients(const BlpInstance& inst) const;

 private:
  explicit Target(std::optional<std::size_t> row) : row_(row) {}
  std::optional<std::size_t> row_;
};

// Assignment of the deterministic block; uncertain entries may be left unset.
using PartialAssignment = std::vector<std::optional<std::uint8_t>>;

PartialAssignment deterministic_part(const BinarySolution& x,
                                     const UncertaintyPartition& part);

// (v + |v|)/2, computed as max(v, 0).
inline double positive_part(double v) { return v > 0.0 ? v : 0.0; }

// Closed-form max over U(x) of the raw linear expression (no sense flip):
//   sum_{i in C} coef_i x_i + sum_{i in U} max(coef_i, 0).
// Callers that need the worst case of a maximization negate coefficients.
// Throws when a deterministic index is unassigned.
double worst_case_linear(std::span<const double> coeffs,
                         const UncertaintyPartition& part,
                         const PartialAssignment& x_c);

double worst_case_objective_linear(const BlpInstance& inst,
                                   const UncertaintyPartition& part,
                                   const PartialAssignment& x_c);
double worst_case_constraint_linear(const BlpInstance& inst,
                                    const UncertaintyPartition& part,
                                    std::size_t j, const PartialAssignment& x_c);

// Oracle: max over every y in U(x) of the target expression by enumeration.
double brute_force_worst_case(const BlpInstance& inst,
                              const UncertaintyPartition& part,
                              const BinarySolution& x, Target target);

// Oracle for the cardinality-constrained protection: enumerates all S in U
// with |S| <= gamma and returns
//   sum_C coef_i x_i + max_S [ sum_{S} max(coef_i,0) + sum_{U\S} coef_i x_i ].
// gamma = 0 is accepted and yields the nominal value.
double brute_force_cc_protection(const BlpInstance& inst,
                                 const UncertaintyPartition& part,
                                 const BinarySolution& x, std::size_t gamma,
                                 Target target);

}  // namespace rbiu
