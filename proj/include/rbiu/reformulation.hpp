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
#include <vector>

#include "rbiu/instance.hpp"
#include "rbiu/linearizer.hpp"
#include "rbiu/milp_model.hpp"
#include "rbiu/solver.hpp"

namespace rbiu {

// One representative x* of the robust-optimal set U(x*) and its objective
// robustness level gamma, reported in the instance's native sense (for a
// maximization gamma is the guaranteed worst-case objective).
struct RobustSolution {
  BinarySolution x_star;
  double gamma = 0.0;
  Provenance provenance = Provenance::kRbiuDelta;
  SolveStatus status = SolveStatus::kInfeasible;
  SolveStats stats;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

// The deterministic BLP over all n binaries, in minimization form.
MilpModel build_deterministic(const BlpInstance& inst);

// Worst-case linearized model over the deterministic variables only:
//   min  sum_C c_i x_i + K_obj
//   s.t. sum_C a_ij x_i <= b_j + delta_j - K_j
// with K_obj = sum_U max(c_i,0) and K_j = sum_U max(a_ij,0), after negating
// c for maximization instances. Throws when U is empty.
MilpModel build_rbiu_delta(const BlpInstance& inst,
                           const UncertaintyPartition& part,
                           const RobustConfig& cfg);

// Knapsack over C with capacity b' = b + delta - sum_U a_i. Requires one row,
// a maximization instance and nonnegative data. A negative b' leaves the
// model infeasible.
MilpModel build_reduced_knapsack(const BlpInstance& inst,
                                 const UncertaintyPartition& part, double delta);

// Linear reformulation of the cardinality-constrained model: n binaries, the
// free u_00/u_0j, the nonnegative v_0, v_j, u_i0, u_ij, and an epigraph
// variable gamma that is minimized.
MilpModel build_rbiu_delta_cc(const BlpInstance& inst,
                              const UncertaintyPartition& part,
                              const RobustConfig& cfg);

// Knapsack specialization of the above (one row, maximization).
MilpModel build_rkp_delta_cc(const BlpInstance& inst,
                             const UncertaintyPartition& part, double delta,
                             std::size_t gamma);

// Solves a model built above and maps it back to the instance. For models
// over C only, uncertain coordinates of x* are set to 0.
RobustSolution solve_robust(const MilpModel& model, const BlpInstance& inst,
                            const UncertaintyPartition& part,
                            const MilpOptions& options = {});

// U(x*). Only for RBIU-delta provenance is every member optimal; for the
// cardinality-constrained model this is the outcome set of x*.
std::vector<BinarySolution> expand_robust_set(const RobustSolution& sol,
                                              const UncertaintyPartition& part);

// Solves the dualized protection rows for one target at a fixed x as an LP
// (same row generator as build_rbiu_delta_cc). Coefficients are taken as
// stored; no sense flip.
double cc_protection_lp_value(const BlpInstance& inst,
                              const UncertaintyPartition& part,
                              const BinarySolution& x, std::size_t gamma,
                              Target target);

}  // namespace rbiu
