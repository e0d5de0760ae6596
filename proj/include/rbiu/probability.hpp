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

#include "rbiu/instance.hpp"
#include "rbiu/reformulation.hpp"

namespace rbiu {

// Homogeneous flip model over the uncertain variables of a prescribed x:
// u0 of them are prescribed 0 and stay 0 with probability p, u1 are
// prescribed 1 and stay 1 with probability q.
struct FlipModel {
  std::size_t u0 = 0;
  std::size_t u1 = 0;
  double p = 0.5;
  double q = 0.5;

  std::size_t total() const { return u0 + u1; }
  void validate() const;

  static FlipModel from_solution(const BinarySolution& x,
                                 const UncertaintyPartition& part, double p,
                                 double q);
};

// C(n, k) as a double: exact integer arithmetic up to n = 30, log-gamma above.
double binomial_coefficient(std::size_t n, std::size_t k);

// P(eta0 + eta1 = k), the convolution of Bin(u0, 1-p) and Bin(u1, 1-q).
double pmf_exact_flips(const FlipModel& fm, std::size_t k);

// 1 - P(eta0 + eta1 <= gamma), clamped to [0, 1]. Exactly 0 when gamma
// covers every uncertain variable.
double infeasibility_upper_bound(const FlipModel& fm, std::size_t gamma);

struct ViolationEstimate {
  double rate = 0.0;
  std::size_t violations = 0;
  std::size_t trials = 0;
};

// Monte Carlo estimate of the probability that an implemented outcome of x*
// has an objective worse than gamma(x*) or violates some row beyond
// b_j + delta_j (both strict, beyond kFeasibilityTolerance). Trials are
// split into fixed-size chunks with derived seeds, so the estimate does not
// depend on `workers`.
ViolationEstimate empirical_violation_rate(const RobustSolution& sol,
                                           const BlpInstance& inst,
                                           const UncertaintyPartition& part,
                                           const RobustConfig& cfg,
                                           const FlipModel& fm,
                                           std::size_t trials, std::uint64_t seed,
                                           std::size_t workers = 1);

}  // namespace rbiu
