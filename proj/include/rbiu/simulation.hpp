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
#include <vector>

#include "rbiu/instance.hpp"

namespace rbiu {

// Outcome sets up to this size are enumerated; larger ones are sampled.
inline constexpr std::size_t kEnumerationThreshold = 10;
inline constexpr std::size_t kSampleSize = 1024;

enum class SimMode { kEnumerated, kSampled };
const char* to_string(SimMode m);

enum class ViolationMode { kRelative, kAbsolute };

struct SimReport {
  double mean_objective_ratio = 0.0;  // Δ̄ (ratio form)
  double feasibility_level = 0.0;     // h, feasibility against the original b
  double single_ratio = 0.0;          // Δ of the prescribed x
  double violation = 0.0;             // F of the prescribed x
  bool violation_absolute = false;    // F reported in absolute units
  SimMode mode = SimMode::kEnumerated;
  std::uint64_t seed = 0;             // meaningful when sampled
  std::size_t trials = 0;             // outcomes evaluated
  std::size_t feasible = 0;
  double mean_objective = 0.0;
  double reference_optimum = 0.0;
  double difference_form = 0.0;       // f* - mean objective, debug only
};

// 1 - f(x)/f*. Throws on a zero reference.
double objective_ratio(const BinarySolution& x, const BlpInstance& inst,
                       double reference_optimum);

// max_j max(g_j(x) - b_j, 0), divided by b_j in relative mode. Relative mode
// throws when some b_j <= 0.
double violation_level(const BinarySolution& x, const BlpInstance& inst,
                       ViolationMode mode = ViolationMode::kRelative);

// Evaluates x under implementation uncertainty on the index set U_S (0-based).
// |U_S| <= 10: every outcome agreeing with x off U_S. Otherwise kSampleSize
// independent draws with each coordinate of U_S set by a fair coin, so the
// draws do not depend on x_{U_S}.
SimReport simulate(const BlpInstance& inst, const BinarySolution& x,
                   const std::vector<std::size_t>& sim_uncertain,
                   double reference_optimum, std::uint64_t seed);

}  // namespace rbiu
