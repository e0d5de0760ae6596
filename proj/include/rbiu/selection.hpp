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

#include <optional>
#include <string_view>

#include "rbiu/instance.hpp"
#include "rbiu/reformulation.hpp"

namespace rbiu {

// Selection problems over U(x*). Applied to an RBIU-delta set they are
// SP1..SP4; applied to an RBIU-delta-CC set they are SP5..SP8.
enum class Selector { kDeterministic = 1, kRelaxed = 2, kUpperBound = 3, kLowerBound = 4 };

const char* to_string(Selector s);
// Accepts "sp1".."sp4" (case-insensitive) or the names returned by to_string.
std::optional<Selector> parse_selector(std::string_view text);

// SP1: best completion of x*_C that satisfies the original rows g_j <= b_j.
// std::nullopt when no completion is deterministic-feasible.
std::optional<BinarySolution> select_deterministic(const BlpInstance& inst,
                                                   const UncertaintyPartition& part,
                                                   const RobustSolution& robust,
                                                   const MilpOptions& options = {});

// SP2: as SP1 with right-hand sides b_j + delta_j.
std::optional<BinarySolution> select_relaxed(const BlpInstance& inst,
                                             const UncertaintyPartition& part,
                                             const RobustSolution& robust,
                                             const RobustConfig& cfg,
                                             const MilpOptions& options = {});

// SP3: member with the largest raw objective c'x (x_i = 1 iff c_i >= 0 on U).
BinarySolution select_upper_bound(const RobustSolution& robust,
                                  const BlpInstance& inst,
                                  const UncertaintyPartition& part);

// SP4: member with the smallest raw objective (x_i = 1 iff c_i < 0 on U).
BinarySolution select_lower_bound(const RobustSolution& robust,
                                  const BlpInstance& inst,
                                  const UncertaintyPartition& part);

std::optional<BinarySolution> select(Selector which, const BlpInstance& inst,
                                     const UncertaintyPartition& part,
                                     const RobustSolution& robust,
                                     const RobustConfig& cfg,
                                     const MilpOptions& options = {});

}  // namespace rbiu
