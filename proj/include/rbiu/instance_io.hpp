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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include "rbiu/instance.hpp"

namespace rbiu {

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON document:
//   {"n": 10, "m": 1, "sense": "max"|"min", "c": [...], "a": [[...], ...],
//    "b": [...], "uncertain": [1-based indices]}
// n and m are optional on input but must match the arrays when present.
std::string instance_to_json(const BlpInstance& inst, const UncertaintyPartition& part);
std::pair<BlpInstance, UncertaintyPartition> instance_from_json(const std::string& text);

void save_instance(const BlpInstance& inst, const UncertaintyPartition& part,
                   const std::filesystem::path& path);
std::pair<BlpInstance, UncertaintyPartition> load_instance(const std::filesystem::path& path);

// The worked ten-project knapsack (budget 26, projects 1 and 2 uncertain).
std::pair<BlpInstance, UncertaintyPartition> illustrative_instance();

}  // namespace rbiu
