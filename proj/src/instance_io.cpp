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

#include "rbiu/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rbiu {

namespace {

using nlohmann::json;

std::vector<double> numbers(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw InstanceFormatError(std::string("missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number()) throw InstanceFormatError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

// Optional declared sizes must agree with the arrays.
void check_count(const json& doc, const char* key, std::size_t actual) {
  if (!doc.contains(key)) return;
  if (!doc[key].is_number_unsigned() || doc[key].get<std::size_t>() != actual) {
    throw InstanceFormatError(std::string("'") + key + "' does not match the data (expected " +
                              std::to_string(actual) + ")");
  }
}

}  // namespace

std::string instance_to_json(const BlpInstance& inst, const UncertaintyPartition& part) {
  json doc;
  doc["n"] = inst.num_vars();
  doc["m"] = inst.num_rows();
  doc["sense"] = inst.sense() == Sense::kMaximize ? "max" : "min";
  doc["c"] = std::vector<double>(inst.costs().begin(), inst.costs().end());
  doc["a"] = inst.matrix();
  doc["b"] = std::vector<double>(inst.rhs().begin(), inst.rhs().end());
  std::vector<std::size_t> one_based;
  for (std::size_t i : part.uncertain()) one_based.push_back(i + 1);
  doc["uncertain"] = one_based;
  return doc.dump(2) + "\n";
}

std::pair<BlpInstance, UncertaintyPartition> instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceFormatError("instance must be a JSON object");

  Sense sense = Sense::kMaximize;
  if (doc.contains("sense")) {
    const auto s = doc["sense"].is_string() ? doc["sense"].get<std::string>() : "";
    if (s == "max") {
      sense = Sense::kMaximize;
    } else if (s == "min") {
      sense = Sense::kMinimize;
    } else {
      throw InstanceFormatError("sense must be \"max\" or \"min\"");
    }
  }
  auto costs = numbers(doc, "c");
  auto rhs = numbers(doc, "b");
  if (!doc.contains("a") || !doc["a"].is_array()) {
    throw InstanceFormatError("missing array 'a'");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& r : doc["a"]) {
    if (!r.is_array()) throw InstanceFormatError("each row of 'a' must be an array");
    std::vector<double> row;
    for (const auto& v : r) {
      if (!v.is_number()) throw InstanceFormatError("non-numeric entry in 'a'");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }

  check_count(doc, "n", costs.size());
  check_count(doc, "m", rhs.size());

  std::vector<std::size_t> uncertain;
  std::set<long long> seen;
  if (doc.contains("uncertain")) {
    if (!doc["uncertain"].is_array()) throw InstanceFormatError("'uncertain' must be an array");
    for (const auto& v : doc["uncertain"]) {
      if (!v.is_number_integer()) throw InstanceFormatError("uncertain indices must be integers");
      const long long k = v.get<long long>();
      if (k < 1 || k > static_cast<long long>(costs.size())) {
        throw InstanceFormatError("uncertain index " + std::to_string(k) + " out of range 1.." +
                                  std::to_string(costs.size()));
      }
      if (!seen.insert(k).second) {
        throw InstanceFormatError("duplicate uncertain index " + std::to_string(k));
      }
      uncertain.push_back(static_cast<std::size_t>(k - 1));
    }
  }
  const std::size_t n = costs.size();
  try {
    BlpInstance inst(std::move(costs), std::move(rows), std::move(rhs), sense);
    UncertaintyPartition part(n, std::move(uncertain));
    return {std::move(inst), std::move(part)};
  } catch (const std::invalid_argument& e) {
    throw InstanceFormatError(e.what());
  }
}

void save_instance(const BlpInstance& inst, const UncertaintyPartition& part,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << instance_to_json(inst, part);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::pair<BlpInstance, UncertaintyPartition> load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceFormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return instance_from_json(buf.str());
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path.string() + ": " + e.what());
  }
}

std::pair<BlpInstance, UncertaintyPartition> illustrative_instance() {
  BlpInstance inst({7, 3, 9, 9, 10, 7, 4, 2, 6, 2}, {{4, 5, 9, 8, 4, 4, 6, 6, 2, 3}}, {26},
                   Sense::kMaximize);
  UncertaintyPartition part(10, {0, 1});
  return {std::move(inst), std::move(part)};
}

}  // namespace rbiu
