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

#include "rbiu/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rbiu {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kRbiuDelta:
      return "rbiu-delta";
    case Provenance::kRbiuDeltaCC:
      return "rbiu-delta-cc";
    case Provenance::kReducedKnapsack:
      return "reduced-knapsack";
    case Provenance::kDeterministic:
      return "deterministic";
    case Provenance::kSelection:
      return "selection";
  }
  return "unknown";
}

std::size_t MilpModel::add_variable(Variable var, double objective_coef) {
  if (var.type == VarType::kBinary) {
    var.lower = std::max(var.lower, 0.0);
    var.upper = std::min(var.upper, 1.0);
  }
  if (var.lower > var.upper) {
    throw std::invalid_argument("variable " + var.name + " has empty bounds");
  }
  variables_.push_back(std::move(var));
  objective_.push_back(objective_coef);
  return variables_.size() - 1;
}

void MilpModel::add_row(std::string name, std::vector<Term> terms, double rhs) {
  for (const auto& t : terms) {
    if (t.var >= variables_.size()) {
      throw std::out_of_range("row " + name + " references unknown variable");
    }
  }
  rows_.push_back(Row{std::move(name), std::move(terms), rhs});
}

void MilpModel::fix_source(std::size_t source_index, double value) {
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    if (variables_[k].source_index == source_index) {
      set_bounds(k, value, value);
      return;
    }
  }
  throw std::out_of_range("no model variable for source index " +
                          std::to_string(source_index));
}

void MilpModel::set_bounds(std::size_t var, double lower, double upper) {
  auto& v = variables_.at(var);
  if (lower > upper) {
    throw std::invalid_argument("variable " + v.name + " has empty bounds");
  }
  v.lower = lower;
  v.upper = upper;
}

std::optional<std::size_t> MilpModel::find_variable(const std::string& name) const {
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    if (variables_[k].name == name) return k;
  }
  return std::nullopt;
}

ModelDimensions MilpModel::dimensions() const {
  ModelDimensions d;
  for (const auto& v : variables_) {
    if (v.type == VarType::kBinary) {
      ++d.binaries;
    } else if (v.role == VarRole::kAuxiliary) {
      if (std::isinf(v.lower) && std::isinf(v.upper)) {
        ++d.free_continuous;
      } else if (v.lower == 0.0 && std::isinf(v.upper)) {
        ++d.nonnegative_continuous;
      }
    }
  }
  d.structural_rows = rows_.size();
  d.constraints = rows_.size() + d.binaries + (d.nonnegative_continuous > 0 ? 1 : 0);
  return d;
}

namespace {

void write_coef(std::ostringstream& out, double coef, const std::string& name,
                bool first) {
  if (coef < 0) {
    out << (first ? "-" : " - ");
  } else if (!first) {
    out << " + ";
  }
  const double mag = std::abs(coef);
  if (mag != 1.0) out << mag << ' ';
  out << name;
}

}  // namespace

std::string MilpModel::to_lp_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "\\ provenance: " << to_string(provenance_) << "\n";
  out << "Minimize\n obj:";
  bool first = true;
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    if (objective_[k] == 0.0) continue;
    out << ' ';
    write_coef(out, objective_[k], variables_[k].name, first);
    first = false;
  }
  if (objective_offset_ != 0.0 || first) {
    out << (objective_offset_ < 0 ? " - " : " + ") << std::abs(objective_offset_);
  }
  out << "\nSubject To\n";
  for (const auto& row : rows_) {
    out << ' ' << row.name << ':';
    bool f = true;
    for (const auto& t : row.terms) {
      out << ' ';
      write_coef(out, t.coef, variables_[t.var].name, f);
      f = false;
    }
    if (f) out << " 0";
    out << " <= " << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : variables_) {
    if (v.type == VarType::kBinary && v.lower == 0.0 && v.upper == 1.0) continue;
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << ' ' << v.name << " free\n";
    } else if (v.lower == 0.0 && std::isinf(v.upper)) {
      continue;
    } else {
      out << ' ';
      if (std::isinf(v.lower)) {
        out << "-inf";
      } else {
        out << v.lower;
      }
      out << " <= " << v.name << " <= ";
      if (std::isinf(v.upper)) {
        out << "+inf";
      } else {
        out << v.upper;
      }
      out << "\n";
    }
  }
  out << "Binaries\n";
  for (const auto& v : variables_) {
    if (v.type == VarType::kBinary) out << ' ' << v.name << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace rbiu
