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
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rbiu {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Provenance {
  kRbiuDelta,
  kRbiuDeltaCC,
  kReducedKnapsack,
  kDeterministic,
  kSelection,
};

const char* to_string(Provenance p);

enum class VarType { kBinary, kContinuous };

// Role separates the decision binaries and the auxiliary dual variables from
// the epigraph variable that carries the objective level.
enum class VarRole { kDecision, kAuxiliary, kObjectiveLevel };

struct Variable {
  std::string name;
  VarType type = VarType::kContinuous;
  VarRole role = VarRole::kAuxiliary;
  double lower = 0.0;
  double upper = kInfinity;
  // Index of the original instance variable this binary stands for.
  std::optional<std::size_t> source_index;
};

struct Term {
  std::size_t var;
  double coef;
};

// sum(terms) <= rhs
struct Row {
  std::string name;
  std::vector<Term> terms;
  double rhs = 0.0;
};

struct ModelDimensions {
  std::size_t binaries = 0;
  std::size_t free_continuous = 0;
  std::size_t nonnegative_continuous = 0;
  // Structural rows plus one domain declaration per binary and one for the
  // nonnegativity block, the way the linear reformulation is usually counted.
  std::size_t constraints = 0;
  std::size_t structural_rows = 0;
};

// Mixed-binary linear model in minimization form with <= rows.
class MilpModel {
 public:
  explicit MilpModel(Provenance provenance) : provenance_(provenance) {}

  std::size_t add_variable(Variable var, double objective_coef = 0.0);
  void add_row(std::string name, std::vector<Term> terms, double rhs);

  void set_objective_offset(double offset) { objective_offset_ = offset; }
  // -1 when the source instance maximizes: native value = sign * model value.
  void set_native_sign(double sign) { native_sign_ = sign; }
  // Every feasible point has an integer objective; lets branch-and-bound
  // prune on ceil(bound).
  void set_integral_objective(bool v) { integral_objective_ = v; }
  void set_selection_problem(int k) { selection_problem_ = k; }

  // Tightens the bounds of the binary standing for original index i.
  void fix_source(std::size_t source_index, double value);
  void set_bounds(std::size_t var, double lower, double upper);

  Provenance provenance() const { return provenance_; }
  int selection_problem() const { return selection_problem_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<double>& objective() const { return objective_; }
  double objective_offset() const { return objective_offset_; }
  double native_sign() const { return native_sign_; }
  bool integral_objective() const { return integral_objective_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t num_vars() const { return variables_.size(); }

  std::optional<std::size_t> find_variable(const std::string& name) const;
  ModelDimensions dimensions() const;

  // Plain-text LP-style dump, variables named as created (1-based x_i etc).
  std::string to_lp_string() const;

 private:
  Provenance provenance_;
  int selection_problem_ = 0;
  std::vector<Variable> variables_;
  std::vector<double> objective_;
  double objective_offset_ = 0.0;
  double native_sign_ = 1.0;
  bool integral_objective_ = false;
  std::vector<Row> rows_;
};

}  // namespace rbiu
