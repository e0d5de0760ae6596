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
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rbiu {

enum class Sense { kMinimize, kMaximize };

// Absolute tolerance used when comparing a left-hand side against a rhs.
inline constexpr double kFeasibilityTolerance = 1e-9;

// Hard limit on |U| for anything that materializes the outcome set.
inline constexpr std::size_t kMaxEnumeratedUncertain = 20;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A 0/1 vector. Entries are stored as bytes and validated on construction.
class BinarySolution {
 public:
  BinarySolution() = default;
  explicit BinarySolution(std::size_t n) : bits_(n, 0) {}
  explicit BinarySolution(std::vector<std::uint8_t> bits);
  BinarySolution(std::initializer_list<int> bits);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  auto begin() const { return bits_.begin(); }
  auto end() const { return bits_.end(); }

  friend bool operator==(const BinarySolution&, const BinarySolution&) = default;
  friend auto operator<=>(const BinarySolution&, const BinarySolution&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Deterministic binary linear program: optimize c'x subject to A x <= b.
// Rows of `a` are constraints; each row has n entries.
class BlpInstance {
 public:
  BlpInstance(std::vector<double> c, std::vector<std::vector<double>> a,
              std::vector<double> b, Sense sense);

  std::size_t num_vars() const { return c_.size(); }
  std::size_t num_rows() const { return b_.size(); }
  Sense sense() const { return sense_; }

  std::span<const double> costs() const { return c_; }
  std::span<const double> row(std::size_t j) const { return a_.at(j); }
  const std::vector<std::vector<double>>& matrix() const { return a_; }
  std::span<const double> rhs() const { return b_; }

 private:
  std::vector<double> c_;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  Sense sense_;
};

// Splits {0..n-1} into deterministic indices C and uncertain indices U.
class UncertaintyPartition {
 public:
  // `uncertain` holds 0-based indices; duplicates and out-of-range entries
  // are rejected.
  UncertaintyPartition(std::size_t n, std::vector<std::size_t> uncertain);

  std::size_t num_vars() const { return is_uncertain_.size(); }
  const std::vector<std::size_t>& deterministic() const { return deterministic_; }
  const std::vector<std::size_t>& uncertain() const { return uncertain_; }
  bool is_uncertain(std::size_t i) const { return is_uncertain_.at(i) != 0; }

  friend bool operator==(const UncertaintyPartition&,
                         const UncertaintyPartition&) = default;

 private:
  std::vector<std::size_t> deterministic_;
  std::vector<std::size_t> uncertain_;
  std::vector<std::uint8_t> is_uncertain_;
};

// Per-row feasibility slack and the cardinality budget.
struct RobustConfig {
  std::vector<double> delta;
  // std::nullopt means the budget covers every uncertain variable.
  std::optional<std::size_t> gamma_cap;

  static RobustConfig uniform(std::size_t rows, double delta_value,
                              std::optional<std::size_t> gamma = std::nullopt);

  // Resolves the budget against a partition and validates 1 <= gamma <= |U|.
  std::size_t resolved_gamma(const UncertaintyPartition& part) const;
  void validate(const BlpInstance& inst, const UncertaintyPartition& part) const;
};

double evaluate_objective(const BlpInstance& inst, const BinarySolution& x);
std::vector<double> evaluate_constraints(const BlpInstance& inst,
                                         const BinarySolution& x);
bool is_deterministic_feasible(const BlpInstance& inst, const BinarySolution& x);

// 2^|U|. Throws std::overflow_error when |U| >= 64.
std::uint64_t outcome_set_size(const UncertaintyPartition& part);

// Streams every y with y_C = x_C. Uncertain coordinates run through all
// combinations in lexicographic order of the sorted U indices (the smallest
// index is the most significant digit). Throws when |U| exceeds the cap.
void for_each_outcome(const BinarySolution& x, const UncertaintyPartition& part,
                      const std::function<void(const BinarySolution&)>& visit);

std::vector<BinarySolution> enumerate_outcomes(const BinarySolution& x,
                                               const UncertaintyPartition& part);

}  // namespace rbiu
