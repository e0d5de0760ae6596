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

#include "rbiu/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rbiu {

namespace {

void check_size(const BlpInstance& inst, const BinarySolution& x) {
  if (x.size() != inst.num_vars()) {
    throw DimensionError("solution has " + std::to_string(x.size()) +
                         " entries, instance has " +
                         std::to_string(inst.num_vars()) + " variables");
  }
}

double dot(std::span<const double> coeffs, const BinarySolution& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (x[i]) sum += coeffs[i];
  }
  return sum;
}

}  // namespace

BinarySolution::BinarySolution(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  for (auto v : bits_) {
    if (v > 1) throw std::invalid_argument("binary solution entry not in {0,1}");
  }
}

BinarySolution::BinarySolution(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int v : bits) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("binary solution entry not in {0,1}");
    }
    bits_.push_back(static_cast<std::uint8_t>(v));
  }
}

BlpInstance::BlpInstance(std::vector<double> c,
                         std::vector<std::vector<double>> a,
                         std::vector<double> b, Sense sense)
    : c_(std::move(c)), a_(std::move(a)), b_(std::move(b)), sense_(sense) {
  if (c_.empty()) throw DimensionError("instance needs at least one variable");
  if (b_.empty()) throw DimensionError("instance needs at least one constraint");
  if (a_.size() != b_.size()) {
    throw DimensionError("constraint matrix has " + std::to_string(a_.size()) +
                         " rows but rhs has " + std::to_string(b_.size()));
  }
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (a_[j].size() != c_.size()) {
      throw DimensionError("row " + std::to_string(j) + " has " +
                           std::to_string(a_[j].size()) + " entries, expected " +
                           std::to_string(c_.size()));
    }
  }
  auto finite = [](double v) { return std::isfinite(v); };
  bool ok = std::all_of(c_.begin(), c_.end(), finite) &&
            std::all_of(b_.begin(), b_.end(), finite);
  for (const auto& row : a_) ok = ok && std::all_of(row.begin(), row.end(), finite);
  if (!ok) throw std::invalid_argument("instance data must be finite");
}

UncertaintyPartition::UncertaintyPartition(std::size_t n,
                                           std::vector<std::size_t> uncertain)
    : uncertain_(std::move(uncertain)), is_uncertain_(n, 0) {
  for (std::size_t i : uncertain_) {
    if (i >= n) {
      throw std::invalid_argument("uncertain index " + std::to_string(i) +
                                  " out of range for n = " + std::to_string(n));
    }
    if (is_uncertain_[i]) {
      throw std::invalid_argument("duplicate uncertain index " +
                                  std::to_string(i));
    }
    is_uncertain_[i] = 1;
  }
  std::sort(uncertain_.begin(), uncertain_.end());
  deterministic_.reserve(n - uncertain_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_uncertain_[i]) deterministic_.push_back(i);
  }
}

RobustConfig RobustConfig::uniform(std::size_t rows, double delta_value,
                                   std::optional<std::size_t> gamma) {
  return RobustConfig{std::vector<double>(rows, delta_value), gamma};
}

std::size_t RobustConfig::resolved_gamma(const UncertaintyPartition& part) const {
  const std::size_t u = part.uncertain().size();
  if (!gamma_cap) return u;
  if (*gamma_cap < 1 || *gamma_cap > u) {
    throw std::invalid_argument("gamma " + std::to_string(*gamma_cap) +
                                " outside [1, " + std::to_string(u) + "]");
  }
  return *gamma_cap;
}

void RobustConfig::validate(const BlpInstance& inst,
                            const UncertaintyPartition& part) const {
  if (delta.size() != inst.num_rows()) {
    throw DimensionError("delta has " + std::to_string(delta.size()) +
                         " entries, instance has " +
                         std::to_string(inst.num_rows()) + " rows");
  }
  for (double d : delta) {
    if (!(d >= 0.0)) throw std::invalid_argument("delta entries must be >= 0");
  }
  if (part.num_vars() != inst.num_vars()) {
    throw DimensionError("partition size does not match instance");
  }
  if (gamma_cap) resolved_gamma(part);
}

double evaluate_objective(const BlpInstance& inst, const BinarySolution& x) {
  check_size(inst, x);
  return dot(inst.costs(), x);
}

std::vector<double> evaluate_constraints(const BlpInstance& inst,
                                         const BinarySolution& x) {
  check_size(inst, x);
  std::vector<double> lhs(inst.num_rows());
  for (std::size_t j = 0; j < inst.num_rows(); ++j) lhs[j] = dot(inst.row(j), x);
  return lhs;
}

bool is_deterministic_feasible(const BlpInstance& inst, const BinarySolution& x) {
  const auto lhs = evaluate_constraints(inst, x);
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    if (lhs[j] > inst.rhs()[j] + kFeasibilityTolerance) return false;
  }
  return true;
}

std::uint64_t outcome_set_size(const UncertaintyPartition& part) {
  const std::size_t u = part.uncertain().size();
  if (u >= 64) {
    throw std::overflow_error("2^" + std::to_string(u) +
                              " outcomes do not fit in 64 bits");
  }
  return std::uint64_t{1} << u;
}

void for_each_outcome(const BinarySolution& x, const UncertaintyPartition& part,
                      const std::function<void(const BinarySolution&)>& visit) {
  if (x.size() != part.num_vars()) {
    throw DimensionError("solution size does not match partition");
  }
  const auto& u = part.uncertain();
  if (u.size() > kMaxEnumeratedUncertain) {
    throw std::length_error("|U| = " + std::to_string(u.size()) +
                            " exceeds the enumeration cap of " +
                            std::to_string(kMaxEnumeratedUncertain));
  }
  BinarySolution y = x;
  const std::uint64_t total = outcome_set_size(part);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t t = 0; t < u.size(); ++t) {
      y.set(u[t], (mask >> (u.size() - 1 - t)) & 1U);
    }
    visit(y);
  }
}

std::vector<BinarySolution> enumerate_outcomes(const BinarySolution& x,
                                               const UncertaintyPartition& part) {
  std::vector<BinarySolution> out;
  out.reserve(static_cast<std::size_t>(
      part.uncertain().size() <= kMaxEnumeratedUncertain ? outcome_set_size(part)
                                                         : 0));
  for_each_outcome(x, part, [&](const BinarySolution& y) { out.push_back(y); });
  return out;
}

}  // namespace rbiu
