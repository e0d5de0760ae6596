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

#include "rbiu/reformulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rbiu {

namespace {

double min_form_sign(const BlpInstance& inst) {
  return inst.sense() == Sense::kMaximize ? -1.0 : 1.0;
}

bool all_integral(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return x == std::floor(x); });
}

std::string x_name(std::size_t i) { return "x" + std::to_string(i + 1); }

void require_uncertain(const UncertaintyPartition& part) {
  if (part.uncertain().empty()) {
    throw std::invalid_argument("robust models need at least one uncertain variable");
  }
}

void require_knapsack(const BlpInstance& inst) {
  if (inst.num_rows() != 1 || inst.sense() != Sense::kMaximize) {
    throw std::invalid_argument("knapsack path needs one row and a maximization");
  }
}

// Appends the dualized protection of
//   max_{S in U, |S| <= gamma} sum_S max(coef_i,0) + sum_{U\S} coef_i x_i
// and returns the terms Gamma*v + u_0 + sum_U u_i that replace it in the
// parent row. `tag` is the 0-based row label (0 for the objective).
std::vector<Term> append_protection_block(MilpModel& model,
                                          const UncertaintyPartition& part,
                                          std::span<const double> coeffs,
                                          const std::vector<std::size_t>& x_var,
                                          std::size_t gamma, std::size_t tag) {
  const std::string j = std::to_string(tag);
  const std::size_t v = model.add_variable(
      Variable{"v" + j, VarType::kContinuous, VarRole::kAuxiliary, 0.0, kInfinity, {}});
  const std::size_t u0 = model.add_variable(
      Variable{"u0_" + j, VarType::kContinuous, VarRole::kAuxiliary, -kInfinity,
               kInfinity, {}});

  std::vector<Term> parent{{v, static_cast<double>(gamma)}, {u0, 1.0}};
  std::vector<Term> nominal;
  for (std::size_t i : part.uncertain()) {
    const std::size_t ui = model.add_variable(
        Variable{"u" + std::to_string(i + 1) + "_" + j, VarType::kContinuous,
                 VarRole::kAuxiliary, 0.0, kInfinity, {}});
    parent.push_back({ui, 1.0});
    // v + u_i >= max(coef_i,0) - coef_i x_i
    std::vector<Term> terms{{v, -1.0}, {ui, -1.0}};
    if (coeffs[i] != 0.0) terms.push_back({x_var[i], -coeffs[i]});
    model.add_row("prot" + j + "_" + std::to_string(i + 1), std::move(terms),
                  -positive_part(coeffs[i]));
    if (coeffs[i] != 0.0) nominal.push_back({x_var[i], coeffs[i]});
  }
  // u_0 >= sum_U coef_i x_i
  nominal.push_back({u0, -1.0});
  model.add_row("nom" + j, std::move(nominal), 0.0);
  return parent;
}

std::vector<std::size_t> add_all_binaries(MilpModel& model, const BlpInstance& inst,
                                          double sign) {
  std::vector<std::size_t> idx(inst.num_vars());
  for (std::size_t i = 0; i < inst.num_vars(); ++i) {
    idx[i] = model.add_variable(
        Variable{x_name(i), VarType::kBinary, VarRole::kDecision, 0.0, 1.0, i},
        sign * inst.costs()[i]);
  }
  return idx;
}

}  // namespace

MilpModel build_deterministic(const BlpInstance& inst) {
  const double sign = min_form_sign(inst);
  MilpModel model(Provenance::kDeterministic);
  model.set_native_sign(sign);
  model.set_integral_objective(all_integral(inst.costs()));
  const auto x = add_all_binaries(model, inst, sign);
  for (std::size_t j = 0; j < inst.num_rows(); ++j) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < inst.num_vars(); ++i) {
      if (inst.row(j)[i] != 0.0) terms.push_back({x[i], inst.row(j)[i]});
    }
    model.add_row("row" + std::to_string(j + 1), std::move(terms), inst.rhs()[j]);
  }
  return model;
}

MilpModel build_rbiu_delta(const BlpInstance& inst, const UncertaintyPartition& part,
                           const RobustConfig& cfg) {
  require_uncertain(part);
  cfg.validate(inst, part);
  const double sign = min_form_sign(inst);

  MilpModel model(Provenance::kRbiuDelta);
  model.set_native_sign(sign);
  model.set_integral_objective(all_integral(inst.costs()));

  std::vector<std::size_t> x(inst.num_vars());
  for (std::size_t i : part.deterministic()) {
    x[i] = model.add_variable(
        Variable{x_name(i), VarType::kBinary, VarRole::kDecision, 0.0, 1.0, i},
        sign * inst.costs()[i]);
  }
  double k_obj = 0.0;
  for (std::size_t i : part.uncertain()) k_obj += positive_part(sign * inst.costs()[i]);
  model.set_objective_offset(k_obj);

  for (std::size_t j = 0; j < inst.num_rows(); ++j) {
    const auto a = inst.row(j);
    double k_row = 0.0;
    for (std::size_t i : part.uncertain()) k_row += positive_part(a[i]);
    std::vector<Term> terms;
    for (std::size_t i : part.deterministic()) {
      if (a[i] != 0.0) terms.push_back({x[i], a[i]});
    }
    model.add_row("row" + std::to_string(j + 1), std::move(terms),
                  inst.rhs()[j] + cfg.delta[j] - k_row);
  }
  return model;
}

MilpModel build_reduced_knapsack(const BlpInstance& inst,
                                 const UncertaintyPartition& part, double delta) {
  require_knapsack(inst);
  require_uncertain(part);
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  const auto c = inst.costs();
  const auto a = inst.row(0);
  for (std::size_t i = 0; i < inst.num_vars(); ++i) {
    if (c[i] < 0.0 || a[i] < 0.0) {
      throw std::invalid_argument("reduced knapsack needs nonnegative data");
    }
  }
  MilpModel model(Provenance::kReducedKnapsack);
  model.set_native_sign(-1.0);
  model.set_integral_objective(all_integral(c));
  double capacity = inst.rhs()[0] + delta;
  for (std::size_t i : part.uncertain()) capacity -= a[i];
  std::vector<Term> terms;
  for (std::size_t i : part.deterministic()) {
    const std::size_t k = model.add_variable(
        Variable{x_name(i), VarType::kBinary, VarRole::kDecision, 0.0, 1.0, i}, -c[i]);
    if (a[i] != 0.0) terms.push_back({k, a[i]});
  }
  model.add_row("capacity", std::move(terms), capacity);
  return model;
}

MilpModel build_rbiu_delta_cc(const BlpInstance& inst, const UncertaintyPartition& part,
                              const RobustConfig& cfg) {
  require_uncertain(part);
  cfg.validate(inst, part);
  const std::size_t gamma = cfg.resolved_gamma(part);
  const double sign = min_form_sign(inst);

  MilpModel model(Provenance::kRbiuDeltaCC);
  model.set_native_sign(sign);
  model.set_integral_objective(all_integral(inst.costs()));

  std::vector<double> cost(inst.num_vars());
  for (std::size_t i = 0; i < cost.size(); ++i) cost[i] = sign * inst.costs()[i];

  std::vector<std::size_t> x(inst.num_vars());
  for (std::size_t i = 0; i < inst.num_vars(); ++i) {
    x[i] = model.add_variable(
        Variable{x_name(i), VarType::kBinary, VarRole::kDecision, 0.0, 1.0, i});
  }
  const std::size_t level = model.add_variable(
      Variable{"gamma", VarType::kContinuous, VarRole::kObjectiveLevel, -kInfinity,
               kInfinity, {}},
      1.0);

  auto obj_terms = append_protection_block(model, part, cost, x, gamma, 0);
  for (std::size_t i : part.deterministic()) {
    if (cost[i] != 0.0) obj_terms.push_back({x[i], cost[i]});
  }
  obj_terms.push_back({level, -1.0});
  model.add_row("obj", std::move(obj_terms), 0.0);

  for (std::size_t j = 0; j < inst.num_rows(); ++j) {
    const auto a = inst.row(j);
    auto terms = append_protection_block(model, part, a, x, gamma, j + 1);
    for (std::size_t i : part.deterministic()) {
      if (a[i] != 0.0) terms.push_back({x[i], a[i]});
    }
    model.add_row("row" + std::to_string(j + 1), std::move(terms),
                  inst.rhs()[j] + cfg.delta[j]);
  }
  return model;
}

MilpModel build_rkp_delta_cc(const BlpInstance& inst, const UncertaintyPartition& part,
                             double delta, std::size_t gamma) {
  require_knapsack(inst);
  return build_rbiu_delta_cc(inst, part, RobustConfig::uniform(1, delta, gamma));
}

RobustSolution solve_robust(const MilpModel& model, const BlpInstance& inst,
                            const UncertaintyPartition& part,
                            const MilpOptions& options) {
  if (part.num_vars() != inst.num_vars()) {
    throw DimensionError("partition size does not match instance");
  }
  const MilpResult res = solve_exact(model, options);
  RobustSolution sol;
  sol.provenance = model.provenance();
  sol.status = res.status;
  sol.stats = res.stats;
  sol.x_star = BinarySolution(inst.num_vars());
  if (res.values.size() != model.num_vars() || res.status == SolveStatus::kInfeasible) return sol;
  for (std::size_t k = 0; k < model.num_vars(); ++k) {
    const auto& v = model.variables()[k];
    if (v.source_index) sol.x_star.set(*v.source_index, std::round(res.values[k]) != 0.0);
  }
  sol.gamma = model.native_sign() * res.objective;
  return sol;
}

std::vector<BinarySolution> expand_robust_set(const RobustSolution& sol,
                                              const UncertaintyPartition& part) {
  if (!sol.optimal()) {
    throw std::invalid_argument("robust set requested for a non-optimal solution");
  }
  return enumerate_outcomes(sol.x_star, part);
}

double cc_protection_lp_value(const BlpInstance& inst, const UncertaintyPartition& part,
                              const BinarySolution& x, std::size_t gamma,
                              Target target) {
  if (x.size() != inst.num_vars()) {
    throw DimensionError("solution size does not match instance");
  }
  const auto coeffs = target.coefficients(inst);
  MilpModel model(Provenance::kRbiuDeltaCC);
  std::vector<std::size_t> xv(inst.num_vars());
  for (std::size_t i = 0; i < inst.num_vars(); ++i) {
    xv[i] = model.add_variable(Variable{x_name(i), VarType::kBinary, VarRole::kDecision,
                                        static_cast<double>(x[i]),
                                        static_cast<double>(x[i]), i});
  }
  const std::size_t level = model.add_variable(
      Variable{"gamma", VarType::kContinuous, VarRole::kObjectiveLevel, -kInfinity,
               kInfinity, {}},
      1.0);
  auto terms = append_protection_block(model, part, coeffs, xv, gamma, 0);
  for (std::size_t i : part.deterministic()) {
    if (coeffs[i] != 0.0) terms.push_back({xv[i], coeffs[i]});
  }
  terms.push_back({level, -1.0});
  model.add_row("obj", std::move(terms), 0.0);
  const LpSolution lp = solve_lp(model);
  if (lp.status != SolveStatus::kOptimal) {
    throw std::runtime_error(std::string("protection LP ended ") + to_string(lp.status));
  }
  return lp.objective;
}

}  // namespace rbiu
