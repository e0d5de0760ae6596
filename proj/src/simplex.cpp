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

// Dense-tableau bounded-variable primal simplex.
//
// Rows are A x + s = b with slacks s >= 0. Nonbasic structurals start at a
// finite bound (lower first) or at zero when free; rows whose slack would be
// negative get an artificial column and phase 1 drives the artificials out.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rbiu/solver.hpp"

namespace rbiu {

namespace {

enum class ColState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

constexpr std::size_t kIterationLimit = 200000;
constexpr std::size_t kDegenerateBeforeBland = 40;

class DenseSimplex {
 public:
  DenseSimplex(const MilpModel& model, std::span<const double> lower,
               std::span<const double> upper, const Tolerances& tol)
      : tol_(tol), m_(model.rows().size()), ns_(model.num_vars()) {
    std::vector<double> rhs(m_);
    for (std::size_t i = 0; i < m_; ++i) rhs[i] = model.rows()[i].rhs;

    // Structural starting values.
    lo_.assign(lower.begin(), lower.end());
    up_.assign(upper.begin(), upper.end());
    x_.assign(ns_, 0.0);
    state_.assign(ns_, ColState::kFree);
    for (std::size_t j = 0; j < ns_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        state_[j] = ColState::kAtLower;
      } else if (std::isfinite(up_[j])) {
        x_[j] = up_[j];
        state_[j] = ColState::kAtUpper;
      }
    }

    std::vector<double> residual = rhs;
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& t : model.rows()[i].terms) residual[i] -= t.coef * x_[t.var];
    }
    std::size_t num_art = 0;
    for (double r : residual) num_art += r < 0.0 ? 1 : 0;

    ncols_ = ns_ + m_ + num_art;
    first_art_ = ns_ + m_;
    tab_.assign(m_ * ncols_, 0.0);
    lo_.resize(ncols_, 0.0);
    up_.resize(ncols_, kInfinity);
    x_.resize(ncols_, 0.0);
    state_.resize(ncols_, ColState::kAtLower);
    basis_.assign(m_, 0);
    rhs_ = rhs;

    std::size_t art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      double* row = &tab_[i * ncols_];
      for (const auto& t : model.rows()[i].terms) row[t.var] += t.coef;
      row[ns_ + i] = 1.0;
      if (residual[i] < 0.0) {
        // Row negated so the artificial enters with +1.
        for (std::size_t j = 0; j < ncols_; ++j) row[j] = -row[j];
        row[art] = 1.0;
        basis_[i] = art;
        x_[art] = -residual[i];
        state_[art] = ColState::kBasic;
        ++art;
      } else {
        basis_[i] = ns_ + i;
        x_[ns_ + i] = residual[i];
        state_[ns_ + i] = ColState::kBasic;
      }
    }

    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < ns_; ++j) cost_[j] = model.objective()[j];
  }

  LpSolution solve(double objective_offset) {
    LpSolution sol;
    if (first_art_ < ncols_) {
      std::vector<double> phase1(ncols_, 0.0);
      for (std::size_t j = first_art_; j < ncols_; ++j) phase1[j] = 1.0;
      run(phase1);
      double infeas = 0.0;
      for (std::size_t j = first_art_; j < ncols_; ++j) infeas += x_[j];
      double scale = 1.0;
      for (double b : rhs_) scale = std::max(scale, std::abs(b));
      if (infeas > tol_.primal * scale) {
        sol.status = SolveStatus::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
      for (std::size_t j = first_art_; j < ncols_; ++j) {
        up_[j] = 0.0;
        if (state_[j] != ColState::kBasic) x_[j] = 0.0;
      }
      drive_out_artificials();
    }
    if (!run(cost_)) {
      sol.status = SolveStatus::kUnbounded;
      sol.iterations = iterations_;
      return sol;
    }
    sol.status = SolveStatus::kOptimal;
    sol.values.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(ns_));
    for (std::size_t j = 0; j < ns_; ++j) {
      // Snap values that sit on a bound within tolerance.
      if (std::isfinite(lo_[j]) && std::abs(sol.values[j] - lo_[j]) < 1e-12) {
        sol.values[j] = lo_[j];
      }
      if (std::isfinite(up_[j]) && std::abs(sol.values[j] - up_[j]) < 1e-12) {
        sol.values[j] = up_[j];
      }
    }
    double obj = objective_offset;
    for (std::size_t j = 0; j < ns_; ++j) obj += cost_[j] * sol.values[j];
    sol.objective = obj;
    sol.iterations = iterations_;
    return sol;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return tab_[i * ncols_ + j]; }

  void reduced_costs(const std::vector<double>& c, std::vector<double>& d) {
    d = c;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tab_[i * ncols_];
      for (std::size_t j = 0; j < ncols_; ++j) d[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m_; ++i) d[basis_[i]] = 0.0;
  }

  // x_B = B^-1 b - sum over nonbasic columns of T_j x_j. B^-1 is the slack
  // block of the tableau because the slack columns of [A | I] are the identity.
  void refresh_basic_values() {
    for (std::size_t i = 0; i < m_; ++i) {
      const double* row = &tab_[i * ncols_];
      double v = 0.0;
      for (std::size_t k = 0; k < m_; ++k) v += row[ns_ + k] * rhs_[k];
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (state_[j] == ColState::kBasic || x_[j] == 0.0) continue;
        v -= row[j] * x_[j];
      }
      x_[basis_[i]] = v;
    }
  }

  // Chooses the entering column; returns ncols_ when optimal.
  std::size_t price(const std::vector<double>& d, int& dir) const {
    std::size_t best = ncols_;
    double best_score = 0.0;
    for (std::size_t j = 0; j < ncols_; ++j) {
      const ColState s = state_[j];
      if (s == ColState::kBasic) continue;
      if (lo_[j] == up_[j]) continue;
      int cand_dir = 0;
      if ((s == ColState::kAtLower || s == ColState::kFree) &&
          d[j] < -tol_.reduced_cost) {
        cand_dir = 1;
      } else if ((s == ColState::kAtUpper || s == ColState::kFree) &&
                 d[j] > tol_.reduced_cost) {
        cand_dir = -1;
      }
      if (cand_dir == 0) continue;
      if (bland_) {
        dir = cand_dir;
        return j;
      }
      const double score = std::abs(d[j]);
      if (score > best_score) {
        best_score = score;
        best = j;
        dir = cand_dir;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t q) {
    double* prow = &tab_[r * ncols_];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < ncols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[i * ncols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (prow[j] != 0.0) row[j] -= f * prow[j];
      }
      row[q] = 0.0;
    }
  }

  // Returns false when the objective is unbounded below.
  bool run(const std::vector<double>& c) {
    std::vector<double> d;
    reduced_costs(c, d);
    std::size_t degenerate = 0;
    bland_ = false;
    bool verified = false;
    while (true) {
      if (++iterations_ > kIterationLimit) {
        throw std::runtime_error("simplex iteration limit exceeded");
      }
      int dir = 0;
      const std::size_t q = price(d, dir);
      if (q == ncols_) {
        if (verified) break;
        // Confirm optimality against freshly computed reduced costs.
        refresh_basic_values();
        reduced_costs(c, d);
        verified = true;
        continue;
      }
      verified = false;

      // Ratio test.
      double t_best = kInfinity;
      std::size_t r_best = m_;
      bool leave_to_upper = false;
      double alpha_best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = at(i, q);
        if (std::abs(alpha) <= tol_.pivot) continue;
        const std::size_t b = basis_[i];
        const double rate = -dir * alpha;
        double t;
        bool to_upper;
        if (rate < 0.0) {
          if (!std::isfinite(lo_[b])) continue;
          t = (x_[b] - lo_[b]) / -rate;
          to_upper = false;
        } else {
          if (!std::isfinite(up_[b])) continue;
          t = (up_[b] - x_[b]) / rate;
          to_upper = true;
        }
        if (t < 0.0) t = 0.0;
        bool take = false;
        if (t < t_best - 1e-12) {
          take = true;
        } else if (t <= t_best + 1e-12 && r_best < m_) {
          take = bland_ ? basis_[i] < basis_[r_best]
                        : std::abs(alpha) > std::abs(alpha_best);
        }
        if (take) {
          t_best = t;
          r_best = i;
          leave_to_upper = to_upper;
          alpha_best = alpha;
        }
      }
      double t_flip = kInfinity;
      if (std::isfinite(lo_[q]) && std::isfinite(up_[q])) t_flip = up_[q] - lo_[q];

      if (!std::isfinite(t_best) && !std::isfinite(t_flip)) return false;

      const bool flip = t_flip <= t_best;
      const double t = flip ? t_flip : t_best;
      if (t != 0.0) {
        x_[q] += dir * t;
        for (std::size_t i = 0; i < m_; ++i) {
          const double alpha = at(i, q);
          if (alpha != 0.0) x_[basis_[i]] -= dir * t * alpha;
        }
      }
      if (t <= 1e-12) {
        if (++degenerate > kDegenerateBeforeBland) bland_ = true;
      } else {
        degenerate = 0;
        bland_ = false;
      }

      if (flip) {
        state_[q] = dir > 0 ? ColState::kAtUpper : ColState::kAtLower;
        x_[q] = dir > 0 ? up_[q] : lo_[q];
        continue;
      }

      const std::size_t leaving = basis_[r_best];
      x_[leaving] = leave_to_upper ? up_[leaving] : lo_[leaving];
      state_[leaving] = leave_to_upper ? ColState::kAtUpper : ColState::kAtLower;
      pivot(r_best, q);
      basis_[r_best] = q;
      state_[q] = ColState::kBasic;
      const double dq = d[q];
      const double* prow = &tab_[r_best * ncols_];
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (prow[j] != 0.0) d[j] -= dq * prow[j];
      }
      d[q] = 0.0;
    }
    return true;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_art_) continue;
      std::size_t best = ncols_;
      double best_mag = 1e-9;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (state_[j] == ColState::kBasic) continue;
        const double mag = std::abs(at(r, j));
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      if (best == ncols_) continue;  // redundant row; artificial stays at 0
      const std::size_t art = basis_[r];
      pivot(r, best);
      basis_[r] = best;
      state_[best] = ColState::kBasic;
      state_[art] = ColState::kAtLower;
      x_[art] = 0.0;
    }
    refresh_basic_values();
  }

  Tolerances tol_;
  std::size_t m_;
  std::size_t ns_;
  std::size_t ncols_ = 0;
  std::size_t first_art_ = 0;
  std::vector<double> tab_;
  std::vector<double> rhs_;
  std::vector<double> lo_, up_, x_, cost_;
  std::vector<ColState> state_;
  std::vector<std::size_t> basis_;
  std::size_t iterations_ = 0;
  bool bland_ = false;
};

}  // namespace

LpSolution solve_lp(const MilpModel& model, std::span<const double> lower,
                    std::span<const double> upper, const Tolerances& tol) {
  if (lower.size() != model.num_vars() || upper.size() != model.num_vars()) {
    throw std::invalid_argument("bound vectors do not match the model");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j]) {
      LpSolution sol;
      sol.status = SolveStatus::kInfeasible;
      return sol;
    }
  }
  DenseSimplex simplex(model, lower, upper, tol);
  return simplex.solve(model.objective_offset());
}

LpSolution solve_lp(const MilpModel& model, const Tolerances& tol) {
  std::vector<double> lower(model.num_vars()), upper(model.num_vars());
  for (std::size_t j = 0; j < model.num_vars(); ++j) {
    lower[j] = model.variables()[j].lower;
    upper[j] = model.variables()[j].upper;
  }
  return solve_lp(model, lower, upper, tol);
}

}  // namespace rbiu
