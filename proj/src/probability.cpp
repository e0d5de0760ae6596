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

#include "rbiu/probability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rbiu {

namespace {

constexpr std::size_t kChunkTrials = 4096;

double binomial_pmf(std::size_t n, std::size_t k, double flip) {
  if (k > n) return 0.0;
  return binomial_coefficient(n, k) * std::pow(flip, static_cast<double>(k)) *
         std::pow(1.0 - flip, static_cast<double>(n - k));
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void FlipModel::validate() const {
  if (!in_unit_interval(p) || !in_unit_interval(q)) {
    throw std::invalid_argument("flip probabilities must lie in [0, 1]");
  }
}

FlipModel FlipModel::from_solution(const BinarySolution& x,
                                   const UncertaintyPartition& part, double p,
                                   double q) {
  if (x.size() != part.num_vars()) {
    throw DimensionError("solution size does not match partition");
  }
  FlipModel fm{0, 0, p, q};
  for (std::size_t i : part.uncertain()) (x[i] ? fm.u1 : fm.u0) += 1;
  fm.validate();
  return fm;
}

double binomial_coefficient(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 30) {
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<double>(c);
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::exp(std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                  std::lgamma(nn - kk + 1.0));
}

double pmf_exact_flips(const FlipModel& fm, std::size_t k) {
  fm.validate();
  if (k > fm.total()) {
    throw std::out_of_range("flip count " + std::to_string(k) + " exceeds |U| = " +
                            std::to_string(fm.total()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    sum += binomial_pmf(fm.u0, i, 1.0 - fm.p) * binomial_pmf(fm.u1, k - i, 1.0 - fm.q);
  }
  return sum;
}

double infeasibility_upper_bound(const FlipModel& fm, std::size_t gamma) {
  fm.validate();
  if (gamma > fm.total()) {
    throw std::out_of_range("gamma " + std::to_string(gamma) + " exceeds |U| = " +
                            std::to_string(fm.total()));
  }
  if (gamma == fm.total()) return 0.0;
  double cdf = 0.0;
  for (std::size_t l = 0; l <= gamma; ++l) cdf += pmf_exact_flips(fm, l);
  return std::clamp(1.0 - cdf, 0.0, 1.0);
}

ViolationEstimate empirical_violation_rate(const RobustSolution& sol,
                                           const BlpInstance& inst,
                                           const UncertaintyPartition& part,
                                           const RobustConfig& cfg,
                                           const FlipModel& fm, std::size_t trials,
                                           std::uint64_t seed, std::size_t workers) {
  if (!sol.optimal()) throw std::invalid_argument("solution is not optimal");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  cfg.validate(inst, part);
  fm.validate();
  if (sol.x_star.size() != inst.num_vars()) {
    throw DimensionError("solution size does not match instance");
  }

  const double sign = inst.sense() == Sense::kMaximize ? -1.0 : 1.0;
  const double level = sign * sol.gamma;
  const auto& u = part.uncertain();

  auto violates = [&](const BinarySolution& y) {
    if (sign * evaluate_objective(inst, y) > level + kFeasibilityTolerance) return true;
    const auto lhs = evaluate_constraints(inst, y);
    for (std::size_t j = 0; j < lhs.size(); ++j) {
      if (lhs[j] > inst.rhs()[j] + cfg.delta[j] + kFeasibilityTolerance) return true;
    }
    return false;
  };

  const std::size_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<std::size_t> counts(chunks, 0);
  auto run_chunk = [&](std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk)};
    std::mt19937_64 rng(seq);
    std::bernoulli_distribution flip0(1.0 - fm.p);
    std::bernoulli_distribution flip1(1.0 - fm.q);
    const std::size_t begin = chunk * kChunkTrials;
    const std::size_t end = std::min(trials, begin + kChunkTrials);
    BinarySolution y = sol.x_star;
    std::size_t count = 0;
    for (std::size_t t = begin; t < end; ++t) {
      for (std::size_t i : u) {
        const bool prescribed = sol.x_star[i] != 0;
        const bool flipped = prescribed ? flip1(rng) : flip0(rng);
        y.set(i, prescribed != flipped);
      }
      if (violates(y)) ++count;
    }
    counts[chunk] = count;
  };

  workers = std::max<std::size_t>(1, std::min(workers, chunks));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  ViolationEstimate est;
  est.trials = trials;
  for (std::size_t c : counts) est.violations += c;
  est.rate = static_cast<double>(est.violations) / static_cast<double>(trials);
  return est;
}

}  // namespace rbiu
