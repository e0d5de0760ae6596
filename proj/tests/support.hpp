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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "rbiu/instance.hpp"
#include "rbiu/instance_io.hpp"

namespace rbiu::testing {

struct RandomSpec {
  std::size_t n_min = 2, n_max = 10;
  std::size_t m_min = 1, m_max = 3;
  std::size_t u_max = 6;
  int coef_lo = -10, coef_hi = 10;
  bool random_sense = true;
};

inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Signed integer BLP with a random nonempty uncertain set. The rhs is drawn
// so that some but usually not all selections are feasible.
inline std::pair<BlpInstance, UncertaintyPartition> random_blp(std::mt19937_64& rng,
                                                               const RandomSpec& s) {
  const auto n = static_cast<std::size_t>(draw(rng, int(s.n_min), int(s.n_max)));
  const auto m = static_cast<std::size_t>(draw(rng, int(s.m_min), int(s.m_max)));
  std::vector<double> c(n);
  for (auto& v : c) v = draw(rng, s.coef_lo, s.coef_hi);
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  std::vector<double> b(m);
  for (std::size_t j = 0; j < m; ++j) {
    double pos = 0.0;
    for (auto& v : a[j]) {
      v = draw(rng, s.coef_lo, s.coef_hi);
      pos += std::max(v, 0.0);
    }
    b[j] = draw(rng, 0, std::max(1, static_cast<int>(pos)));
  }
  const Sense sense = s.random_sense && draw(rng, 0, 1) ? Sense::kMinimize : Sense::kMaximize;
  const std::size_t ucount =
      static_cast<std::size_t>(draw(rng, 1, static_cast<int>(std::min(s.u_max, n))));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(ucount);
  return {BlpInstance(std::move(c), std::move(a), std::move(b), sense),
          UncertaintyPartition(n, std::move(idx))};
}

// Nonnegative integer knapsack, maximization.
inline std::pair<BlpInstance, UncertaintyPartition> random_knapsack(std::mt19937_64& rng,
                                                                    std::size_t n,
                                                                    std::size_t u) {
  std::vector<double> c(n), a(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = draw(rng, 1, 40);
    a[i] = draw(rng, 1, 30);
    total += a[i];
  }
  const double b = std::floor(total * std::uniform_real_distribution<double>(0.3, 0.7)(rng));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(u);
  return {BlpInstance(std::move(c), {std::move(a)}, {b}, Sense::kMaximize),
          UncertaintyPartition(n, std::move(idx))};
}

inline BinarySolution random_solution(std::mt19937_64& rng, std::size_t n) {
  BinarySolution x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, draw(rng, 0, 1));
  return x;
}

// Calls f for every x in {0,1}^n.
template <typename F>
void for_each_binary(std::size_t n, F&& f) {
  BinarySolution x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) x.set(i, (mask >> i) & 1U);
    f(x);
  }
}

// Prescribed optimum of the ten-project example under the DP tie rule.
inline BinarySolution illustrative_optimum() { return {1, 0, 1, 0, 1, 1, 0, 0, 1, 1}; }

}  // namespace rbiu::testing
