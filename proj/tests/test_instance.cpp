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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include <unistd.h>

#include "rbiu/instance.hpp"
#include "rbiu/instance_io.hpp"
#include "support.hpp"

namespace rbiu {
namespace {

using testing::illustrative_optimum;

TEST(EvaluateObjective, IllustrativeOptimumIs41) {
  auto [inst, part] = illustrative_instance();
  EXPECT_EQ(evaluate_objective(inst, illustrative_optimum()), 41.0);
}

TEST(EvaluateObjective, ZeroVectorIsZero) {
  auto [inst, part] = illustrative_instance();
  EXPECT_EQ(evaluate_objective(inst, BinarySolution(10)), 0.0);
}

TEST(EvaluateObjective, OutcomeRow34) {
  auto [inst, part] = illustrative_instance();
  EXPECT_EQ(evaluate_objective(inst, {0, 0, 1, 0, 1, 1, 0, 0, 1, 1}), 34.0);
}

TEST(EvaluateObjective, DimensionMismatchThrows) {
  auto [inst, part] = illustrative_instance();
  EXPECT_THROW(evaluate_objective(inst, BinarySolution(9)), DimensionError);
  EXPECT_THROW(evaluate_constraints(inst, BinarySolution(11)), DimensionError);
}

TEST(EvaluateConstraints, IllustrativeOptimumUsesWholeBudget) {
  auto [inst, part] = illustrative_instance();
  const auto lhs = evaluate_constraints(inst, illustrative_optimum());
  ASSERT_EQ(lhs.size(), 1u);
  EXPECT_EQ(lhs[0], 26.0);
  EXPECT_TRUE(is_deterministic_feasible(inst, illustrative_optimum()));
}

TEST(Feasibility, ToleranceIsAbsoluteOneEMinusNine) {
  BlpInstance inst({1.0}, {{1.0}}, {1.0 - 5e-10}, Sense::kMaximize);
  EXPECT_TRUE(is_deterministic_feasible(inst, {1}));
  BlpInstance tight({1.0}, {{1.0}}, {1.0 - 1e-8}, Sense::kMaximize);
  EXPECT_FALSE(is_deterministic_feasible(tight, {1}));
}

TEST(BlpInstance, RejectsInconsistentDimensions) {
  EXPECT_THROW(BlpInstance({1, 2}, {{1}}, {1}, Sense::kMaximize), DimensionError);
  EXPECT_THROW(BlpInstance({1, 2}, {{1, 2}}, {1, 2}, Sense::kMaximize), DimensionError);
  EXPECT_THROW(BlpInstance({}, {}, {}, Sense::kMaximize), std::invalid_argument);
  EXPECT_THROW(BlpInstance({1}, {}, {}, Sense::kMaximize), std::invalid_argument);
}

TEST(BlpInstance, RejectsNonFiniteData) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(BlpInstance({nan}, {{1}}, {1}, Sense::kMaximize), std::invalid_argument);
  EXPECT_THROW(BlpInstance({1}, {{INFINITY}}, {1}, Sense::kMaximize), std::invalid_argument);
}

TEST(BinarySolution, RejectsNonBinaryEntries) {
  EXPECT_THROW(BinarySolution(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
  EXPECT_THROW((BinarySolution{1, -1}), std::invalid_argument);
}

TEST(UncertaintyPartition, SortsAndComplements) {
  UncertaintyPartition part(5, {3, 0});
  EXPECT_EQ(part.uncertain(), (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(part.deterministic(), (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_TRUE(part.is_uncertain(3));
  EXPECT_FALSE(part.is_uncertain(2));
}

TEST(UncertaintyPartition, RejectsDuplicatesAndOutOfRange) {
  EXPECT_THROW(UncertaintyPartition(4, {1, 1}), std::invalid_argument);
  EXPECT_THROW(UncertaintyPartition(4, {4}), std::invalid_argument);
}

TEST(RobustConfig, ValidatesDeltaAndGamma) {
  auto [inst, part] = illustrative_instance();
  EXPECT_NO_THROW(RobustConfig::uniform(1, 1.3).validate(inst, part));
  EXPECT_THROW(RobustConfig::uniform(1, -0.1).validate(inst, part), std::invalid_argument);
  EXPECT_THROW(RobustConfig::uniform(2, 0.0).validate(inst, part), DimensionError);
  EXPECT_THROW(RobustConfig::uniform(1, 0.0, 0).validate(inst, part), std::invalid_argument);
  EXPECT_THROW(RobustConfig::uniform(1, 0.0, 3).validate(inst, part), std::invalid_argument);
  EXPECT_EQ(RobustConfig::uniform(1, 0.0).resolved_gamma(part), 2u);
  EXPECT_EQ(RobustConfig::uniform(1, 0.0, 1).resolved_gamma(part), 1u);
}

TEST(Outcomes, IllustrativeOrderAndValues) {
  auto [inst, part] = illustrative_instance();
  const auto outs = enumerate_outcomes(illustrative_optimum(), part);
  ASSERT_EQ(outs.size(), 4u);
  const double z[] = {34, 37, 41, 44};
  const double lhs[] = {22, 27, 26, 31};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(evaluate_objective(inst, outs[k]), z[k]) << k;
    EXPECT_EQ(evaluate_constraints(inst, outs[k])[0], lhs[k]) << k;
  }
}

TEST(Outcomes, EmptyUncertainSetYieldsXItself) {
  UncertaintyPartition part(3, {});
  const BinarySolution x{1, 0, 1};
  const auto outs = enumerate_outcomes(x, part);
  ASSERT_EQ(outs.size(), 1u);
  EXPECT_EQ(outs[0], x);
}

TEST(Outcomes, SizeAndCaps) {
  std::vector<std::size_t> u64(64);
  for (std::size_t i = 0; i < 64; ++i) u64[i] = i;
  EXPECT_THROW(outcome_set_size(UncertaintyPartition(64, u64)), std::overflow_error);
  std::vector<std::size_t> u21(21);
  for (std::size_t i = 0; i < 21; ++i) u21[i] = i;
  UncertaintyPartition big(21, u21);
  EXPECT_EQ(outcome_set_size(big), std::uint64_t{1} << 21);
  EXPECT_THROW(enumerate_outcomes(BinarySolution(21), big), std::length_error);
}

TEST(OutcomesProperty, DistinctContainXAndSymmetric) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    auto [inst, part] = testing::random_blp(rng, {});
    const auto x = testing::random_solution(rng, inst.num_vars());
    const auto outs = enumerate_outcomes(x, part);
    const std::set<BinarySolution> set(outs.begin(), outs.end());
    EXPECT_EQ(set.size(), std::size_t{1} << part.uncertain().size());
    EXPECT_TRUE(set.count(x));
    for (const auto& y : outs) {
      for (std::size_t i : part.deterministic()) EXPECT_EQ(y[i], x[i]);
      const auto again = enumerate_outcomes(y, part);
      EXPECT_EQ(std::set<BinarySolution>(again.begin(), again.end()), set);
    }
  }
}

TEST(ObjectiveProperty, AdditiveOverDisjointSupports) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto [inst, part] = testing::random_blp(rng, {});
    const std::size_t n = inst.num_vars();
    BinarySolution x(n), y(n), both(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int pick = testing::draw(rng, 0, 2);
      x.set(i, pick == 1);
      y.set(i, pick == 2);
      both.set(i, pick != 0);
    }
    EXPECT_EQ(evaluate_objective(inst, x) + evaluate_objective(inst, y),
              evaluate_objective(inst, both));
  }
}

class InstanceFileTest : public ::testing::Test {
 protected:
  std::filesystem::path dir_ = std::filesystem::temp_directory_path() /
                               ("rbiu_instance_" + std::to_string(::getpid()));
  void SetUp() override { std::filesystem::create_directories(dir_); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
};

TEST_F(InstanceFileTest, RoundTripsIllustrative) {
  auto [inst, part] = illustrative_instance();
  const auto p = dir_ / "ill.json";
  save_instance(inst, part, p);
  auto [inst2, part2] = load_instance(p);
  EXPECT_EQ(part2, part);
  EXPECT_EQ(inst2.matrix(), inst.matrix());
  EXPECT_EQ(std::vector<double>(inst2.costs().begin(), inst2.costs().end()),
            std::vector<double>(inst.costs().begin(), inst.costs().end()));
  EXPECT_EQ(inst2.sense(), Sense::kMaximize);
}

TEST_F(InstanceFileTest, UncertainIndicesAreOneBased) {
  const auto p = write("a.json",
                       R"({"n":3,"m":1,"sense":"min","c":[1,2,3],"a":[[1,1,1]],"b":[2],"uncertain":[3]})");
  auto [inst, part] = load_instance(p);
  EXPECT_EQ(part.uncertain(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(inst.sense(), Sense::kMinimize);
}

TEST_F(InstanceFileTest, RejectsBadFiles) {
  const char* bad[] = {
      R"({"c":[1,2],"a":[[1,1]],"b":[2],"uncertain":[1,1]})",
      R"({"c":[1,2],"a":[[1,1]],"b":[2],"uncertain":[0]})",
      R"({"c":[1,2],"a":[[1,1]],"b":[2],"uncertain":[3]})",
      R"({"n":3,"c":[1,2],"a":[[1,1]],"b":[2]})",
      R"({"c":[1,2],"a":[[1]],"b":[2]})",
      R"({"c":[1,2],"a":[[1,1]],"b":[2],"sense":"up"})",
      R"({"c":[1,2],"a":[[1,1]]})",
      R"(not json)",
  };
  int k = 0;
  for (const char* text : bad) {
    const auto p = write("bad" + std::to_string(k++) + ".json", text);
    EXPECT_THROW(load_instance(p), InstanceFormatError) << text;
  }
  EXPECT_THROW(load_instance(dir_ / "missing.json"), InstanceFormatError);
}

}  // namespace
}  // namespace rbiu
