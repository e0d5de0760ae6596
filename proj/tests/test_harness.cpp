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

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "rbiu/harness.hpp"

namespace rbiu {
namespace {

ExperimentPlan small_plan(Study study) {
  ExperimentPlan plan = ExperimentPlan::defaults(study);
  plan.n = 40;
  plan.replications = 2;
  return plan;
}

std::vector<const ResultRow*> rows_of(const ResultsTable& t, const std::string& kind) {
  std::vector<const ResultRow*> out;
  for (const auto& r : t) {
    if (r.kind == kind) out.push_back(&r);
  }
  return out;
}

TEST(Generation, RangesMatchThePlan) {
  const ExperimentPlan plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  for (std::size_t rep = 0; rep < 5; ++rep) {
    const BlpInstance inst = generate_instance(plan, rep);
    ASSERT_EQ(inst.num_vars(), 100u);
    double total = 0.0;
    for (std::size_t i = 0; i < 100; ++i) {
      EXPECT_GE(inst.costs()[i], 21);
      EXPECT_LE(inst.costs()[i], 80);
      EXPECT_GE(inst.row(0)[i], 41);
      EXPECT_LE(inst.row(0)[i], 60);
      total += inst.row(0)[i];
    }
    EXPECT_EQ(inst.rhs()[0], total / 2);
    EXPECT_GE(inst.rhs()[0], 2050);
    EXPECT_LE(inst.rhs()[0], 3000);
  }
}

TEST(Generation, UncertainSetIsLeadingIndices) {
  const ExperimentPlan plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  const auto [inst, part] = generate_instance(plan, 0, 0.05);
  EXPECT_EQ(part.uncertain(), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  const auto [inst9, part9] = generate_instance(plan, 0, 0.09);
  EXPECT_EQ(inst9.costs()[0], inst.costs()[0]);
  EXPECT_EQ(part9.uncertain().size(), 9u);
}

TEST(Generation, ReplayableAndReplicationDependent) {
  const ExperimentPlan plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  const BlpInstance a = generate_instance(plan, 2);
  const BlpInstance b = generate_instance(plan, 2);
  const BlpInstance c = generate_instance(plan, 3);
  EXPECT_TRUE(std::equal(a.costs().begin(), a.costs().end(), b.costs().begin()));
  EXPECT_EQ(a.rhs()[0], b.rhs()[0]);
  EXPECT_FALSE(std::equal(a.costs().begin(), a.costs().end(), c.costs().begin()));
}

TEST(Generation, CountsAndCaps) {
  EXPECT_EQ(uncertain_count(0.01, 100), 1u);
  EXPECT_EQ(uncertain_count(0.0, 100), 1u);
  EXPECT_EQ(uncertain_count(0.25, 100), 25u);
  EXPECT_EQ(gamma_for(0.4, 9), 4u);
  EXPECT_EQ(gamma_for(0.4, 1), 1u);
  EXPECT_EQ(gamma_for(0.0, 5), 1u);
  EXPECT_EQ(gamma_for(1.0, 5), 5u);
  EXPECT_THROW(gamma_for(0.5, 0), std::invalid_argument);
}

TEST(Plan, ValidationRejectsBadGrids) {
  ExperimentPlan plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  EXPECT_NO_THROW(plan.validate());
  plan.u_grid = {1.5};
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  plan.delta_grid = {-0.01};
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  plan.replications = 0;
  EXPECT_THROW(plan.validate(), std::invalid_argument);
  EXPECT_THROW(run_delta_sweep(ExperimentPlan::defaults(Study::kBoundStudy)),
               std::invalid_argument);
}

TEST(Plan, StudyNames) {
  for (Study s : {Study::kDeltaSweep, Study::kDeltaCCSweep, Study::kSelectionStudy,
                  Study::kBoundStudy}) {
    EXPECT_EQ(parse_study(to_string(s)), s);
  }
  EXPECT_FALSE(parse_study("bogus").has_value());
}

TEST(DeltaSweep, ShapeAndZeroSlackFeasibility) {
  ExperimentPlan plan = small_plan(Study::kDeltaSweep);
  plan.u_grid = {0.05, 0.1};
  const ResultsTable t = run_delta_sweep(plan);
  ASSERT_EQ(t.size(), 2u * 2u * (1u + plan.delta_grid.size()));
  EXPECT_EQ(rows_of(t, "baseline").size(), 4u);
  std::map<std::pair<std::size_t, double>, double> last;
  for (const auto& r : t) {
    EXPECT_EQ(r.study, "delta");
    if (r.kind != "robust") continue;
    EXPECT_EQ(r.status, "optimal");
    EXPECT_EQ(r.source, "reduced-knapsack");
    EXPECT_EQ(r.sim_mode, "enumerated");
    if (r.delta_fraction == 0.0) EXPECT_EQ(r.feasibility, 1.0);
    // mean ratio nonincreasing in delta
    auto key = std::make_pair(r.replication, r.u);
    if (last.count(key)) EXPECT_LE(r.mean_ratio, last[key] + 1e-12);
    last[key] = r.mean_ratio;
  }
}

TEST(DeltaSweep, BaselineIsTheDeterministicOptimum) {
  const ResultsTable t = run_delta_sweep(small_plan(Study::kDeltaSweep));
  for (const auto* r : rows_of(t, "baseline")) {
    EXPECT_EQ(r->source, "deterministic");
    EXPECT_EQ(r->single_ratio, 0.0);
    EXPECT_EQ(r->violation, 0.0);
    EXPECT_TRUE(std::isnan(r->theoretical));
  }
}

TEST(CcSweep, FullBudgetMatchesDeltaSweep) {
  ExperimentPlan cc = small_plan(Study::kDeltaCCSweep);
  cc.p_grid = {1.0};
  cc.delta_grid = {0.0, 0.02};
  ExperimentPlan d = small_plan(Study::kDeltaSweep);
  d.u_grid = cc.u_grid;
  d.delta_grid = cc.delta_grid;
  const ResultsTable a = run_delta_cc_sweep(cc);
  const ResultsTable b = run_delta_sweep(d);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].kind != "robust") continue;
    EXPECT_EQ(a[k].source, "rbiu-delta-cc");
    EXPECT_EQ(a[k].gamma_cap, a[k].num_uncertain);
    EXPECT_NEAR(a[k].robust_level, b[k].robust_level, 1e-6);
    EXPECT_NEAR(a[k].mean_ratio, b[k].mean_ratio, 1e-9);
    EXPECT_EQ(a[k].feasibility, b[k].feasibility);
  }
}

TEST(CcSweep, RowCountAndGammaCaps) {
  ExperimentPlan plan = small_plan(Study::kDeltaCCSweep);
  plan.delta_grid = {0.0, 0.03};
  const ResultsTable t = run_delta_cc_sweep(plan);
  EXPECT_EQ(t.size(), 2u * (1u + 3u * 2u));
  for (const auto* r : rows_of(t, "robust")) {
    EXPECT_EQ(r->num_uncertain, 4u);
    EXPECT_EQ(r->gamma_cap, gamma_for(r->conservatism, 4));
  }
}

TEST(CcSweep, SlackTradesFeasibilityForObjectiveAtNinePercent) {
  ExperimentPlan plan = ExperimentPlan::defaults(Study::kDeltaCCSweep);
  plan.p_grid = {0.8};
  plan.delta_grid = {0.0, 0.01, 0.02};
  const ResultsTable t = run_delta_cc_sweep(plan);
  std::map<double, std::pair<double, double>> mean;
  for (const auto* r : rows_of(t, "robust")) {
    EXPECT_EQ(r->gamma_cap, 7u);
    mean[r->delta_fraction].first += r->mean_ratio / 3;
    mean[r->delta_fraction].second += r->feasibility / 3;
  }
  EXPECT_GT(mean[0.0].first, mean[0.01].first);
  EXPECT_GT(mean[0.01].first, mean[0.02].first);
  for (const auto& [d, m] : mean) EXPECT_GE(m.second, 0.9) << d;
}

TEST(DeltaSweep, BaselineFeasibilityAtFivePercentIsLow) {
  ExperimentPlan plan = ExperimentPlan::defaults(Study::kDeltaSweep);
  plan.u_grid = {0.05};
  plan.delta_grid = {0.0};
  for (const auto* r : rows_of(run_delta_sweep(plan), "baseline")) {
    EXPECT_LE(r->feasibility, 0.6);
  }
}

TEST(SelectionStudy, SelectorsShareSetMetrics) {
  ExperimentPlan plan = small_plan(Study::kSelectionStudy);
  plan.n = 60;
  const ResultsTable t = run_selection_study(plan);
  ASSERT_EQ(t.size(), 2u * 11u);
  for (std::size_t rep = 0; rep < 2; ++rep) {
    for (int s = 0; s < 2; ++s) {
      const ResultRow* first = nullptr;
      for (int k = 1; k <= 4; ++k) {
        const std::string kind = "sp" + std::to_string(4 * s + k);
        for (const auto& r : t) {
          if (r.replication != rep || r.kind != kind || r.status != "optimal") continue;
          EXPECT_EQ(r.sim_mode, "sampled");
          if (!first) first = &r;
          EXPECT_EQ(r.mean_ratio, first->mean_ratio) << kind;
          EXPECT_EQ(r.feasibility, first->feasibility) << kind;
        }
      }
    }
  }
  for (const auto& r : t) {
    if ((r.kind == "sp1" || r.kind == "sp5") && r.status == "optimal") {
      EXPECT_EQ(r.violation, 0.0);
    }
  }
}

TEST(BoundStudy, EmpiricalBelowBoundWithinNoise) {
  ExperimentPlan plan = small_plan(Study::kBoundStudy);
  plan.bound_trials = 4000;
  const ResultsTable t = run_bound_study(plan);
  for (const auto* r : rows_of(t, "robust")) {
    ASSERT_EQ(r->status, "optimal");
    const double s = std::sqrt(r->theoretical * (1 - r->theoretical) / plan.bound_trials);
    EXPECT_LE(r->empirical, r->theoretical + 3 * s + 1e-12);
    EXPECT_EQ(r->difference, r->theoretical - r->empirical);
  }
}

TEST(BoundStudy, CertainFlipsGiveZero) {
  ExperimentPlan plan = small_plan(Study::kBoundStudy);
  plan.flip_p = plan.flip_q = 1.0;
  plan.bound_trials = 500;
  plan.u_grid = {0.1};
  for (const auto* r : rows_of(run_bound_study(plan), "robust")) {
    EXPECT_EQ(r->theoretical, 0.0);
    EXPECT_EQ(r->empirical, 0.0);
  }
}

TEST(Determinism, WorkerCountDoesNotChangeOutput) {
  ExperimentPlan plan = small_plan(Study::kDeltaSweep);
  plan.u_grid = {0.05, 0.1, 0.2};
  const std::string one = format_results(run_study(plan));
  plan.workers = 3;
  EXPECT_EQ(format_results(run_study(plan)), one);
  EXPECT_EQ(format_results(run_study(plan)), one);
  plan.seed = 2;
  EXPECT_NE(format_results(run_study(plan)), one);
}

TEST(Determinism, WorkersFromEnvironment) {
  ::unsetenv("RBIU_WORKERS");
  EXPECT_EQ(workers_from_env(2), 2u);
  ::setenv("RBIU_WORKERS", "4", 1);
  EXPECT_EQ(workers_from_env(), 4u);
  ::setenv("RBIU_WORKERS", "zero", 1);
  EXPECT_EQ(workers_from_env(1), 1u);
  ::setenv("RBIU_WORKERS", "0", 1);
  EXPECT_EQ(workers_from_env(1), 1u);
  ::unsetenv("RBIU_WORKERS");
}

TEST(ResultsIo, RoundTripIsExact) {
  ExperimentPlan plan = small_plan(Study::kSelectionStudy);
  const ResultsTable t = run_selection_study(plan);
  const std::string text = format_results(t);
  const ResultsTable back = parse_results(text);
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_TRUE(back[k].same_as(t[k])) << k;
  EXPECT_EQ(format_results(back), text);
}

TEST(ResultsIo, EmptyTableIsHeaderOnly) {
  const std::string text = format_results({});
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_TRUE(parse_results(text).empty());
}

TEST(ResultsIo, ErrorsNameTheLine) {
  ResultsTable t(1);
  t[0].study = "delta";
  t[0].kind = "robust";
  t[0].source = "reduced-knapsack";
  t[0].status = "optimal";
  t[0].sim_mode = "none";
  std::string text = format_results(t);
  const auto pos = text.rfind("optimal");
  std::string bad = text;
  bad.replace(bad.find(',', pos) + 1, 1, "x");
  try {
    parse_results(bad, "mem");
    FAIL() << "expected a parse error";
  } catch (const ResultsParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_results("# rbiu-results schema 9\n", "mem");
    FAIL() << "expected a parse error";
  } catch (const ResultsParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse_results(text + "1,2,3\n"), ResultsParseError);
  EXPECT_THROW(parse_results(""), ResultsParseError);
  t[0].kind = "a,b";
  EXPECT_THROW(format_results(t), std::invalid_argument);
}

TEST(ResultsIo, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("rbiu_harness_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const ResultsTable t = run_delta_sweep(small_plan(Study::kDeltaSweep));
  write_results(t, dir / "r.csv");
  const ResultsTable back = read_results(dir / "r.csv");
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_TRUE(back[k].same_as(t[k]));
  EXPECT_THROW(read_results(dir / "missing.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace rbiu
