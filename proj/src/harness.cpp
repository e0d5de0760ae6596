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

#include "rbiu/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <initializer_list>
#include <limits>
#include <random>
#include <thread>

#include "rbiu/probability.hpp"
#include "rbiu/reformulation.hpp"
#include "rbiu/selection.hpp"
#include "rbiu/simulation.hpp"

namespace rbiu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags keep instance draws and simulation draws apart.
enum SeedTag : std::uint64_t { kInstanceStream = 1, kSimStream = 2, kMonteCarloStream = 3 };

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(base),
                                   static_cast<std::uint32_t>(base >> 32)};
  for (auto t : tags) {
    words.push_back(static_cast<std::uint32_t>(t));
    words.push_back(static_cast<std::uint32_t>(t >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

// Work unit: one replication at one u value.
struct Unit {
  std::size_t rep;
  std::size_t ui;
};

std::vector<Unit> units_of(const ExperimentPlan& plan) {
  std::vector<Unit> units;
  for (std::size_t r = 0; r < plan.replications; ++r) {
    for (std::size_t ui = 0; ui < plan.u_grid.size(); ++ui) units.push_back({r, ui});
  }
  return units;
}

// Runs every unit on a small pool; output order follows unit order.
ResultsTable run_units(const ExperimentPlan& plan,
                       const std::function<ResultsTable(const Unit&)>& body) {
  const auto units = units_of(plan);
  std::vector<ResultsTable> parts(units.size());
  std::vector<std::exception_ptr> errors(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < units.size(); k = next++) {
      try {
        parts[k] = body(units[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t w = std::max<std::size_t>(1, std::min(plan.workers, units.size()));
  if (w == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < w; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  ResultsTable out;
  for (auto& p : parts) {
    for (auto& row : p) out.push_back(std::move(row));
  }
  return out;
}

// Everything a unit shares: instance, partition, deterministic optimum.
struct UnitContext {
  BlpInstance inst;
  UncertaintyPartition part;
  BinarySolution x_kp;
  double f_star;
  std::uint64_t sim_seed;
};

UnitContext make_context(const ExperimentPlan& plan, const Unit& unit) {
  auto [inst, part] = generate_instance(plan, unit.rep, plan.u_grid[unit.ui]);
  MilpModel det = build_deterministic(inst);
  const MilpResult res = solve_exact(det);
  if (res.status != SolveStatus::kOptimal) {
    throw std::runtime_error("deterministic knapsack did not solve to optimality");
  }
  BinarySolution x(inst.num_vars());
  for (std::size_t k = 0; k < det.num_vars(); ++k) {
    const auto& v = det.variables()[k];
    if (v.source_index) x.set(*v.source_index, std::round(res.values[k]) != 0.0);
  }
  const double f = evaluate_objective(inst, x);
  const std::uint64_t sim_seed = derive_seed(plan.seed, {kSimStream, unit.rep, unit.ui});
  return UnitContext{std::move(inst), std::move(part), std::move(x), f, sim_seed};
}

ResultRow blank_row(const ExperimentPlan& plan, const Unit& unit, const UnitContext& ctx) {
  ResultRow r;
  r.study = to_string(plan.study);
  r.replication = unit.rep;
  r.u = plan.u_grid[unit.ui];
  r.num_uncertain = ctx.part.uncertain().size();
  r.delta_fraction = kNaN;
  r.delta = kNaN;
  r.conservatism = kNaN;
  r.gamma_cap = 0;
  r.objective = kNaN;
  r.robust_level = kNaN;
  r.single_ratio = kNaN;
  r.violation = kNaN;
  r.mean_ratio = kNaN;
  r.feasibility = kNaN;
  r.sim_mode = "none";
  r.theoretical = kNaN;
  r.empirical = kNaN;
  r.difference = kNaN;
  return r;
}

void fill_metrics(ResultRow& row, const UnitContext& ctx, const BinarySolution& x) {
  const SimReport rep = simulate(ctx.inst, x, ctx.part.uncertain(), ctx.f_star, ctx.sim_seed);
  row.objective = evaluate_objective(ctx.inst, x);
  row.single_ratio = rep.single_ratio;
  row.violation = rep.violation;
  row.mean_ratio = rep.mean_objective_ratio;
  row.feasibility = rep.feasibility_level;
  row.sim_mode = to_string(rep.mode);
}

// Worst case in native (max) orientation for the baseline: min over outcomes.
double native_worst_case(const BlpInstance& inst, const UncertaintyPartition& part,
                         const BinarySolution& x) {
  double v = 0.0;
  for (std::size_t i = 0; i < inst.num_vars(); ++i) {
    const double c = inst.costs()[i];
    if (part.is_uncertain(i)) {
      v += std::min(c, 0.0);
    } else if (x[i]) {
      v += c;
    }
  }
  return v;
}

ResultRow baseline_row(const ExperimentPlan& plan, const Unit& unit, const UnitContext& ctx) {
  ResultRow row = blank_row(plan, unit, ctx);
  row.kind = "baseline";
  row.source = "deterministic";
  row.status = "optimal";
  fill_metrics(row, ctx, ctx.x_kp);
  row.robust_level = native_worst_case(ctx.inst, ctx.part, ctx.x_kp);
  return row;
}

ResultRow robust_row(const ExperimentPlan& plan, const Unit& unit, const UnitContext& ctx,
                     const RobustSolution& sol, double delta_frac, double delta,
                     double conservatism, std::size_t gamma, const char* kind) {
  ResultRow row = blank_row(plan, unit, ctx);
  row.kind = kind;
  row.source = to_string(sol.provenance);
  row.status = to_string(sol.status);
  row.delta_fraction = delta_frac;
  row.delta = delta;
  row.conservatism = conservatism;
  row.gamma_cap = gamma;
  if (sol.optimal()) {
    fill_metrics(row, ctx, sol.x_star);
    row.robust_level = sol.gamma;
  }
  return row;
}

RobustSolution solve_delta(const UnitContext& ctx, double delta) {
  return solve_robust(build_reduced_knapsack(ctx.inst, ctx.part, delta), ctx.inst, ctx.part);
}

RobustSolution solve_cc(const UnitContext& ctx, double delta, std::size_t gamma) {
  return solve_robust(build_rkp_delta_cc(ctx.inst, ctx.part, delta, gamma), ctx.inst,
                      ctx.part);
}

void require_study(const ExperimentPlan& plan, Study s) {
  plan.validate();
  if (plan.study != s) {
    throw std::invalid_argument(std::string("plan is for study '") + to_string(plan.study) +
                                "', expected '" + to_string(s) + "'");
  }
}

}  // namespace

const char* to_string(Study s) {
  switch (s) {
    case Study::kDeltaSweep:
      return "delta";
    case Study::kDeltaCCSweep:
      return "cc";
    case Study::kSelectionStudy:
      return "selection";
    case Study::kBoundStudy:
      return "bound";
  }
  return "unknown";
}

std::optional<Study> parse_study(std::string_view text) {
  for (Study s : {Study::kDeltaSweep, Study::kDeltaCCSweep, Study::kSelectionStudy,
                  Study::kBoundStudy}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

ExperimentPlan ExperimentPlan::defaults(Study study) {
  ExperimentPlan p;
  p.study = study;
  switch (study) {
    case Study::kDeltaSweep:
      p.u_grid = {0.01, 0.03, 0.05, 0.07, 0.09};
      p.delta_grid = {0.0, 0.01, 0.02, 0.03, 0.04, 0.05};
      p.p_grid = {1.0};
      break;
    case Study::kDeltaCCSweep:
      p.u_grid = {0.09};
      p.delta_grid = {0.0, 0.01, 0.02, 0.03, 0.04, 0.05};
      p.p_grid = {0.4, 0.6, 0.8};
      break;
    case Study::kSelectionStudy:
      p.u_grid = {0.25};
      p.delta_grid = {0.10};
      p.p_grid = {0.8};
      break;
    case Study::kBoundStudy:
      p.u_grid = {0.05, 0.15, 0.25};
      p.delta_grid = {0.0};
      p.p_grid = {0.4, 0.6, 0.8};
      break;
  }
  return p;
}

void ExperimentPlan::validate() const {
  if (replications == 0 || n == 0) throw std::invalid_argument("replications and n must be >= 1");
  if (u_grid.empty() || delta_grid.empty() || p_grid.empty()) {
    throw std::invalid_argument("every grid must be nonempty");
  }
  if (cost_range.lo > cost_range.hi || weight_range.lo > weight_range.hi) {
    throw std::invalid_argument("empty cost or weight range");
  }
  if (!(capacity_fraction > 0.0) || !std::isfinite(capacity_fraction)) {
    throw std::invalid_argument("capacity fraction must be positive");
  }
  for (double u : u_grid) {
    if (!is_fraction(u)) throw std::invalid_argument("u grid values must lie in [0, 1]");
  }
  for (double p : p_grid) {
    if (!is_fraction(p)) throw std::invalid_argument("p grid values must lie in [0, 1]");
  }
  for (double d : delta_grid) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("delta grid values must be >= 0");
  }
  if (!is_fraction(flip_p) || !is_fraction(flip_q)) {
    throw std::invalid_argument("flip probabilities must lie in [0, 1]");
  }
  if (bound_trials == 0) throw std::invalid_argument("bound trials must be >= 1");
}

std::size_t uncertain_count(double u, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::llround(u * static_cast<double>(n)));
  return std::clamp<std::size_t>(k, 1, n);
}

std::size_t gamma_for(double p, std::size_t num_uncertain) {
  if (num_uncertain == 0) throw std::invalid_argument("empty uncertain set");
  const auto g = static_cast<std::size_t>(std::llround(p * static_cast<double>(num_uncertain)));
  return std::clamp<std::size_t>(g, 1, num_uncertain);
}

BlpInstance generate_instance(const ExperimentPlan& plan, std::size_t replication) {
  plan.validate();
  std::mt19937_64 rng(derive_seed(plan.seed, {kInstanceStream, replication}));
  std::uniform_int_distribution<int> cost(plan.cost_range.lo, plan.cost_range.hi);
  std::uniform_int_distribution<int> weight(plan.weight_range.lo, plan.weight_range.hi);
  std::vector<double> c(plan.n), a(plan.n);
  for (auto& v : c) v = cost(rng);
  for (auto& v : a) v = weight(rng);
  double total = 0.0;
  for (double v : a) total += v;
  return BlpInstance(std::move(c), {std::move(a)}, {plan.capacity_fraction * total},
                     Sense::kMaximize);
}

std::pair<BlpInstance, UncertaintyPartition> generate_instance(const ExperimentPlan& plan,
                                                               std::size_t replication,
                                                               double u) {
  BlpInstance inst = generate_instance(plan, replication);
  std::vector<std::size_t> uncertain(uncertain_count(u, plan.n));
  for (std::size_t i = 0; i < uncertain.size(); ++i) uncertain[i] = i;
  UncertaintyPartition part(plan.n, std::move(uncertain));
  return {std::move(inst), std::move(part)};
}

ResultsTable run_delta_sweep(const ExperimentPlan& plan) {
  require_study(plan, Study::kDeltaSweep);
  return run_units(plan, [&](const Unit& unit) {
    const UnitContext ctx = make_context(plan, unit);
    ResultsTable rows{baseline_row(plan, unit, ctx)};
    for (double df : plan.delta_grid) {
      const double delta = df * ctx.inst.rhs()[0];
      const RobustSolution sol = solve_delta(ctx, delta);
      rows.push_back(robust_row(plan, unit, ctx, sol, df, delta, 1.0,
                                ctx.part.uncertain().size(), "robust"));
    }
    return rows;
  });
}

ResultsTable run_delta_cc_sweep(const ExperimentPlan& plan) {
  require_study(plan, Study::kDeltaCCSweep);
  return run_units(plan, [&](const Unit& unit) {
    const UnitContext ctx = make_context(plan, unit);
    ResultsTable rows{baseline_row(plan, unit, ctx)};
    for (double p : plan.p_grid) {
      const std::size_t gamma = gamma_for(p, ctx.part.uncertain().size());
      for (double df : plan.delta_grid) {
        const double delta = df * ctx.inst.rhs()[0];
        const RobustSolution sol = solve_cc(ctx, delta, gamma);
        rows.push_back(robust_row(plan, unit, ctx, sol, df, delta, p, gamma, "robust"));
      }
    }
    return rows;
  });
}

ResultsTable run_selection_study(const ExperimentPlan& plan) {
  require_study(plan, Study::kSelectionStudy);
  static const char* kNames[] = {"sp1", "sp2", "sp3", "sp4", "sp5", "sp6", "sp7", "sp8"};
  return run_units(plan, [&](const Unit& unit) {
    const UnitContext ctx = make_context(plan, unit);
    ResultsTable rows{baseline_row(plan, unit, ctx)};
    const std::size_t nu = ctx.part.uncertain().size();
    for (double p : plan.p_grid) {
      const std::size_t gamma = gamma_for(p, nu);
      for (double df : plan.delta_grid) {
        const double delta = df * ctx.inst.rhs()[0];
        const RobustConfig cfg = RobustConfig::uniform(1, delta);
        const RobustSolution sets[2] = {solve_delta(ctx, delta), solve_cc(ctx, delta, gamma)};
        for (int s = 0; s < 2; ++s) {
          const RobustSolution& sol = sets[s];
          const double cons = s == 0 ? 1.0 : p;
          const std::size_t g = s == 0 ? nu : gamma;
          rows.push_back(robust_row(plan, unit, ctx, sol, df, delta, cons, g, "robust"));
          for (int k = 0; k < 4; ++k) {
            ResultRow row = robust_row(plan, unit, ctx, sol, df, delta, cons, g, kNames[4 * s + k]);
            if (!sol.optimal()) {
              rows.push_back(std::move(row));
              continue;
            }
            const auto picked =
                select(static_cast<Selector>(k + 1), ctx.inst, ctx.part, sol, cfg);
            if (picked) {
              fill_metrics(row, ctx, *picked);
            } else {
              row = blank_row(plan, unit, ctx);
              row.kind = kNames[4 * s + k];
              row.source = to_string(sol.provenance);
              row.status = "not-found";
              row.delta_fraction = df;
              row.delta = delta;
              row.conservatism = cons;
              row.gamma_cap = g;
              row.robust_level = sol.gamma;
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    return rows;
  });
}

ResultsTable run_bound_study(const ExperimentPlan& plan) {
  require_study(plan, Study::kBoundStudy);
  return run_units(plan, [&](const Unit& unit) {
    const UnitContext ctx = make_context(plan, unit);
    ResultsTable rows{baseline_row(plan, unit, ctx)};
    const std::size_t nu = ctx.part.uncertain().size();
    for (std::size_t pi = 0; pi < plan.p_grid.size(); ++pi) {
      const double p = plan.p_grid[pi];
      const std::size_t gamma = gamma_for(p, nu);
      for (std::size_t di = 0; di < plan.delta_grid.size(); ++di) {
        const double df = plan.delta_grid[di];
        const double delta = df * ctx.inst.rhs()[0];
        const RobustSolution sol = solve_cc(ctx, delta, gamma);
        ResultRow row = robust_row(plan, unit, ctx, sol, df, delta, p, gamma, "robust");
        if (sol.optimal()) {
          const FlipModel fm =
              FlipModel::from_solution(sol.x_star, ctx.part, plan.flip_p, plan.flip_q);
          const RobustConfig cfg = RobustConfig::uniform(1, delta, gamma);
          const auto est = empirical_violation_rate(
              sol, ctx.inst, ctx.part, cfg, fm, plan.bound_trials,
              derive_seed(plan.seed, {kMonteCarloStream, unit.rep, unit.ui, pi, di}));
          row.theoretical = infeasibility_upper_bound(fm, gamma);
          row.empirical = est.rate;
          row.difference = row.theoretical - row.empirical;
        }
        rows.push_back(std::move(row));
      }
    }
    return rows;
  });
}

ResultsTable run_study(const ExperimentPlan& plan) {
  switch (plan.study) {
    case Study::kDeltaSweep:
      return run_delta_sweep(plan);
    case Study::kDeltaCCSweep:
      return run_delta_cc_sweep(plan);
    case Study::kSelectionStudy:
      return run_selection_study(plan);
    case Study::kBoundStudy:
      return run_bound_study(plan);
  }
  throw std::invalid_argument("unknown study");
}

std::size_t workers_from_env(std::size_t fallback) {
  const char* env = std::getenv("RBIU_WORKERS");
  if (!env || !*env) return fallback;
  std::size_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end || v == 0) return fallback;
  return v;
}

}  // namespace rbiu
