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

// rbiu: command-line front end for the robust solver and experiment harness.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rbiu/harness.hpp"
#include "rbiu/instance_io.hpp"
#include "rbiu/probability.hpp"
#include "rbiu/reformulation.hpp"
#include "rbiu/selection.hpp"
#include "rbiu/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInputError = 3;

using rbiu::BinarySolution;

std::vector<int> as_ints(const BinarySolution& x) {
  return std::vector<int>(x.begin(), x.end());
}

std::string bits(const BinarySolution& x) {
  std::string s;
  for (auto v : x) s += v ? '1' : '0';
  return s;
}

struct GenArgs {
  std::size_t n = 100;
  double u = 0.05;
  std::uint64_t seed = 1;
  std::size_t replication = 0;
  bool illustrative = false;
  std::string out;
};

struct SolveArgs {
  std::string path;
  bool illustrative = false;
  std::optional<double> delta;
  std::optional<double> delta_frac;
  std::optional<std::size_t> gamma;
  bool cc = false;
  std::string selector;
  std::string format = "text";
  bool log = false;
};

struct SweepArgs {
  std::string study;
  std::optional<std::size_t> replications;
  std::uint64_t seed = 1;
  std::string out;
  std::optional<std::size_t> n;
  std::vector<double> u_grid, delta_grid, p_grid;
  std::optional<std::size_t> trials;
};

struct BoundArgs {
  std::size_t u0 = 0;
  std::size_t u1 = 0;
  double p = 0.5;
  double q = 0.5;
  std::optional<std::size_t> gamma_cap;
};

int run_gen(const GenArgs& a) {
  std::string text;
  if (a.illustrative) {
    auto [inst, part] = rbiu::illustrative_instance();
    text = rbiu::instance_to_json(inst, part);
  } else {
    auto plan = rbiu::ExperimentPlan::defaults(rbiu::Study::kDeltaSweep);
    plan.n = a.n;
    plan.seed = a.seed;
    plan.u_grid = {a.u};
    auto [inst, part] = rbiu::generate_instance(plan, a.replication, a.u);
    text = rbiu::instance_to_json(inst, part);
  }
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + a.out + " for writing");
    f << text;
  }
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  auto [inst, part] = a.illustrative ? rbiu::illustrative_instance() : rbiu::load_instance(a.path);
  if (a.delta && a.delta_frac) throw std::invalid_argument("--delta and --delta-frac are exclusive");
  rbiu::RobustConfig cfg;
  for (std::size_t j = 0; j < inst.num_rows(); ++j) {
    double d = a.delta.value_or(0.0);
    if (a.delta_frac) d = *a.delta_frac * inst.rhs()[j];
    cfg.delta.push_back(d);
  }
  cfg.gamma_cap = a.gamma;
  if (a.gamma && !a.cc) throw std::invalid_argument("--gamma requires --cc");
  std::optional<rbiu::Selector> selector;
  if (!a.selector.empty()) {
    selector = rbiu::parse_selector(a.selector);
    if (!selector) throw std::invalid_argument("unknown selector '" + a.selector + "'");
  }

  const rbiu::MilpModel model = a.cc ? rbiu::build_rbiu_delta_cc(inst, part, cfg)
                                     : rbiu::build_rbiu_delta(inst, part, cfg);
  if (a.format == "lp") {
    std::cout << model.to_lp_string();
    return kExitOk;
  }
  rbiu::MilpOptions opts;
  if (a.log) opts.log = &std::cerr;
  const rbiu::RobustSolution sol = rbiu::solve_robust(model, inst, part, opts);

  std::optional<BinarySolution> picked;
  bool not_found = false;
  if (sol.optimal() && selector) {
    picked = rbiu::select(*selector, inst, part, sol, cfg, opts);
    not_found = !picked;
  }

  const auto dims = model.dimensions();
  if (a.format == "json") {
    nlohmann::json doc;
    doc["model"] = rbiu::to_string(model.provenance());
    doc["status"] = rbiu::to_string(sol.status);
    doc["binaries"] = dims.binaries;
    doc["constraints"] = dims.constraints;
    doc["nodes"] = sol.stats.nodes_explored;
    if (sol.optimal()) {
      doc["gamma"] = sol.gamma;
      doc["x_star"] = as_ints(sol.x_star);
      std::vector<std::size_t> u1;
      for (std::size_t i : part.uncertain()) u1.push_back(i + 1);
      doc["uncertain"] = u1;
    }
    if (selector) {
      doc["selector"] = rbiu::to_string(*selector);
      if (picked) {
        doc["selection"] = as_ints(*picked);
        doc["selection_objective"] = rbiu::evaluate_objective(inst, *picked);
        doc["selection_lhs"] = rbiu::evaluate_constraints(inst, *picked);
      } else {
        doc["selection"] = nullptr;
      }
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "model       " << rbiu::to_string(model.provenance()) << "\n"
              << "status      " << rbiu::to_string(sol.status) << "\n"
              << "size        " << dims.binaries << " binaries, " << dims.constraints
              << " constraints\n"
              << "nodes       " << sol.stats.nodes_explored << "\n";
    if (sol.optimal()) {
      std::cout << "gamma       " << sol.gamma << "\n"
                << "x*          " << bits(sol.x_star) << "  (uncertain positions free)\n";
    }
    if (selector) {
      std::cout << "selector    " << rbiu::to_string(*selector) << "\n";
      if (picked) {
        std::cout << "selection   " << bits(*picked) << "\n"
                  << "objective   " << rbiu::evaluate_objective(inst, *picked) << "\n";
        const auto lhs = rbiu::evaluate_constraints(inst, *picked);
        for (std::size_t j = 0; j < lhs.size(); ++j) {
          std::cout << "lhs[" << j + 1 << "]      " << lhs[j] << " (b = " << inst.rhs()[j]
                    << ")\n";
        }
      } else if (sol.optimal()) {
        std::cout << "selection   not found\n";
      }
    }
  }
  if (!sol.optimal() || not_found) return kExitInfeasible;
  return kExitOk;
}

int run_sweep(const SweepArgs& a) {
  const auto study = rbiu::parse_study(a.study);
  if (!study) throw std::invalid_argument("unknown study '" + a.study + "'");
  auto plan = rbiu::ExperimentPlan::defaults(*study);
  plan.seed = a.seed;
  if (a.replications) plan.replications = *a.replications;
  if (a.n) plan.n = *a.n;
  if (!a.u_grid.empty()) plan.u_grid = a.u_grid;
  if (!a.delta_grid.empty()) plan.delta_grid = a.delta_grid;
  if (!a.p_grid.empty()) plan.p_grid = a.p_grid;
  if (a.trials) plan.bound_trials = *a.trials;
  plan.workers = rbiu::workers_from_env(1);
  plan.validate();
  const auto table = rbiu::run_study(plan);
  if (a.out.empty()) {
    std::cout << rbiu::format_results(table);
  } else {
    rbiu::write_results(table, a.out);
  }
  return kExitOk;
}

int run_bound(const BoundArgs& a) {
  rbiu::FlipModel fm{a.u0, a.u1, a.p, a.q};
  fm.validate();
  if (fm.total() == 0) throw std::invalid_argument("need u0 + u1 >= 1");
  const std::size_t gamma = a.gamma_cap.value_or(fm.total());
  if (gamma > fm.total()) throw std::invalid_argument("--gamma-cap exceeds u0 + u1");
  std::cout << "k,pmf\n";
  for (std::size_t k = 0; k <= fm.total(); ++k) {
    std::printf("%zu,%.17g\n", k, rbiu::pmf_exact_flips(fm, k));
  }
  std::printf("bound(gamma=%zu),%.17g\n", gamma, rbiu::infeasibility_upper_bound(fm, gamma));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust binary programs under implementation uncertainty"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Emit an instance file (JSON)");
  g->add_option("--n", gen.n, "Number of items")->check(CLI::PositiveNumber);
  g->add_option("--u", gen.u, "Uncertain fraction of items")->check(CLI::Range(0.0, 1.0));
  g->add_option("--seed", gen.seed, "Base seed");
  g->add_option("--replication", gen.replication, "Replication index");
  g->add_flag("--illustrative", gen.illustrative, "Emit the ten-project example");
  g->add_option("--out", gen.out, "Output path (stdout if omitted)");

  SolveArgs sv;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("instance", sv.path, "Instance JSON file");
  s->add_flag("--illustrative", sv.illustrative, "Use the ten-project example");
  s->add_option("--delta", sv.delta, "Absolute slack added to every rhs")->check(CLI::NonNegativeNumber);
  s->add_option("--delta-frac", sv.delta_frac, "Slack as a fraction of each rhs")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--gamma", sv.gamma, "Cardinality budget (with --cc)")->check(CLI::PositiveNumber);
  s->add_flag("--cc", sv.cc, "Cardinality-constrained model");
  s->add_option("--selector", sv.selector, "sp1|sp2|sp3|sp4");
  s->add_option("--format", sv.format, "text|json|lp")
      ->check(CLI::IsMember({"text", "json", "lp"}));
  s->add_flag("--log", sv.log, "Branch-and-bound node log on stderr");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Run an experiment study (RBIU_WORKERS sets threads)");
  w->add_option("--study", sw.study, "delta|cc|selection|bound")
      ->required()
      ->check(CLI::IsMember({"delta", "cc", "selection", "bound"}));
  w->add_option("--replications", sw.replications, "Replications")->check(CLI::PositiveNumber);
  w->add_option("--seed", sw.seed, "Base seed");
  w->add_option("--out", sw.out, "Results CSV path (stdout if omitted)");
  w->add_option("--n", sw.n, "Items per instance")->check(CLI::PositiveNumber);
  w->add_option("--u-grid", sw.u_grid, "Uncertain fractions")->delimiter(',');
  w->add_option("--delta-grid", sw.delta_grid, "Slack fractions of b")->delimiter(',');
  w->add_option("--p-grid", sw.p_grid, "Conservatism fractions")->delimiter(',');
  w->add_option("--trials", sw.trials, "Monte Carlo trials (bound study)")
      ->check(CLI::PositiveNumber);

  BoundArgs bd;
  auto* b = app.add_subcommand("bound", "Flip-count pmf and violation bound");
  b->add_option("--u0", bd.u0, "Uncertain variables prescribed 0")->required();
  b->add_option("--u1", bd.u1, "Uncertain variables prescribed 1")->required();
  b->add_option("--p", bd.p, "P(a prescribed 0 stays 0)");
  b->add_option("--q", bd.q, "P(a prescribed 1 stays 1)");
  b->add_option("--gamma-cap", bd.gamma_cap, "Budget (defaults to u0 + u1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*g) return run_gen(gen);
    if (*s) {
      if (sv.path.empty() == !sv.illustrative) {
        throw std::invalid_argument("give exactly one of an instance path or --illustrative");
      }
      return run_solve(sv);
    }
    if (*w) return run_sweep(sw);
    if (*b) return run_bound(bd);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const rbiu::InstanceFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitInputError;
}
