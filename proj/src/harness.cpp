// Copyright 2026 The simauct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simauct/harness.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <tuple>
#include <iostream>

#include "simauct/generator.hpp"

namespace simauct {

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name, std::ios::binary);
  out << content;
}

void write_json(const std::string& dir, const std::string& name, const Json& j) {
  write_file(dir, name, j.dump(2) + "\n");
}

SolverConfig solver_config_from(const ScenarioConfig& config, const BidGrid& grid) {
  SolverConfig sc;
  sc.method = config.solver.method;
  sc.epsilon_target = epsilon_target_for(config, grid);
  sc.max_iters = config.solver.max_iters;
  sc.certificate_interval = config.solver.certificate_interval;
  if (config.solver.initial_profile.has_value()) {
    sc.initial_profile = profile_from_json(grid, *config.solver.initial_profile);
  }
  return sc;
}

double timed(CheckResult* check, std::chrono::steady_clock::time_point start) {
  auto end = std::chrono::steady_clock::now();
  check->runtime_sec = std::chrono::duration<double>(end - start).count();
  return check->runtime_sec;
}

// Fees charged against the base equilibrium's interim utilities: the
// guaranteed lower bound max{Rev(A), (1-delta)*fee revenue at the median
// fees} (either all-zero fees or the median fees can be posted).
double rev_ef_lower_bound(const Instance& inst, const std::vector<double>& fees, double delta,
                          const std::vector<std::vector<double>>& interim_utilities,
                          double base_revenue) {
  double fee_revenue = 0.0;
  for (int i = 0; i < inst.num_bidders(); ++i) {
    double p = 0.0;
    for (int t = 0; t < inst.num_types(i); ++t) {
      if (interim_utilities[i][t] >= fees[i] - 1e-12) p += inst.type_prob(i, t);
    }
    fee_revenue += fees[i] * p;
  }
  return std::max(base_revenue, (1.0 - delta) * fee_revenue);
}

std::vector<std::vector<double>> interim_utils(const Evaluator& eval, const StrategyProfile& s) {
  const Instance& inst = eval.instance();
  std::vector<std::vector<double>> out(inst.num_bidders());
  for (int i = 0; i < inst.num_bidders(); ++i) {
    OppAtoms opp = eval.opponent_atoms(i, s);
    out[i].resize(inst.num_types(i));
    for (int t = 0; t < inst.num_types(i); ++t) {
      out[i][t] = eval.utility_of_mixture(i, t, s.strategies[i][t], opp);
    }
  }
  return out;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& config, const HarnessOptions& options) {
  const Instance& inst = *config.instance;
  ScenarioRun run;
  run.grid = grid_for(config);
  run.mechanism.kind = config.mechanism.rule;
  if (config.mechanism.wrapper == WrapperKind::kReserve && !config.mechanism.reserves_derived) {
    run.mechanism.reserves = config.mechanism.reserves;
  }

  SolverConfig sc = solver_config_from(config, run.grid);
  std::vector<uint64_t> seeds = config.solver.seeds;
  if (options.seed_override.has_value()) seeds = {*options.seed_override};
  run.base = solve_best_of(inst, run.grid, run.mechanism, sc, seeds);

  std::string lp_text;
  run.opt = opt_revenue(inst, config.budget, options.exact_rational,
                        options.emit_lp_path.empty() ? nullptr : &lp_text);
  if (!options.emit_lp_path.empty()) {
    fs::path target(options.emit_lp_path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    out << lp_text;
  }
  run.opt_welfare_value = opt_welfare(inst, config.budget);

  DecompositionReport& d = run.decomposition;
  d.beta = select_beta(inst, run.opt, config.budget_b);
  d.cutoffs = compute_cutoffs(inst, d.beta);
  d.single = single_term(inst, run.opt, d.beta);
  d.tail = tail_term(inst, d.beta, d.cutoffs);
  std::tie(d.core, d.core_truncated) = core_terms(inst, run.opt, d.cutoffs);

  Evaluator eval(inst, run.grid, run.mechanism, config.budget);
  d.base_revenue = eval.revenue(run.base.profile);
  d.base_epsilon = run.base.certificate.epsilon;
  auto mu_hat = mu_hat_values(eval, run.base.profile, d.cutoffs);
  d.mu_hat_mean.assign(inst.num_bidders(), 0.0);
  for (int i = 0; i < inst.num_bidders(); ++i) {
    for (int t = 0; t < inst.num_types(i); ++t) {
      d.mu_hat_mean[i] += inst.type_prob(i, t) * mu_hat[i][t];
    }
  }
  d.median_fees = config.mechanism.fees_derived ? entry_fees_from_median(inst, mu_hat)
                                                : config.mechanism.fees;
  auto utils = interim_utils(eval, run.base.profile);
  d.ef_rev = ef_rev(inst, utils);
  d.catalog = reserves_catalog(inst, d.beta, d.cutoffs);
  if (config.mechanism.wrapper == WrapperKind::kReserve && !config.mechanism.reserves_derived) {
    ReserveCatalogEntry explicit_entry;
    explicit_entry.name = "config_reserves";
    explicit_entry.reserves = config.mechanism.reserves;
    d.catalog.push_back(explicit_entry);
  }
  SolverConfig rp_cfg = sc;
  d.rp_lower = rprev_lower(inst, run.grid, config.mechanism.rule, d.catalog, rp_cfg, seeds);

  run.rev_ef = rev_ef_lower_bound(inst, d.median_fees, config.mechanism.delta, utils,
                                  d.base_revenue);
  return run;
}

int cmd_solve(const ScenarioConfig& config, const HarnessOptions& options) {
  const Instance& inst = *config.instance;
  BidGrid grid = grid_for(config);

  if (config.mechanism.wrapper == WrapperKind::kReserve && config.mechanism.reserves_derived) {
    // Derived reserves need the full pipeline: solve the base game, build
    // the catalog, and report the worst equilibrium of the best entry.
    ScenarioRun run = run_scenario(config, options);
    const RpLowerResult& rp = run.decomposition.rp_lower;
    if (rp.best_entry < 0) throw ConfigError("no reserve catalog entry available");
    write_json(options.out_dir, "profile.json", profile_to_json(run.grid, rp.best_profile));
    Evaluator eval(inst, run.grid,
                   EvalMechanism{config.mechanism.rule,
                                 run.decomposition.catalog[rp.best_entry].reserves},
                   config.budget);
    write_json(options.out_dir, "certificate.json",
               certificate_to_json(run.grid, eval.certificate(rp.best_profile)));
    write_json(options.out_dir, "reserves.json",
               Json{{"name", run.decomposition.catalog[rp.best_entry].name},
                    {"reserves", run.decomposition.catalog[rp.best_entry].reserves}});
    if (!options.quiet) {
      std::cout << "solved reserve auction (" << run.decomposition.catalog[rp.best_entry].name
                << "): epsilon=" << rp.best_profile_epsilon << " revenue=" << rp.value << "\n";
    }
    return kExitOk;
  }

  // Entry fees leave the equilibrium set unchanged, so the base game's
  // profile is the right answer for that wrapper too.
  EvalMechanism mech;
  mech.kind = config.mechanism.rule;
  if (config.mechanism.wrapper == WrapperKind::kReserve) {
    mech.reserves = config.mechanism.reserves;
  }
  SolverConfig sc = solver_config_from(config, grid);
  std::vector<uint64_t> seeds = config.solver.seeds;
  if (options.seed_override.has_value()) seeds = {*options.seed_override};
  SolveResult res = solve_best_of(inst, grid, mech, sc, seeds);

  write_json(options.out_dir, "profile.json", profile_to_json(grid, res.profile));
  write_json(options.out_dir, "certificate.json", certificate_to_json(grid, res.certificate));
  if (!options.quiet) {
    std::cout << "solved: epsilon=" << res.certificate.epsilon << " method=" << res.method_used
              << " iterations=" << res.iterations
              << (res.reached_target ? " (target reached)" : "") << "\n";
  }
  return kExitOk;
}

int cmd_opt(const ScenarioConfig& config, const HarnessOptions& options) {
  std::string lp_text;
  OptResult opt = opt_revenue(*config.instance, config.budget, options.exact_rational,
                              options.emit_lp_path.empty() ? nullptr : &lp_text);
  if (!options.emit_lp_path.empty()) {
    fs::path target(options.emit_lp_path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    out << lp_text;
  }
  double welfare = opt_welfare(*config.instance, config.budget);
  Json j;
  j["opt_revenue"] = opt.revenue;
  j["opt_welfare"] = welfare;
  j["exact_rational"] = opt.exact;
  j["lp_pivots"] = opt.lp_pivots;
  write_json(options.out_dir, "opt.json", j);
  if (!options.quiet) std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_decompose(const ScenarioConfig& config, const HarnessOptions& options) {
  ScenarioRun run = run_scenario(config, options);
  Json j = decomposition_to_json(run.decomposition);
  j["opt_revenue"] = run.opt.revenue;
  j["opt_welfare"] = run.opt_welfare_value;
  j["rev_ef"] = run.rev_ef;
  write_json(options.out_dir, "decomposition.json", j);
  if (!options.quiet) std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const ScenarioConfig& config, const HarnessOptions& options) {
  const Instance& inst = *config.instance;
  std::vector<Json> checks = config.checks;
  if (checks.empty()) {
    for (const char* name :
         {"c_efficiency", "deviation_bound", "entry_fee_invariance", "decomposition_upper",
          "main_revenue_bound", "reserve_floor", "chains", "mu_structure", "welfare_bound",
          "copies_bound"}) {
      checks.push_back(Json{{"name", name}});
    }
  }
  if (!options.only_checks.empty()) {
    std::vector<Json> filtered;
    for (const Json& c : checks) {
      for (const std::string& keep : options.only_checks) {
        if (c.at("name").get<std::string>() == keep) filtered.push_back(c);
      }
    }
    checks = std::move(filtered);
  }

  ScenarioRun run = run_scenario(config, options);
  Evaluator eval(inst, run.grid, run.mechanism, config.budget);
  const double eta = run.grid.eta();
  const int m = inst.num_items();
  const double eps = run.base.certificate.epsilon;
  const double c_eff = 0.5;

  VerificationReport report;
  for (const Json& cj : checks) {
    std::string name = cj.at("name").get<std::string>();
    auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> produced;
    if (name == "c_efficiency") {
      double c = cj.value("c", c_eff);
      double slack = cj.value("slack", eps * m + eta * m);
      produced.push_back(check_c_efficiency(eval, run.base.profile, c, slack));
    } else if (name == "deviation_bound") {
      produced.push_back(check_deviation_bound(eval, run.base.profile, eta));
    } else if (name == "entry_fee_invariance") {
      double delta = cj.value("delta", config.mechanism.delta);
      std::vector<double> fees = run.decomposition.median_fees;
      if (cj.contains("fees")) fees = cj.at("fees").get<std::vector<double>>();
      produced.push_back(
          check_entry_fee_invariance(eval, run.base.profile, run.base.certificate, fees, delta));
    } else if (name == "decomposition_upper") {
      produced.push_back(check_rev_upper(run.opt.revenue, run.decomposition));
    } else if (name == "main_revenue_bound") {
      // Fee-side wobble scales with 42 (epsilon plus one grid step per
      // item); the reserve side only wobbles with the equilibrium epsilon.
      double budget = 42.0 * inst.num_bidders() * (eps + eta * m) +
                      189.0 * inst.num_bidders() * eps;
      produced.push_back(
          check_main_bound(run.opt.revenue, run.rev_ef, run.decomposition.rp_lower.value, budget));
    } else if (name == "reserve_floor") {
      for (const RpEquilibrium& q : run.decomposition.rp_lower.equilibria) {
        const ReserveCatalogEntry& entry = run.decomposition.catalog[q.catalog_index];
        if (!entry.condition1_ok || !entry.condition2_ok) continue;
        CheckResult r = check_reserve_floor(inst, entry, q.revenue, q.epsilon, config.budget_b);
        r.seeds = {q.seed};
        produced.push_back(std::move(r));
      }
    } else if (name == "chains") {
      produced = check_decomposition_chains(inst, run.decomposition, c_eff, eta);
    } else if (name == "mu_structure") {
      produced = check_mu_structure(eval, run.base.profile, run.decomposition.cutoffs);
    } else if (name == "welfare_bound") {
      double wel = eval.welfare(run.base.profile);
      produced.push_back(CheckResult::of("welfare_bound",
                                         "welfare(s) >= c*opt_welfare - n*(eps + m*eta)",
                                         c_eff * run.opt_welfare_value, wel,
                                         inst.num_bidders() * (eps + m * eta)));
    } else if (name == "copies_bound") {
      CopiesResult copies = copies_opt(inst, config.budget);
      produced.push_back(CheckResult::of("copies_bound", "single <= copies benchmark",
                                         run.decomposition.single, copies.revenue, kLpFeasTol));
    } else if (name == "concentration") {
      int count = cj.value("count", 50);
      Rng rng(static_cast<uint64_t>(cj.value("seed", 0)));
      CheckResult agg;
      bool ok = true;
      for (int k = 0; k < count; ++k) {
        BidderModel model = random_subadditive_model(rng, 3);
        CheckResult r = check_concentration(model, config.budget);
        if (!r.pass) ok = false;
        if (k == 0 || r.margin < agg.margin) agg = r;
      }
      agg.name = "concentration";
      agg.witness = "count=" + std::to_string(count) + " worst shown";
      agg.pass = ok;
      produced.push_back(agg);
    } else if (name == "revenue_monotonicity") {
      double shift = cj.value("shift", 1.0);
      ShiftedPair pair = shifted_dominating_pair(inst, shift);
      double ratio = 0.0;
      CheckResult r =
          check_revenue_monotonicity(inst, pair.shifted, pair.coupling, config.budget, &ratio);
      r.witness += " ratio=" + std::to_string(ratio);
      produced.push_back(std::move(r));
    } else {
      throw ConfigError("unknown check: " + name);
    }
    bool expect_fail = cj.value("expect", std::string("pass")) == "fail";
    for (CheckResult& r : produced) {
      r.expected_fail = expect_fail;
      timed(&r, start);
      report.checks.push_back(std::move(r));
    }
  }

  if (options.mc_samples > 0) {
    // Monte Carlo cross-check of the exact engine on the base profile: the
    // estimate must sit within five standard errors of the expectation.
    auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string witness;
    uint64_t mc_seed = options.seed_override.value_or(0);
    for (int i = 0; i < inst.num_bidders(); ++i) {
      OppAtoms opp = eval.opponent_atoms(i, run.base.profile);
      for (int t = 0; t < inst.num_types(i); ++t) {
        BidVec bid = run.base.profile.strategies[i][t].atoms.front().first;
        double exact = eval.utility(i, t, bid, opp);
        auto [estimate, se] = eval.utility_mc(i, t, bid, run.base.profile, options.mc_samples,
                                              mc_seed + 1000 * i + t);
        double excess = std::abs(estimate - exact) - 5.0 * se;
        if (excess > worst) {
          worst = excess;
          witness = "bidder " + std::to_string(i) + " type " + std::to_string(t);
        }
      }
    }
    CheckResult mc = CheckResult::of("mc_consistency",
                                     "|MC estimate - exact utility| <= 5 standard errors", worst,
                                     0.0, 1e-6, witness);
    timed(&mc, start);
    report.checks.push_back(std::move(mc));
  }

  write_json(options.out_dir, "report.json", report_to_json(report));
  write_file(options.out_dir, "report.csv", report_to_csv(report));
  {
    std::ostringstream timings;
    timings << "name,runtime_sec\n";
    for (const CheckResult& c : report.checks) {
      timings << c.name << "," << c.runtime_sec << "\n";
    }
    write_file(options.out_dir, "timings.csv", timings.str());
  }
  if (!options.quiet) {
    for (const CheckResult& c : report.checks) {
      std::cout << (c.satisfied() ? "PASS" : "FAIL") << " " << c.name << " margin=" << c.margin
                << (c.expected_fail ? " (expected-fail)" : "")
                << (c.applicable ? "" : " (recorded)") << "\n";
    }
  }
  return report.all_satisfied() ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const ScenarioConfig& config, const HarnessOptions& options) {
  const Json& raw = config.raw;
  Json sweep = raw.value("sweep", Json::object());
  int count = sweep.value("instances", 20);
  GeneratorParams params;
  params.bidders = sweep.value("bidders", 2);
  params.items = sweep.value("items", 2);
  params.max_atoms = sweep.value("max_atoms", 3);
  params.iid_bidders = sweep.value("iid_bidders", false);
  params.mass_grid = sweep.value("mass_grid", 0);
  if (sweep.contains("families")) {
    params.families = sweep.at("families").get<std::vector<int>>();
  }
  uint64_t master_seed = sweep.value("master_seed", 0);
  if (options.seed_override.has_value()) master_seed = *options.seed_override;

  std::ostringstream csv;
  csv.precision(17);
  csv << "instance,seed,opt,opt_welfare,base_revenue,base_epsilon,ef_rev,rev_ef,rev_rp,"
         "beta_verified,bound_rhs,ratio,bound_ok\n";
  Rng master(master_seed);
  bool all_ok = true;
  std::vector<double> ratios;
  for (int k = 0; k < count; ++k) {
    Rng rng = master.fork(k);
    Instance inst = random_instance(rng, params);
    ScenarioConfig sub = config;
    sub.instance = std::make_shared<Instance>(inst);
    sub.checks.clear();
    ScenarioRun run = run_scenario(sub, options);
    double rhs = 42.0 * run.rev_ef + 189.0 * run.decomposition.rp_lower.value;
    double eps = run.base.certificate.epsilon;
    double budget = 42.0 * inst.num_bidders() * (eps + run.grid.eta() * inst.num_items()) +
                    189.0 * inst.num_bidders() * eps;
    double ratio = rhs > 0.0 ? run.opt.revenue / rhs : 0.0;
    ratios.push_back(ratio);
    bool ok = run.opt.revenue <= rhs + budget;
    if (!ok) all_ok = false;
    csv << k << "," << master_seed << "," << run.opt.revenue << "," << run.opt_welfare_value
        << "," << run.decomposition.base_revenue << "," << eps << ","
        << run.decomposition.ef_rev << "," << run.rev_ef << ","
        << run.decomposition.rp_lower.value << ","
        << (run.decomposition.beta.verified() ? 1 : 0) << "," << rhs << "," << ratio << ","
        << (ok ? 1 : 0) << "\n";
  }
  write_file(options.out_dir, "sweep.csv", csv.str());
  if (!ratios.empty()) {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&sorted](double q) {
      size_t idx = static_cast<size_t>(q * (sorted.size() - 1));
      return sorted[idx];
    };
    Json summary;
    summary["instances"] = ratios.size();
    summary["ratio_min"] = sorted.front();
    summary["ratio_q25"] = quantile(0.25);
    summary["ratio_median"] = quantile(0.5);
    summary["ratio_q75"] = quantile(0.75);
    summary["ratio_max"] = sorted.back();
    summary["all_within_bound"] = all_ok;
    write_json(options.out_dir, "sweep_summary.json", summary);
    if (!options.quiet) std::cout << summary.dump(2) << "\n";
  }
  if (!options.quiet) std::cout << csv.str();
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace simauct
