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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simauct/benchmarks.hpp"
#include "simauct/evaluator.hpp"
#include "simauct/report.hpp"
#include "simauct/solver.hpp"

namespace simauct {

// Cutoff parameters beta[i][j] with the budget share b. The two budget
// conditions are checked against the interim allocation in use; a violated
// condition flags the instance rather than failing hard.
struct BetaMatrix {
  std::vector<std::vector<double>> beta;
  double b = 0.2;
  bool condition1_ok = true;  // per item: sum_i Pr[V_ij >= beta_ij] <= b
  bool condition2_ok = true;  // per (i,j): sum_t f*pi <= Pr[V_ij >= beta_ij]/b
  double worst_violation = 0.0;
  std::vector<std::string> violations;

  bool verified() const { return condition1_ok && condition2_ok; }
};

// Per-bidder price cutoffs and the induced per-type item sets.
struct Cutoffs {
  std::vector<double> c;              // smallest x with sum_j Pr[V >= beta + x] <= 1/2
  std::vector<double> tau;            // smallest x with sum_j Pr[V >= max(beta, x)] <= 1/2
  std::vector<ItemSet> low_beta_set;  // A_i = {j : beta_ij <= tau_i}
  std::vector<std::vector<ItemSet>> above_price;  // T_i(t) = {j : V >= beta + c_i}
  std::vector<std::vector<ItemSet>> core_set;     // C_i(t) = complement of above_price
  std::vector<std::vector<ItemSet>> truncated;    // Y_i(t) = {j : V < tau_i}
  // Discrete-atom gaps: 1/2 minus the achieved sums at the chosen cutoffs.
  std::vector<double> c_gap;
  std::vector<double> tau_gap;         // with weak inequality at tau
  std::vector<double> tau_gap_strict;  // with strict inequality (V > max(beta, tau))
};

// The decomposition of the optimal revenue plus everything derived from it.
struct ReserveCatalogEntry {
  std::string name;  // "beta_plus_c", "beta_or_tau", "beta_plus_best_tail_price"
  std::vector<std::vector<double>> reserves;
  bool condition1_ok = true;  // per item: sum_i Pr[V >= r] <= b
  bool condition2_ok = true;  // per bidder: sum_j Pr[V >= r] <= 1/2
  double reserve_mass = 0.0;  // sum_ij r_ij * Pr[V >= r_ij]
};

struct RpEquilibrium {
  int catalog_index = 0;
  uint64_t seed = 0;
  double revenue = 0.0;
  double epsilon = 0.0;
};

struct RpLowerResult {
  double value = 0.0;       // max over catalog entries of worst found revenue
  int best_entry = -1;
  std::vector<RpEquilibrium> equilibria;
  std::vector<double> worst_revenue_per_entry;
  StrategyProfile best_profile;  // a worst-revenue equilibrium of the best entry
  double best_profile_epsilon = 0.0;
};

struct DecompositionReport {
  BetaMatrix beta;
  Cutoffs cutoffs;
  double single = 0.0;
  double tail = 0.0;
  double core = 0.0;
  double core_truncated = 0.0;  // the tau-truncated core
  double ef_rev = 0.0;          // sup over fee vectors of expected fee revenue
  std::vector<double> median_fees;
  std::vector<double> mu_hat_mean;  // E[mu_hat_i(t, all items)] per bidder
  std::vector<ReserveCatalogEntry> catalog;
  RpLowerResult rp_lower;
  double base_revenue = 0.0;  // Rev at the base equilibrium
  double base_epsilon = 0.0;
};

BetaMatrix select_beta(const Instance& instance, const OptResult& opt, double b);
Cutoffs compute_cutoffs(const Instance& instance, const BetaMatrix& beta);

double single_term(const Instance& instance, const OptResult& opt, const BetaMatrix& beta);
double tail_term(const Instance& instance, const BetaMatrix& beta, const Cutoffs& cutoffs);
// Returns {core, truncated core}.
std::pair<double, double> core_terms(const Instance& instance, const OptResult& opt,
                                     const Cutoffs& cutoffs);

// mu_hat_i(t, all) = mu(i, t, Y_i(t)) at the base profile; one value per
// (bidder, type).
std::vector<std::vector<double>> mu_hat_values(const Evaluator& eval, const StrategyProfile& s,
                                               const Cutoffs& cutoffs);

// Fee e_i = inf-median of mu_hat_i over the type distribution.
std::vector<double> entry_fees_from_median(const Instance& instance,
                                           const std::vector<std::vector<double>>& mu_hat);

// sup_e sum_i e_i Pr[u_i >= e_i] over the discrete interim-utility atoms.
double ef_rev(const Instance& instance, const std::vector<std::vector<double>>& interim_utilities);

std::vector<ReserveCatalogEntry> reserves_catalog(const Instance& instance, const BetaMatrix& beta,
                                                  const Cutoffs& cutoffs);

RpLowerResult rprev_lower(const Instance& instance, const BidGrid& grid, RuleKind rule,
                          const std::vector<ReserveCatalogEntry>& catalog,
                          const SolverConfig& solver_config, const std::vector<uint64_t>& seeds);

// ---- verification checks ----

// For every (bidder, type, S): mu + Rev(S) >= c_eff * v(t, S) - slack.
CheckResult check_c_efficiency(const Evaluator& eval, const StrategyProfile& s, double c_eff,
                               double slack, std::optional<ItemSet> restrict_to = std::nullopt);

// The randomized max-bid deviation recomputation of the same lower bound:
// mu(t,S) >= deviation utility >= c_eff*v(S) - Rev(S) - |S|*shift.
CheckResult check_deviation_bound(const Evaluator& eval, const StrategyProfile& s, double shift);

// Regret certificates transform consistently under the entry-fee wrapper
// (utilities map through max{delta*u, u - (1-delta)e}).
CheckResult check_entry_fee_invariance(const Evaluator& eval, const StrategyProfile& s,
                                       const RegretCertificate& cert,
                                       const std::vector<double>& fees, double delta);

// OPT <= 2*single + 4*tail + 4*core.
CheckResult check_rev_upper(double opt, const DecompositionReport& d);

// OPT <= 42*RevEF + 189*RevRP + budget, at c_eff = 1/2 instantiation.
CheckResult check_main_bound(double opt, double rev_ef, double rev_rp, double budget);

// Reserve floor: (2/(1-b))*Rev + n*eps >= sum r*Pr[V >= r] for one found
// equilibrium of one catalog entry.
CheckResult check_reserve_floor(const Instance& instance, const ReserveCatalogEntry& entry,
                                double revenue, double epsilon, double b);

// E[g] <= 2*median + 2.5*lipschitz for a subadditive-over-independent-items
// bidder model, by exhaustive enumeration.
CheckResult check_concentration(const BidderModel& model, const Budget& budget = Budget{});

// OPT(D') >= OPT(D)/229 for coupled dominating distributions; the coupling
// (joint pmf over type-index pairs) is validated for marginals + dominance.
CheckResult check_revenue_monotonicity(const Instance& base, const Instance& dominating,
                                       const std::vector<std::vector<std::vector<double>>>& coupling,
                                       const Budget& budget = Budget{}, double* ratio = nullptr);

// Numeric chains on the decomposition (each one printed with its own slack):
// the core gap, the tau sum, the truncated-utility lower bound and the
// median-fee upper bound.
std::vector<CheckResult> check_decomposition_chains(const Instance& instance,
                                                    const DecompositionReport& d, double c_eff,
                                                    double grid_eta);

// Structure of the restricted-participation optimum at a profile:
// monotonicity, subadditivity within grid slack, and the tau-Lipschitz
// property of its truncation, all by exhaustive enumeration.
std::vector<CheckResult> check_mu_structure(const Evaluator& eval, const StrategyProfile& s,
                                            const Cutoffs& cutoffs);

}  // namespace simauct
