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

#include <vector>

#include "simauct/instance.hpp"
#include "simauct/lp.hpp"

namespace simauct {

// Interim view of the optimal BIC, interim-IR mechanism: sigma[i][t][S] is
// the probability of bidder i with type t receiving exactly the set S;
// pi[i][t][j] the marginal per item.
struct OptResult {
  double revenue = 0.0;
  std::vector<std::vector<std::vector<double>>> sigma;
  std::vector<std::vector<std::vector<double>>> pi;
  long long lp_pivots = 0;
  bool exact = false;
};

// Revenue-optimal BIC mechanism by linear programming over deterministic
// allocations per type profile, with BIC and interim-IR rows. The solution
// is averaged over the instance's automorphisms, which canonicalizes vertex
// choice on symmetric instances. Throws BudgetExceeded when the LP would
// outgrow the budget; LP infeasibility signals a construction bug.
OptResult opt_revenue(const Instance& instance, const Budget& budget = Budget{},
                      bool exact_rational = false, std::string* lp_text = nullptr);

// E_t[max over allocations of total value].
double opt_welfare(const Instance& instance, const Budget& budget = Budget{});

// Discrete ironed revenue curve over value atoms. Quantile q is the mass of
// values >= the atom; R(q) = q * value; the hull is the least concave
// majorant; virtual values are hull slopes.
struct IronedCurve {
  std::vector<double> values;       // ascending distinct values
  std::vector<double> quantiles;    // q_k = Pr[V >= values[k]], descending in k? stored aligned
  std::vector<double> revenue;      // R at those quantiles
  std::vector<double> hull_value;   // hull at those quantiles
  std::vector<double> virtual_values;  // ironed virtual value per atom (aligned with values)

  double virtual_value_of(double value) const;
  double hull_at(double q) const;  // linear interpolation, hull(0) = 0
};

IronedCurve ironed_curve(const std::vector<ValueAtom>& atoms);

// Optimal single-item revenue via ironed virtual values: E[max(0, best
// ironed virtual value)], allocation tie-broken by bidder index (constant on
// ironed intervals, so the payment identity is exact).
double myerson_single_item(const std::vector<std::vector<ValueAtom>>& bidder_atoms);

// The single-dimensional surrogate: one agent per (bidder, item) with value
// V_i(t_ij), feasible allocations are matchings.
struct CopiesResult {
  double revenue = 0.0;
  std::vector<std::vector<double>> q;  // ex-ante service probability per (i, j)
};

// Ironed-virtual-welfare route: per value profile, a maximum-weight matching
// on positive ironed virtual values.
CopiesResult copies_opt(const Instance& instance, const Budget& budget = Budget{});

// Direct BIC LP on the copies game; used as the cross-check oracle.
double copies_opt_lp(const Instance& instance, const Budget& budget = Budget{});

}  // namespace simauct
