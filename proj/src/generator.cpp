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

#include "simauct/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace simauct {

namespace {

std::vector<double> simplex_draw(Rng& rng, int k, int mass_grid, int top_mass_units) {
  if (mass_grid > 0) {
    // Random composition of mass_grid units into k positive parts, with the
    // top (last) part optionally pinned.
    std::vector<int> units(k, 1);
    int assigned = k;
    if (top_mass_units > 0 && k >= 2 && top_mass_units < mass_grid - (k - 2)) {
      units[k - 1] = top_mass_units;
      assigned = (k - 1) + top_mass_units;
      for (int u = assigned; u < mass_grid; ++u) units[rng.next_index(k - 1)] += 1;
    } else {
      for (int u = assigned; u < mass_grid; ++u) units[rng.next_index(k)] += 1;
    }
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[i] = static_cast<double>(units[i]) / mass_grid;
    return out;
  }
  std::vector<double> out(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    out[i] = -std::log(1.0 - rng.next_double());
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> distinct_values(Rng& rng, int k, double lo, double hi) {
  // Integer grid 0..20 scaled into [lo, hi].
  std::set<int> picks;
  while (static_cast<int>(picks.size()) < k) picks.insert(rng.next_index(21));
  std::vector<double> out;
  for (int p : picks) out.push_back(lo + (hi - lo) * (p / 20.0));
  std::sort(out.begin(), out.end());
  return out;
}

BidderModel random_bidder(Rng& rng, const GeneratorParams& params, int family) {
  BidderModel model;
  model.space.tokens.resize(params.items);
  model.pmf.resize(params.items);
  int clauses = family == 2 ? 2 : 0;
  for (int j = 0; j < params.items; ++j) {
    int atoms = 1 + rng.next_index(params.max_atoms);
    if (atoms < 2 && params.max_atoms >= 2) atoms = 2;
    model.pmf[j] = simplex_draw(rng, atoms, params.mass_grid, params.top_mass_units);
    if (family == 2) {
      std::vector<double> base = distinct_values(rng, atoms, params.min_value, params.max_value);
      // One scale per clause shared across tokens, which keeps token lists
      // distinct whenever the base values are.
      std::vector<double> clause_scale;
      for (int k = 0; k < clauses; ++k) clause_scale.push_back(0.5 + 0.5 * rng.next_double());
      clause_scale[0] = 1.0;
      for (int a = 0; a < atoms; ++a) {
        Token tok;
        for (int k = 0; k < clauses; ++k) tok.clause_values.push_back(base[a] * clause_scale[k]);
        model.space.tokens[j].push_back(tok);
      }
    } else {
      std::vector<double> vals = distinct_values(rng, atoms, params.min_value, params.max_value);
      for (double v : vals) {
        Token tok;
        tok.value = v;
        model.space.tokens[j].push_back(tok);
      }
    }
  }
  switch (family) {
    case 0:
      model.valuation = Valuation::additive();
      break;
    case 1:
      model.valuation = Valuation::unit_demand();
      break;
    default:
      model.valuation = Valuation::xos(clauses);
      break;
  }
  return model;
}

}  // namespace

Instance random_instance(Rng& rng, const GeneratorParams& params) {
  std::vector<BidderModel> bidders;
  int family = params.families[rng.next_index(static_cast<int>(params.families.size()))];
  for (int i = 0; i < params.bidders; ++i) {
    if (params.iid_bidders && i > 0) {
      bidders.push_back(bidders[0]);
    } else {
      bidders.push_back(random_bidder(rng, params, family));
    }
  }
  return Instance(params.items, std::move(bidders));
}

BidderModel random_subadditive_model(Rng& rng, int max_items) {
  int m = 1 + rng.next_index(max_items);
  GeneratorParams params;
  params.items = m;
  params.min_value = 0.0;
  params.max_value = 5.0;
  params.max_atoms = 3;
  int kind = rng.next_index(4);
  if (kind < 3) return random_bidder(rng, params, kind);

  // Random monotone subadditive table: start from a unit-demand-style cover
  // and clip by a random budget, which preserves all axioms.
  BidderModel base = random_bidder(rng, params, 0);
  Instance scratch(m, {base});
  std::vector<std::vector<double>> table;
  double budget = 1.0 + 4.0 * rng.next_double();
  const ItemSet masks = full_set(m) + 1;
  for (long long t = 0; t < scratch.num_types(0); ++t) {
    std::vector<double> row(masks);
    for (ItemSet s = 0; s < masks; ++s) row[s] = std::min(scratch.value(0, t, s), budget);
    table.push_back(std::move(row));
  }
  BidderModel model = base;
  model.valuation = Valuation::tabular(model.space, std::move(table));
  return model;
}

ShiftedPair shifted_dominating_pair(const Instance& base, double shift) {
  std::vector<BidderModel> bidders;
  for (int i = 0; i < base.num_bidders(); ++i) {
    BidderModel model = base.bidder(i);
    for (auto& item_tokens : model.space.tokens) {
      for (Token& tok : item_tokens) {
        tok.value += shift;
        for (double& cv : tok.clause_values) cv += shift;
      }
    }
    bidders.push_back(std::move(model));
  }
  ShiftedPair pair{Instance(base.num_items(), std::move(bidders)), {}};
  pair.coupling.resize(base.num_bidders());
  for (int i = 0; i < base.num_bidders(); ++i) {
    int nt = base.num_types(i);
    pair.coupling[i].assign(nt, std::vector<double>(nt, 0.0));
    for (int t = 0; t < nt; ++t) pair.coupling[i][t][t] = base.type_prob(i, t);
  }
  return pair;
}

}  // namespace simauct
