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

#include "simauct/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace simauct {

namespace {

// Joint type profiles, indexed with bidder 0 least significant.
struct ProfileSpace {
  explicit ProfileSpace(const Instance& inst) : instance(&inst) {
    counts.resize(inst.num_bidders());
    strides.resize(inst.num_bidders());
    total = 1;
    for (int i = 0; i < inst.num_bidders(); ++i) {
      counts[i] = inst.num_types(i);
      strides[i] = total;
      total *= counts[i];
    }
  }
  int type_of(long long profile, int bidder) const {
    return static_cast<int>((profile / strides[bidder]) % counts[bidder]);
  }
  long long with_type(long long profile, int bidder, int type) const {
    return profile + (type - type_of(profile, bidder)) * strides[bidder];
  }
  double prob(long long profile) const {
    double f = 1.0;
    for (int i = 0; i < instance->num_bidders(); ++i) {
      f *= instance->type_prob(i, type_of(profile, i));
    }
    return f;
  }
  double prob_excluding(long long profile, int bidder) const {
    double f = 1.0;
    for (int i = 0; i < instance->num_bidders(); ++i) {
      if (i != bidder) f *= instance->type_prob(i, type_of(profile, i));
    }
    return f;
  }

  const Instance* instance;
  std::vector<long long> counts, strides;
  long long total = 1;
};

// Deterministic allocations: per item, a bidder index or n for unassigned.
struct AllocationSpace {
  AllocationSpace(int n, int m) : num_bidders(n), num_items(m) {
    total = 1;
    for (int j = 0; j < m; ++j) total *= (n + 1);
  }
  int holder(long long alloc, int item) const {
    for (int j = 0; j < item; ++j) alloc /= (num_bidders + 1);
    return static_cast<int>(alloc % (num_bidders + 1));
  }
  ItemSet mask_of(long long alloc, int bidder) const {
    ItemSet s = 0;
    for (int j = 0; j < num_items; ++j) {
      if (holder(alloc, j) == bidder) s |= ItemSet{1} << j;
    }
    return s;
  }
  bool is_matching(long long alloc) const {
    int used = 0;
    for (int j = 0; j < num_items; ++j) {
      int h = holder(alloc, j);
      if (h == num_bidders) continue;
      if (used & (1 << h)) return false;
      used |= 1 << h;
    }
    return true;
  }

  int num_bidders, num_items;
  long long total = 1;
};

struct OptLp {
  LpProblem lp;
  std::vector<std::vector<int>> x_var;    // [profile][alloc]
  std::vector<std::vector<int>> pay_var;  // [bidder][profile]
};

OptLp build_opt_lp(const Instance& inst, const ProfileSpace& profiles,
                   const AllocationSpace& allocs, const Budget& budget) {
  const int n = inst.num_bidders();
  if (profiles.total * allocs.total > budget.max_lp_nonzeros) {
    throw BudgetExceeded("opt_revenue: LP size budget exceeded");
  }

  OptLp out;
  // Precompute per-allocation bidder masks.
  std::vector<std::vector<ItemSet>> alloc_mask(allocs.total, std::vector<ItemSet>(n));
  for (long long a = 0; a < allocs.total; ++a) {
    for (int i = 0; i < n; ++i) alloc_mask[a][i] = allocs.mask_of(a, i);
  }

  out.x_var.assign(profiles.total, std::vector<int>(allocs.total, -1));
  for (long long t = 0; t < profiles.total; ++t) {
    for (long long a = 0; a < allocs.total; ++a) {
      out.x_var[t][a] =
          out.lp.add_var(0.0, false, "x_" + std::to_string(t) + "_" + std::to_string(a));
    }
  }
  out.pay_var.assign(n, std::vector<int>(profiles.total, -1));
  for (int i = 0; i < n; ++i) {
    for (long long t = 0; t < profiles.total; ++t) {
      out.pay_var[i][t] = out.lp.add_var(profiles.prob(t), true,
                                         "p_" + std::to_string(i) + "_" + std::to_string(t));
    }
  }

  for (long long t = 0; t < profiles.total; ++t) {
    LpRow row;
    row.sense = RowSense::kEq;
    row.rhs = 1.0;
    row.name = "prob_" + std::to_string(t);
    for (long long a = 0; a < allocs.total; ++a) row.coeffs.emplace_back(out.x_var[t][a], 1.0);
    out.lp.add_row(std::move(row));
  }

  // BIC and interim IR. Interim utility of bidder i of true type ti
  // reporting ri: sum over opponitions of f_{-i} * (E[v_i(ti, alloc_i)] - p_i).
  for (int i = 0; i < n; ++i) {
    for (int ti = 0; ti < inst.num_types(i); ++ti) {
      for (int ri = 0; ri < inst.num_types(i); ++ri) {
        LpRow row;
        row.sense = RowSense::kGe;
        row.rhs = 0.0;
        row.name = (ti == ri ? "ir_" : "bic_") + std::to_string(i) + "_" + std::to_string(ti) +
                   "_" + std::to_string(ri);
        // Truthful side (+), misreport side (-); IR is the ri == ti row with
        // only the truthful side.
        for (long long t = 0; t < profiles.total; ++t) {
          if (profiles.type_of(t, i) != ti) continue;
          double fmi = profiles.prob_excluding(t, i);
          if (fmi == 0.0) continue;
          for (long long a = 0; a < allocs.total; ++a) {
            double v = inst.value(i, ti, alloc_mask[a][i]);
            if (v != 0.0) row.coeffs.emplace_back(out.x_var[t][a], fmi * v);
          }
          row.coeffs.emplace_back(out.pay_var[i][t], -fmi);
          if (ti != ri) {
            long long tr = profiles.with_type(t, i, ri);
            for (long long a = 0; a < allocs.total; ++a) {
              double v = inst.value(i, ti, alloc_mask[a][i]);
              if (v != 0.0) row.coeffs.emplace_back(out.x_var[tr][a], -fmi * v);
            }
            row.coeffs.emplace_back(out.pay_var[i][tr], fmi);
          }
        }
        out.lp.add_row(std::move(row));
      }
    }
  }
  if (out.lp.nonzeros() > budget.max_lp_nonzeros * 4) {
    throw BudgetExceeded("opt_revenue: LP nonzero budget exceeded");
  }
  return out;
}

// Maps (profile, allocation) under an instance automorphism.
struct AutomorphismAction {
  AutomorphismAction(const Instance& inst, const ProfileSpace& profiles,
                     const AllocationSpace& allocs, const Instance::Automorphism& g)
      : inst_(inst), profiles_(profiles), allocs_(allocs), g_(g) {
    // Per bidder, map of local type index under the item permutation.
    type_map_.resize(inst.num_bidders());
    for (int i = 0; i < inst.num_bidders(); ++i) {
      int target = g.bidder_perm[i];
      type_map_[i].resize(inst.num_types(i));
      for (int t = 0; t < inst.num_types(i); ++t) {
        const TypeVec& tv = inst.type(i, t);
        TypeVec mapped(tv.size());
        for (size_t j = 0; j < tv.size(); ++j) mapped[g.item_perm[j]] = tv[j];
        type_map_[i][t] =
            static_cast<int>(type_flat_index(inst.bidder(target).space, mapped));
      }
    }
  }

  long long map_profile(long long t) const {
    long long out = 0;
    for (int i = 0; i < inst_.num_bidders(); ++i) {
      int ti = profiles_.type_of(t, i);
      out += static_cast<long long>(type_map_[i][ti]) * profiles_.strides[g_.bidder_perm[i]];
    }
    return out;
  }

  long long map_alloc(long long a) const {
    long long out = 0;
    long long pow = 1;
    std::vector<int> holders(allocs_.num_items);
    for (int j = 0; j < allocs_.num_items; ++j) holders[j] = allocs_.holder(a, j);
    std::vector<int> mapped(allocs_.num_items);
    for (int j = 0; j < allocs_.num_items; ++j) {
      int h = holders[j];
      mapped[g_.item_perm[j]] = h == allocs_.num_bidders ? h : g_.bidder_perm[h];
    }
    for (int j = 0; j < allocs_.num_items; ++j) {
      out += static_cast<long long>(mapped[j]) * pow;
      pow *= (allocs_.num_bidders + 1);
    }
    return out;
  }

  int map_bidder(int i) const { return g_.bidder_perm[i]; }

  const Instance& inst_;
  const ProfileSpace& profiles_;
  const AllocationSpace& allocs_;
  Instance::Automorphism g_;
  std::vector<std::vector<int>> type_map_;
};

}  // namespace

OptResult opt_revenue(const Instance& inst, const Budget& budget, bool exact_rational,
                      std::string* lp_text) {
  ProfileSpace profiles(inst);
  AllocationSpace allocs(inst.num_bidders(), inst.num_items());
  OptLp model = build_opt_lp(inst, profiles, allocs, budget);
  if (lp_text != nullptr) *lp_text = to_lp_format(model.lp);

  LpSolution sol = exact_rational ? solve_lp_exact(model.lp) : solve_lp(model.lp);
  if (sol.status == LpStatus::kInfeasible) {
    throw std::logic_error("opt_revenue LP infeasible: construction bug");
  }
  if (sol.status == LpStatus::kUnbounded) {
    throw std::logic_error("opt_revenue LP unbounded: construction bug");
  }
  if (sol.status == LpStatus::kIterLimit) {
    throw BudgetExceeded("opt_revenue: simplex pivot limit reached");
  }

  const int n = inst.num_bidders();
  // Group-average x over the automorphisms; every image is optimal, so the
  // average is optimal and canonical on symmetric instances.
  std::vector<Instance::Automorphism> autos = inst.automorphisms();
  std::vector<double> x_avg(profiles.total * allocs.total, 0.0);
  for (const auto& g : autos) {
    AutomorphismAction act(inst, profiles, allocs, g);
    for (long long t = 0; t < profiles.total; ++t) {
      long long gt = act.map_profile(t);
      for (long long a = 0; a < allocs.total; ++a) {
        long long ga = act.map_alloc(a);
        x_avg[t * allocs.total + a] += sol.x[model.x_var[gt][ga]];
      }
    }
  }
  for (double& v : x_avg) v /= static_cast<double>(autos.size());

  OptResult out;
  out.revenue = sol.objective;
  out.lp_pivots = sol.pivots;
  out.exact = exact_rational;
  out.sigma.resize(n);
  out.pi.resize(n);
  const ItemSet masks = full_set(inst.num_items()) + 1;
  for (int i = 0; i < n; ++i) {
    out.sigma[i].assign(inst.num_types(i), std::vector<double>(masks, 0.0));
    out.pi[i].assign(inst.num_types(i), std::vector<double>(inst.num_items(), 0.0));
  }
  for (long long t = 0; t < profiles.total; ++t) {
    for (int i = 0; i < n; ++i) {
      int ti = profiles.type_of(t, i);
      double fmi = profiles.prob_excluding(t, i);
      if (fmi == 0.0) continue;
      for (long long a = 0; a < allocs.total; ++a) {
        double xv = x_avg[t * allocs.total + a];
        if (xv <= 0.0) continue;
        out.sigma[i][ti][allocs.mask_of(a, i)] += fmi * xv;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < inst.num_types(i); ++t) {
      for (ItemSet s = 0; s < masks; ++s) {
        for (int j = 0; j < inst.num_items(); ++j) {
          if (contains(s, j)) out.pi[i][t][j] += out.sigma[i][t][s];
        }
      }
    }
  }
  return out;
}

double opt_welfare(const Instance& inst, const Budget& budget) {
  ProfileSpace profiles(inst);
  AllocationSpace allocs(inst.num_bidders(), inst.num_items());
  if (profiles.total * allocs.total > budget.max_enumeration) {
    throw BudgetExceeded("opt_welfare: enumeration budget exceeded");
  }
  double total = 0.0;
  for (long long t = 0; t < profiles.total; ++t) {
    double f = profiles.prob(t);
    if (f == 0.0) continue;
    double best = 0.0;
    for (long long a = 0; a < allocs.total; ++a) {
      double w = 0.0;
      for (int i = 0; i < inst.num_bidders(); ++i) {
        w += inst.value(i, profiles.type_of(t, i), allocs.mask_of(a, i));
      }
      best = std::max(best, w);
    }
    total += f * best;
  }
  return total;
}

IronedCurve ironed_curve(const std::vector<ValueAtom>& atoms_in) {
  std::vector<ValueAtom> atoms;
  for (const ValueAtom& a : atoms_in) {
    if (a.mass > 0.0) atoms.push_back(a);
  }
  if (atoms.empty()) throw ConfigError("ironed_curve: empty support");
  std::sort(atoms.begin(), atoms.end(),
            [](const ValueAtom& a, const ValueAtom& b) { return a.value < b.value; });

  const int k = static_cast<int>(atoms.size());
  IronedCurve curve;
  curve.values.resize(k);
  curve.quantiles.resize(k);
  curve.revenue.resize(k);
  // Build from the highest value down: quantile accumulates the tail mass.
  double q = 0.0;
  std::vector<double> qs(k), rs(k);
  for (int d = 0; d < k; ++d) {
    const ValueAtom& a = atoms[k - 1 - d];
    q += a.mass;
    qs[d] = q;
    rs[d] = q * a.value;
  }
  // Upper concave hull of {(0,0)} + points, quantiles ascending.
  std::vector<double> hx{0.0}, hy{0.0};
  for (int d = 0; d < k; ++d) {
    double x = qs[d], y = rs[d];
    while (hx.size() >= 2) {
      size_t s = hx.size();
      double cross = (hy[s - 1] - hy[s - 2]) * (x - hx[s - 1]) -
                     (y - hy[s - 1]) * (hx[s - 1] - hx[s - 2]);
      // Keep slopes nonincreasing: pop while the middle point is below the
      // chord (cross <= 0).
      if (cross <= 0.0) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(x);
    hy.push_back(y);
  }
  auto hull_eval = [&hx, &hy](double x) {
    if (x <= 0.0) return 0.0;
    for (size_t s = 1; s < hx.size(); ++s) {
      if (x <= hx[s] + 1e-15) {
        double w = (x - hx[s - 1]) / (hx[s] - hx[s - 1]);
        return hy[s - 1] + w * (hy[s] - hy[s - 1]);
      }
    }
    return hy.back();
  };

  curve.hull_value.resize(k);
  curve.virtual_values.resize(k);
  for (int d = 0; d < k; ++d) {
    int idx = k - 1 - d;  // ascending-value alignment
    curve.values[idx] = atoms[idx].value;
    curve.quantiles[idx] = qs[d];
    curve.revenue[idx] = rs[d];
    curve.hull_value[idx] = hull_eval(qs[d]);
    double q_lo = d == 0 ? 0.0 : qs[d - 1];
    curve.virtual_values[idx] = (hull_eval(qs[d]) - hull_eval(q_lo)) / (qs[d] - q_lo);
  }
  return curve;
}

double IronedCurve::virtual_value_of(double value) const {
  for (size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - value) <= 1e-12) return virtual_values[i];
  }
  throw ConfigError("virtual_value_of: value is not an atom of the curve");
}

double IronedCurve::hull_at(double q) const {
  if (q <= 0.0) return 0.0;
  double prev_q = 0.0, prev_h = 0.0;
  for (size_t i = values.size(); i-- > 0;) {
    double cq = quantiles[i], ch = hull_value[i];
    if (q <= cq + 1e-15) {
      double w = (q - prev_q) / (cq - prev_q);
      return prev_h + w * (ch - prev_h);
    }
    prev_q = cq;
    prev_h = ch;
  }
  return prev_h;
}

double myerson_single_item(const std::vector<std::vector<ValueAtom>>& bidder_atoms) {
  const int n = static_cast<int>(bidder_atoms.size());
  std::vector<IronedCurve> curves;
  curves.reserve(n);
  std::vector<std::vector<ValueAtom>> atoms(n);
  for (int i = 0; i < n; ++i) {
    curves.push_back(ironed_curve(bidder_atoms[i]));
    for (const ValueAtom& a : bidder_atoms[i]) {
      if (a.mass > 0.0) atoms[i].push_back(a);
    }
  }
  std::vector<size_t> idx(n, 0);
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      prob *= atoms[i][idx[i]].mass;
      best = std::max(best, curves[i].virtual_value_of(atoms[i][idx[i]].value));
    }
    total += prob * std::max(0.0, best);
    int i = 0;
    while (i < n) {
      if (++idx[i] < atoms[i].size()) break;
      idx[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return total;
}

CopiesResult copies_opt(const Instance& inst, const Budget& budget) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  std::vector<std::vector<IronedCurve>> curves(n);
  std::vector<std::vector<std::vector<ValueAtom>>> atoms(n);
  long long total_profiles = 1;
  for (int i = 0; i < n; ++i) {
    curves[i].reserve(m);
    atoms[i].resize(m);
    for (int j = 0; j < m; ++j) {
      curves[i].push_back(ironed_curve(inst.value_distribution(i, j)));
      for (const ValueAtom& a : inst.value_distribution(i, j)) {
        if (a.mass > 0.0) atoms[i][j].push_back(a);
      }
      total_profiles *= static_cast<long long>(atoms[i][j].size());
    }
  }
  AllocationSpace allocs(n, m);
  if (total_profiles * allocs.total > budget.max_enumeration) {
    throw BudgetExceeded("copies_opt: enumeration budget exceeded");
  }

  std::vector<long long> matchings;
  for (long long a = 0; a < allocs.total; ++a) {
    if (allocs.is_matching(a)) matchings.push_back(a);
  }

  CopiesResult out;
  out.q.assign(n, std::vector<double>(m, 0.0));
  std::vector<size_t> idx(n * m, 0);
  while (true) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) prob *= atoms[i][j][idx[i * m + j]].mass;
    }
    // Maximum-weight matching on positive ironed virtual values; first
    // maximizer in encoding order.
    double best_w = 0.0;
    long long best_a = 0;
    for (long long a : matchings) {
      double w = 0.0;
      for (int j = 0; j < m; ++j) {
        int h = allocs.holder(a, j);
        if (h == n) continue;
        double phi = curves[h][j].virtual_value_of(atoms[h][j][idx[h * m + j]].value);
        w += phi;
      }
      if (w > best_w + 1e-15) {
        best_w = w;
        best_a = a;
      }
    }
    out.revenue += prob * best_w;
    for (int j = 0; j < m; ++j) {
      int h = allocs.holder(best_a, j);
      if (h != n) out.q[h][j] += prob;
    }
    size_t k = 0;
    while (k < idx.size()) {
      int i = static_cast<int>(k) / m, j = static_cast<int>(k) % m;
      if (++idx[k] < atoms[i][j].size()) break;
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
  }
  return out;
}

double copies_opt_lp(const Instance& inst, const Budget& budget) {
  const int n = inst.num_bidders();
  const int m = inst.num_items();
  // Value profiles over the nm agents.
  std::vector<std::vector<ValueAtom>> agent_atoms;
  agent_atoms.reserve(n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<ValueAtom> a;
      for (const ValueAtom& v : inst.value_distribution(i, j)) {
        if (v.mass > 0.0) a.push_back(v);
      }
      agent_atoms.push_back(std::move(a));
    }
  }
  const int agents = n * m;
  long long total = 1;
  std::vector<long long> strides(agents);
  for (int k = 0; k < agents; ++k) {
    strides[k] = total;
    total *= static_cast<long long>(agent_atoms[k].size());
  }
  AllocationSpace allocs(n, m);
  std::vector<long long> matchings;
  for (long long a = 0; a < allocs.total; ++a) {
    if (allocs.is_matching(a)) matchings.push_back(a);
  }
  if (total * static_cast<long long>(matchings.size()) > budget.max_lp_nonzeros) {
    throw BudgetExceeded("copies_opt_lp: LP size budget exceeded");
  }

  auto atom_of = [&](long long w, int agent) {
    return (w / strides[agent]) % static_cast<long long>(agent_atoms[agent].size());
  };
  auto prob_of = [&](long long w) {
    double f = 1.0;
    for (int k = 0; k < agents; ++k) f *= agent_atoms[k][atom_of(w, k)].mass;
    return f;
  };
  auto prob_excluding = [&](long long w, int agent) {
    double f = 1.0;
    for (int k = 0; k < agents; ++k) {
      if (k != agent) f *= agent_atoms[k][atom_of(w, k)].mass;
    }
    return f;
  };

  LpProblem lp;
  std::vector<std::vector<int>> x_var(total, std::vector<int>(matchings.size()));
  for (long long w = 0; w < total; ++w) {
    for (size_t a = 0; a < matchings.size(); ++a) {
      x_var[w][a] = lp.add_var(0.0, false, "x_" + std::to_string(w) + "_" + std::to_string(a));
    }
  }
  std::vector<std::vector<int>> pay_var(agents, std::vector<int>(total));
  for (int k = 0; k < agents; ++k) {
    for (long long w = 0; w < total; ++w) {
      pay_var[k][w] =
          lp.add_var(prob_of(w), true, "p_" + std::to_string(k) + "_" + std::to_string(w));
    }
  }
  for (long long w = 0; w < total; ++w) {
    LpRow row;
    row.sense = RowSense::kEq;
    row.rhs = 1.0;
    for (size_t a = 0; a < matchings.size(); ++a) row.coeffs.emplace_back(x_var[w][a], 1.0);
    lp.add_row(std::move(row));
  }
  for (int k = 0; k < agents; ++k) {
    int bidder = k / m, item = k % m;
    const auto& vals = agent_atoms[k];
    for (size_t vi = 0; vi < vals.size(); ++vi) {
      for (size_t ri = 0; ri < vals.size(); ++ri) {
        LpRow row;
        row.sense = RowSense::kGe;
        row.rhs = 0.0;
        for (long long w = 0; w < total; ++w) {
          if (atom_of(w, k) != static_cast<long long>(vi)) continue;
          double fmk = prob_excluding(w, k);
          if (fmk == 0.0) continue;
          for (size_t a = 0; a < matchings.size(); ++a) {
            if (allocs.holder(matchings[a], item) == bidder) {
              row.coeffs.emplace_back(x_var[w][a], fmk * vals[vi].value);
            }
          }
          row.coeffs.emplace_back(pay_var[k][w], -fmk);
          if (vi != ri) {
            long long wr = w + (static_cast<long long>(ri) - static_cast<long long>(vi)) * strides[k];
            for (size_t a = 0; a < matchings.size(); ++a) {
              if (allocs.holder(matchings[a], item) == bidder) {
                row.coeffs.emplace_back(x_var[wr][a], -fmk * vals[vi].value);
              }
            }
            row.coeffs.emplace_back(pay_var[k][wr], fmk);
          }
        }
        lp.add_row(std::move(row));
      }
    }
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("copies_opt_lp: unexpected LP status");
  }
  return sol.objective;
}

}  // namespace simauct
