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

#include "simauct/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace simauct {

long long ItemTypeSpace::num_types() const {
  long long n = 1;
  for (const auto& t : tokens) n *= static_cast<long long>(t.size());
  return n;
}

void ItemTypeSpace::validate() const {
  if (tokens.empty()) throw ConfigError("type space has no items");
  for (size_t j = 0; j < tokens.size(); ++j) {
    if (tokens[j].empty()) {
      throw ConfigError("item " + std::to_string(j) + " has no tokens");
    }
    for (size_t a = 0; a < tokens[j].size(); ++a) {
      if (tokens[j][a].value < 0.0) {
        throw ConfigError("negative token value on item " + std::to_string(j));
      }
      for (double c : tokens[j][a].clause_values) {
        if (c < 0.0) throw ConfigError("negative clause value on item " + std::to_string(j));
      }
      for (size_t b = a + 1; b < tokens[j].size(); ++b) {
        if (tokens[j][a] == tokens[j][b]) {
          throw ConfigError("duplicate token on item " + std::to_string(j));
        }
      }
    }
  }
}

long long type_flat_index(const ItemTypeSpace& space, const TypeVec& type) {
  long long idx = 0;
  long long stride = 1;
  for (int j = 0; j < space.num_items(); ++j) {
    idx += stride * type[j];
    stride *= space.num_tokens(j);
  }
  return idx;
}

TypeVec type_from_flat_index(const ItemTypeSpace& space, long long index) {
  TypeVec type(space.num_items());
  for (int j = 0; j < space.num_items(); ++j) {
    int cnt = space.num_tokens(j);
    type[j] = static_cast<int>(index % cnt);
    index /= cnt;
  }
  return type;
}

Valuation Valuation::additive() {
  Valuation v;
  v.family_ = ValuationFamily::kAdditive;
  return v;
}

Valuation Valuation::unit_demand() {
  Valuation v;
  v.family_ = ValuationFamily::kUnitDemand;
  return v;
}

Valuation Valuation::constrained_additive(std::vector<ItemSet> feasible_sets) {
  Valuation v;
  v.family_ = ValuationFamily::kConstrainedAdditive;
  v.feasible_sets_ = std::move(feasible_sets);
  return v;
}

Valuation Valuation::constrained_additive_cardinality(int k) {
  if (k < 0) throw ConfigError("cardinality bound must be nonnegative");
  Valuation v;
  v.family_ = ValuationFamily::kConstrainedAdditive;
  v.cardinality_ = k;
  return v;
}

Valuation Valuation::xos(int num_clauses) {
  if (num_clauses < 1) throw ConfigError("XOS needs at least one clause");
  Valuation v;
  v.family_ = ValuationFamily::kXos;
  v.xos_clauses_ = num_clauses;
  return v;
}

Valuation Valuation::tabular(const ItemTypeSpace& space, std::vector<std::vector<double>> table) {
  Valuation v;
  v.family_ = ValuationFamily::kTabular;
  v.table_ = std::move(table);
  long long types = space.num_types();
  ItemSet masks = full_set(space.num_items()) + 1;
  if (static_cast<long long>(v.table_.size()) != types) {
    throw ConfigError("tabular valuation: table has wrong number of types");
  }
  for (const auto& row : v.table_) {
    if (row.size() != masks) throw ConfigError("tabular valuation: row has wrong number of sets");
  }
  AxiomReport report = v.verify_axioms(space);
  if (!report.pass) {
    throw ConfigError("tabular valuation violates " + report.violation->axiom + ": " +
                      report.violation->detail);
  }
  return v;
}

double Valuation::value(const ItemTypeSpace& space, const TypeVec& type, ItemSet items) const {
  const int m = space.num_items();
  if (items > full_set(m)) throw ConfigError("item set out of range");
  switch (family_) {
    case ValuationFamily::kAdditive: {
      double s = 0.0;
      for (int j = 0; j < m; ++j) {
        if (contains(items, j)) s += space.token(j, type[j]).value;
      }
      return s;
    }
    case ValuationFamily::kUnitDemand: {
      double best = 0.0;
      for (int j = 0; j < m; ++j) {
        if (contains(items, j)) best = std::max(best, space.token(j, type[j]).value);
      }
      return best;
    }
    case ValuationFamily::kConstrainedAdditive: {
      if (cardinality_ >= 0) {
        std::vector<double> vals;
        for (int j = 0; j < m; ++j) {
          if (contains(items, j)) vals.push_back(space.token(j, type[j]).value);
        }
        std::sort(vals.begin(), vals.end(), std::greater<double>());
        double s = 0.0;
        for (int k = 0; k < std::min<int>(cardinality_, vals.size()); ++k) s += vals[k];
        return s;
      }
      double best = 0.0;
      for (ItemSet y : feasible_sets_) {
        double s = 0.0;
        ItemSet pick = y & items;
        for (int j = 0; j < m; ++j) {
          if (contains(pick, j)) s += space.token(j, type[j]).value;
        }
        best = std::max(best, s);
      }
      return best;
    }
    case ValuationFamily::kXos: {
      if (items == 0) return 0.0;
      double best = 0.0;
      for (int k = 0; k < xos_clauses_; ++k) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
          if (contains(items, j)) {
            const Token& tok = space.token(j, type[j]);
            if (static_cast<int>(tok.clause_values.size()) != xos_clauses_) {
              throw ConfigError("XOS token clause count mismatch");
            }
            s += tok.clause_values[k];
          }
        }
        best = std::max(best, s);
      }
      return best;
    }
    case ValuationFamily::kTabular: {
      return table_[type_flat_index(space, type)][items];
    }
  }
  return 0.0;
}

double Valuation::single_item_value(const ItemTypeSpace& space, int token_index, int item) const {
  if (item < 0 || item >= space.num_items()) throw ConfigError("item out of range");
  if (token_index < 0 || token_index >= space.num_tokens(item)) {
    throw ConfigError("token not in the item's token list");
  }
  TypeVec type(space.num_items(), 0);
  type[item] = token_index;
  return value(space, type, ItemSet{1} << item);
}

AxiomReport Valuation::verify_axioms(const ItemTypeSpace& space, int m_max,
                                     const Budget& budget) const {
  const int m = space.num_items();
  if (m > m_max) {
    throw BudgetExceeded("verify_axioms: " + std::to_string(m) + " items exceeds m_max");
  }
  const long long types = space.num_types();
  const long long masks = full_set(m) + 1;
  if (types * masks * masks > budget.max_enumeration) {
    throw BudgetExceeded("verify_axioms: enumeration budget exceeded");
  }

  AxiomReport report;
  auto fail = [&report](const std::string& axiom, const std::string& detail) {
    report.pass = false;
    report.violation = AxiomViolation{axiom, detail};
  };

  std::vector<std::vector<double>> vals(types, std::vector<double>(masks));
  for (long long t = 0; t < types; ++t) {
    TypeVec type = type_from_flat_index(space, t);
    for (ItemSet s = 0; s < static_cast<ItemSet>(masks); ++s) {
      vals[t][s] = value(space, type, s);
    }
  }

  for (long long t = 0; t < types; ++t) {
    if (vals[t][0] != 0.0) {
      fail("empty_set", "v(type " + std::to_string(t) + ", {}) = " + std::to_string(vals[t][0]));
      return report;
    }
    for (ItemSet s = 0; s < static_cast<ItemSet>(masks); ++s) {
      for (int j = 0; j < m; ++j) {
        if (!contains(s, j) && vals[t][s] > vals[t][s | (ItemSet{1} << j)] + 1e-12) {
          std::ostringstream os;
          os << "type " << t << ": v(S)=" << vals[t][s] << " > v(S+{" << j
             << "})=" << vals[t][s | (ItemSet{1} << j)];
          fail("monotone", os.str());
          return report;
        }
      }
    }
    for (ItemSet u = 0; u < static_cast<ItemSet>(masks); ++u) {
      for (ItemSet v = 0; v < static_cast<ItemSet>(masks); ++v) {
        if (vals[t][u | v] > vals[t][u] + vals[t][v] + 1e-12) {
          std::ostringstream os;
          os << "type " << t << ": v(U|V)=" << vals[t][u | v] << " > v(U)+v(V)="
             << vals[t][u] + vals[t][v];
          fail("subadditive", os.str());
          return report;
        }
      }
    }
  }

  // No externalities: types agreeing on S must value S identically.
  for (ItemSet s = 0; s < static_cast<ItemSet>(masks); ++s) {
    for (long long t = 0; t < types; ++t) {
      TypeVec a = type_from_flat_index(space, t);
      for (long long t2 = t + 1; t2 < types; ++t2) {
        TypeVec b = type_from_flat_index(space, t2);
        bool agree = true;
        for (int j = 0; j < m && agree; ++j) {
          if (contains(s, j) && a[j] != b[j]) agree = false;
        }
        if (agree && vals[t][s] != vals[t2][s]) {
          std::ostringstream os;
          os << "types " << t << "," << t2 << " agree on set " << s << " but v differs: "
             << vals[t][s] << " vs " << vals[t2][s];
          fail("no_externalities", os.str());
          return report;
        }
      }
    }
  }
  return report;
}

double Valuation::lipschitz_constant(const ItemTypeSpace& space, const Budget& budget) const {
  const int m = space.num_items();
  const long long types = space.num_types();
  const long long masks = full_set(m) + 1;
  if (types * types * masks * masks > budget.max_enumeration) {
    throw BudgetExceeded("lipschitz_constant: enumeration budget exceeded");
  }

  std::vector<TypeVec> type_vecs(types);
  std::vector<std::vector<double>> vals(types, std::vector<double>(masks));
  for (long long t = 0; t < types; ++t) {
    type_vecs[t] = type_from_flat_index(space, t);
    for (ItemSet s = 0; s < static_cast<ItemSet>(masks); ++s) {
      vals[t][s] = value(space, type_vecs[t], s);
    }
  }

  double best = 0.0;
  for (long long t = 0; t < types; ++t) {
    for (long long t2 = 0; t2 < types; ++t2) {
      for (ItemSet x = 0; x < static_cast<ItemSet>(masks); ++x) {
        for (ItemSet y = 0; y < static_cast<ItemSet>(masks); ++y) {
          int denom = set_size(x ^ y);
          ItemSet common = x & y;
          for (int j = 0; j < m; ++j) {
            if (contains(common, j) && type_vecs[t][j] != type_vecs[t2][j]) ++denom;
          }
          if (denom == 0) continue;
          best = std::max(best, std::abs(vals[t][x] - vals[t2][y]) / denom);
        }
      }
    }
  }
  return best;
}

}  // namespace simauct
