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

#include "simauct/common.hpp"

namespace simauct {

// One private-information token for a single item. `value` feeds the
// additive / unit-demand / constrained-additive families; `clause_values`
// (one entry per clause) feeds XOS.
struct Token {
  double value = 0.0;
  std::vector<double> clause_values;

  bool operator==(const Token& o) const {
    return value == o.value && clause_values == o.clause_values;
  }
};

// A bidder's type space: one finite token list per item. A full type is one
// token index per item.
struct ItemTypeSpace {
  std::vector<std::vector<Token>> tokens;  // tokens[item][k]

  int num_items() const { return static_cast<int>(tokens.size()); }
  int num_tokens(int item) const { return static_cast<int>(tokens[item].size()); }
  const Token& token(int item, int k) const { return tokens[item][k]; }

  // Total number of full types (product over items).
  long long num_types() const;

  // Throws ConfigError: every item needs >= 1 token, lists duplicate-free,
  // numeric fields nonnegative.
  void validate() const;
};

using TypeVec = std::vector<int>;  // token index per item

enum class ValuationFamily {
  kAdditive,
  kUnitDemand,
  kConstrainedAdditive,
  kXos,
  kTabular,
};

struct AxiomViolation {
  std::string axiom;  // "empty_set", "monotone", "subadditive", "no_externalities"
  std::string detail;
};

struct AxiomReport {
  bool pass = true;
  std::optional<AxiomViolation> violation;
};

// A valuation family over a bidder's type space. Families other than tabular
// satisfy the defining axioms by construction; tabular tables are checked
// exhaustively when the valuation is bound to a space (fail-fast).
class Valuation {
 public:
  Valuation() = default;  // additive until configured otherwise

  static Valuation additive();
  static Valuation unit_demand();
  // v(t, S) = max over feasible Y of the sum of t_j for j in Y∩S. The family
  // acts through its downward closure, so any explicit list is admissible.
  static Valuation constrained_additive(std::vector<ItemSet> feasible_sets);
  static Valuation constrained_additive_cardinality(int k);
  static Valuation xos(int num_clauses);
  // table[type_flat_index][item_mask]; verify_axioms runs immediately and
  // throws ConfigError on any violation.
  static Valuation tabular(const ItemTypeSpace& space, std::vector<std::vector<double>> table);

  ValuationFamily family() const { return family_; }
  int xos_clauses() const { return xos_clauses_; }
  int cardinality() const { return cardinality_; }
  const std::vector<ItemSet>& feasible_sets() const { return feasible_sets_; }
  const std::vector<std::vector<double>>& table() const { return table_; }

  double value(const ItemTypeSpace& space, const TypeVec& type, ItemSet items) const;
  double single_item_value(const ItemTypeSpace& space, int token_index, int item) const;

  // Exhaustive check of no-externalities, monotonicity, subadditivity and
  // v(., empty) = 0. Enforces items <= m_max before enumerating.
  AxiomReport verify_axioms(const ItemTypeSpace& space, int m_max = 4,
                            const Budget& budget = Budget{}) const;

  // Smallest L such that |v(t,X) - v(t',Y)| <= L * (|X xor Y| + changed
  // coordinates inside X∩Y) over the whole space, by exhaustive maximization.
  double lipschitz_constant(const ItemTypeSpace& space, const Budget& budget = Budget{}) const;

 private:
  ValuationFamily family_ = ValuationFamily::kAdditive;
  std::vector<ItemSet> feasible_sets_;
  int cardinality_ = -1;  // >= 0 means cardinality-constrained additive
  int xos_clauses_ = 0;
  std::vector<std::vector<double>> table_;
};

// Flat index of a type vector, item 0 least significant.
long long type_flat_index(const ItemTypeSpace& space, const TypeVec& type);
TypeVec type_from_flat_index(const ItemTypeSpace& space, long long index);

}  // namespace simauct
