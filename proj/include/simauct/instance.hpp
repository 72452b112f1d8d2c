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

#include "simauct/common.hpp"
#include "simauct/valuation.hpp"

namespace simauct {

// One (value, mass) atom of a discrete single-item value distribution.
struct ValueAtom {
  double value;
  double mass;
};

struct BidderModel {
  ItemTypeSpace space;
  std::vector<std::vector<double>> pmf;  // pmf[item][token]
  Valuation valuation;
};

// The full environment: bidders, items, product type distributions and
// valuations. Immutable after build(); safe for concurrent reads.
class Instance {
 public:
  Instance(int num_items, std::vector<BidderModel> bidders);

  int num_bidders() const { return static_cast<int>(bidders_.size()); }
  int num_items() const { return num_items_; }
  const BidderModel& bidder(int i) const { return bidders_[i]; }

  int num_types(int i) const { return static_cast<int>(type_probs_[i].size()); }
  const TypeVec& type(int i, int t) const { return types_[i][t]; }
  double type_prob(int i, int t) const { return type_probs_[i][t]; }

  // v_i(type t, S), precomputed.
  double value(int i, int t, ItemSet items) const { return value_tables_[i][t][items]; }
  // V_i(t_ij) for a token index.
  double item_value(int i, int item, int token) const { return item_values_[i][item][token]; }
  // V_i of the item-coordinate of full type t.
  double item_value_of_type(int i, int t, int item) const {
    return item_values_[i][item][types_[i][t][item]];
  }

  // Distinct values of V_i(t_ij) with merged masses, ascending by value.
  const std::vector<ValueAtom>& value_distribution(int i, int item) const {
    return value_atoms_[i][item];
  }

  // Largest single-item value across everything; grid caps default to
  // 1.25 times this.
  double max_item_value() const { return max_item_value_; }

  // Instance-preserving relabelings (bidder permutation, item permutation).
  // Used to canonicalize benchmark LP solutions on symmetric instances.
  struct Automorphism {
    std::vector<int> bidder_perm;  // bidder i -> bidder_perm[i]
    std::vector<int> item_perm;    // item j -> item_perm[j]
  };
  std::vector<Automorphism> automorphisms() const;

 private:
  void validate() const;
  void build();

  int num_items_;
  std::vector<BidderModel> bidders_;
  std::vector<std::vector<TypeVec>> types_;                  // [bidder][type]
  std::vector<std::vector<double>> type_probs_;              // [bidder][type]
  std::vector<std::vector<std::vector<double>>> value_tables_;  // [bidder][type][mask]
  std::vector<std::vector<std::vector<double>>> item_values_;   // [bidder][item][token]
  std::vector<std::vector<std::vector<ValueAtom>>> value_atoms_;  // [bidder][item]
  double max_item_value_ = 0.0;
};

}  // namespace simauct
