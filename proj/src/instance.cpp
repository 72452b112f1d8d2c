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

#include "simauct/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace simauct {

Instance::Instance(int num_items, std::vector<BidderModel> bidders)
    : num_items_(num_items), bidders_(std::move(bidders)) {
  validate();
  build();
}

void Instance::validate() const {
  if (num_items_ < 1 || num_items_ > kMaxItems) {
    throw ConfigError("instance must have between 1 and " + std::to_string(kMaxItems) + " items");
  }
  if (bidders_.empty()) throw ConfigError("instance needs at least one bidder");
  for (size_t i = 0; i < bidders_.size(); ++i) {
    const BidderModel& b = bidders_[i];
    if (b.space.num_items() != num_items_) {
      throw ConfigError("bidder " + std::to_string(i) + " type space item count mismatch");
    }
    b.space.validate();
    if (static_cast<int>(b.pmf.size()) != num_items_) {
      throw ConfigError("bidder " + std::to_string(i) + " pmf item count mismatch");
    }
    for (int j = 0; j < num_items_; ++j) {
      if (static_cast<int>(b.pmf[j].size()) != b.space.num_tokens(j)) {
        throw ConfigError("bidder " + std::to_string(i) + " pmf token count mismatch on item " +
                          std::to_string(j));
      }
      double sum = 0.0;
      for (double p : b.pmf[j]) {
        if (p < 0.0) throw ConfigError("negative probability mass");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kPmfSumTol) {
        throw ConfigError("pmf for bidder " + std::to_string(i) + " item " + std::to_string(j) +
                          " sums to " + std::to_string(sum));
      }
    }
  }
}

void Instance::build() {
  const int n = num_bidders();
  types_.resize(n);
  type_probs_.resize(n);
  value_tables_.resize(n);
  item_values_.resize(n);
  value_atoms_.resize(n);

  for (int i = 0; i < n; ++i) {
    const BidderModel& b = bidders_[i];
    const long long count = b.space.num_types();
    const ItemSet masks = full_set(num_items_) + 1;

    item_values_[i].resize(num_items_);
    value_atoms_[i].resize(num_items_);
    for (int j = 0; j < num_items_; ++j) {
      item_values_[i][j].resize(b.space.num_tokens(j));
      std::map<double, double> merged;
      for (int k = 0; k < b.space.num_tokens(j); ++k) {
        double v = b.valuation.single_item_value(b.space, k, j);
        item_values_[i][j][k] = v;
        merged[v] += b.pmf[j][k];
        max_item_value_ = std::max(max_item_value_, v);
      }
      for (const auto& [v, p] : merged) value_atoms_[i][j].push_back({v, p});
    }

    types_[i].resize(count);
    type_probs_[i].resize(count);
    value_tables_[i].assign(count, std::vector<double>(masks));
    for (long long t = 0; t < count; ++t) {
      TypeVec type = type_from_flat_index(b.space, t);
      double prob = 1.0;
      for (int j = 0; j < num_items_; ++j) prob *= b.pmf[j][type[j]];
      types_[i][t] = type;
      type_probs_[i][t] = prob;
      for (ItemSet s = 0; s < masks; ++s) {
        value_tables_[i][t][s] = b.valuation.value(b.space, type, s);
      }
    }
  }
}

namespace {

bool same_bidder_model(const BidderModel& a, const BidderModel& b, const std::vector<int>& item_perm) {
  if (a.valuation.family() != b.valuation.family()) return false;
  if (a.valuation.xos_clauses() != b.valuation.xos_clauses()) return false;
  if (a.valuation.cardinality() != b.valuation.cardinality()) return false;
  if (a.valuation.feasible_sets() != b.valuation.feasible_sets()) return false;
  if (a.valuation.table() != b.valuation.table()) return false;
  for (size_t j = 0; j < item_perm.size(); ++j) {
    int pj = item_perm[j];
    if (a.space.tokens[j].size() != b.space.tokens[pj].size()) return false;
    for (size_t k = 0; k < a.space.tokens[j].size(); ++k) {
      if (!(a.space.tokens[j][k] == b.space.tokens[pj][k])) return false;
      if (a.pmf[j][k] != b.pmf[pj][k]) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Instance::Automorphism> Instance::automorphisms() const {
  // Tabular and explicit-feasible-set families are conservative: only the
  // identity item map is trusted for them since their parameters are
  // item-indexed in ways a relabeling check here does not cover.
  const int n = num_bidders();
  const int m = num_items_;
  bool item_perms_ok = true;
  for (const auto& b : bidders_) {
    if (b.valuation.family() == ValuationFamily::kTabular ||
        b.valuation.family() == ValuationFamily::kConstrainedAdditive) {
      item_perms_ok = false;
    }
  }

  std::vector<int> bidder_ids(n), item_ids(m);
  std::iota(bidder_ids.begin(), bidder_ids.end(), 0);
  std::iota(item_ids.begin(), item_ids.end(), 0);

  std::vector<Automorphism> out;
  std::vector<int> bp = bidder_ids;
  do {
    std::vector<int> ip = item_ids;
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        ok = same_bidder_model(bidders_[i], bidders_[bp[i]], ip);
      }
      if (ok) out.push_back({bp, ip});
      if (!item_perms_ok) break;
    } while (std::next_permutation(ip.begin(), ip.end()));
  } while (std::next_permutation(bp.begin(), bp.end()));
  return out;
}

}  // namespace simauct
