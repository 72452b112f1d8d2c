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

#include <utility>
#include <vector>

#include "simauct/bid_grid.hpp"
#include "simauct/common.hpp"

namespace simauct {

// Finitely supported distribution over bid vectors; atoms kept sorted by
// bid vector and with probabilities summing to one.
struct MixedBids {
  std::vector<std::pair<BidVec, double>> atoms;

  static MixedBids pure(BidVec v) { return MixedBids{{{v, 1.0}}}; }
  void add(BidVec v, double p);
  void normalize();
};

// strategies[bidder][type]: each bidder's mapping from type to a mixed
// distribution over grid bid vectors.
struct StrategyProfile {
  std::vector<std::vector<MixedBids>> strategies;

  int num_bidders() const { return static_cast<int>(strategies.size()); }
  uint64_t hash() const;
};

struct RegretEntry {
  int bidder = 0;
  int type = 0;
  double eq_utility = 0.0;
  double br_utility = 0.0;
  BidVec br_bid = 0;
  double regret() const { return br_utility - eq_utility; }
};

// Certified deviation gains, one entry per (bidder, type); epsilon is the
// maximum regret.
struct RegretCertificate {
  std::vector<RegretEntry> entries;
  double epsilon = 0.0;
};

}  // namespace simauct
