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
#include <vector>

#include "simauct/common.hpp"
#include "simauct/rng.hpp"

namespace simauct {

// A bid on one item: an amount, or the null action (abstain).
struct Bid {
  static Bid null() { return Bid{}; }
  static Bid amount(double a) {
    Bid b;
    b.value = a;
    return b;
  }
  bool is_null() const { return !value.has_value(); }
  std::optional<double> value;
};

// bids[i][j] = bidder i's bid on item j.
struct BidProfile {
  std::vector<std::vector<Bid>> bids;
  int num_bidders() const { return static_cast<int>(bids.size()); }
  int num_items() const { return bids.empty() ? 0 : static_cast<int>(bids[0].size()); }
};

enum class RuleKind { kFirstPrice, kSecondPrice, kAllPay };

struct AuctionRule {
  RuleKind kind = RuleKind::kFirstPrice;
};

// Realized result of one run: per-item winner, full payment matrix, and the
// induced per-bidder allocations. Per-item payments follow the base rule;
// collected entry fees are recorded separately so the per-item structure
// stays intact. Total payments are additive: fee plus the item sum.
struct Outcome {
  std::vector<int> winner;                     // per item; -1 = unallocated
  std::vector<std::vector<double>> payments;   // payments[i][j]
  std::vector<double> fees;                    // entry fees collected; empty = none
  ItemSet allocation(int i) const;
  double total_payment(int i) const;
  double revenue() const;
};

struct EntryFeeWrapper {
  AuctionRule base;
  std::vector<double> fees;   // e_i >= 0
  double waive_prob = 0.01;   // fee replaced by 0 with this probability
};

struct ReserveWrapper {
  AuctionRule base;
  std::vector<std::vector<double>> reserves;  // r[i][j] >= 0
};

// Highest bid wins, ties uniform among the highest non-null bidders from the
// seeded stream. Items with all-null bids stay unallocated.
Outcome run_auction(const AuctionRule& rule, const BidProfile& profile, Rng& rng);

struct EntryFeeAction {
  bool enter = false;  // z_i: willing to pay the fee
  std::vector<Bid> bids;
};

// Mechanism: independently per bidder the fee is charged with probability
// 1 - waive_prob; the base auction runs on the full profile; bidders outside
// the entrant set receive nothing and pay nothing; entrants whose fee was
// charged additionally pay it. The outcome's payments include fees.
Outcome run_entry_fee(const EntryFeeWrapper& wrapper, const std::vector<EntryFeeAction>& actions,
                      Rng& rng);

// Mechanism: base allocation; each item's winner pays the max of the base
// payment and their reserve; everyone else keeps the base payment (relevant
// for all-pay).
Outcome run_reserve(const ReserveWrapper& wrapper, const BidProfile& profile, Rng& rng);

}  // namespace simauct
