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

#include <array>
#include <vector>

#include "simauct/auction.hpp"
#include "simauct/bid_grid.hpp"
#include "simauct/instance.hpp"
#include "simauct/strategy.hpp"

namespace simauct {

// A simultaneous auction as seen by the expectation engine: the base rule
// plus optional personalized reserves (empty = none).
struct EvalMechanism {
  RuleKind kind = RuleKind::kFirstPrice;
  std::vector<std::vector<double>> reserves;  // reserves[i][j]; empty = all zero

  bool has_reserves() const { return !reserves.empty(); }
  double reserve(int i, int j) const { return reserves.empty() ? 0.0 : reserves[i][j]; }
};

// From bidder i's perspective one opponent draw collapses, per item, to the
// highest opposing bid level and how many opponents sit at it. Everything
// the single-item rules charge or award is a function of these.
struct OppAtom {
  double prob = 1.0;
  std::array<uint8_t, kMaxItems> max_level{};  // 0 = everyone null
  std::array<uint8_t, kMaxItems> count{};      // opponents at max_level
};

using OppAtoms = std::vector<OppAtom>;

// Exact expectation engine over discrete types, mixed grid strategies and
// uniform tie-breaking. Stateless with respect to profiles; all randomness
// in sampled paths comes from explicit seeds.
class Evaluator {
 public:
  Evaluator(const Instance& instance, const BidGrid& grid, EvalMechanism mech,
            Budget budget = Budget{});

  const Instance& instance() const { return *instance_; }
  const BidGrid& grid() const { return grid_; }
  const EvalMechanism& mechanism() const { return mech_; }

  // Joint distribution of the opponents' (max level, count) vectors when
  // everyone but i follows s.
  OppAtoms opponent_atoms(int i, const StrategyProfile& s) const;

  // E[v_i(t_i, wins ∩ value_mask) - sum of payments on pay_mask items].
  // Bids on items outside pay_mask should be null.
  double utility(int i, int type, BidVec bid, const OppAtoms& opp, ItemSet value_mask,
                 ItemSet pay_mask) const;
  double utility(int i, int type, BidVec bid, const OppAtoms& opp) const {
    ItemSet all = full_set(instance_->num_items());
    return utility(i, type, bid, opp, all, all);
  }
  double utility_of_mixture(int i, int type, const MixedBids& mix, const OppAtoms& opp) const;

  // E[v_i(t_i, wins)] only (no payments), for welfare accounting.
  double expected_value(int i, int type, BidVec bid, const OppAtoms& opp) const;

  // Exact argmax over the full grid; deterministic tie-breaking (first in
  // odometer order).
  std::pair<BidVec, double> best_response(int i, int type, const OppAtoms& opp) const;

  // Best restricted-participation utility: argmax over bids supported on S
  // (null elsewhere) of E[v(wins ∩ S) - payments on S]. A grid lower bound
  // on the continuous optimum.
  double mu(int i, int type, ItemSet S, const OppAtoms& opp) const;

  // Expected payment collected on items in S at profile s.
  double revenue(const StrategyProfile& s, ItemSet S) const;
  double revenue(const StrategyProfile& s) const {
    return revenue(s, full_set(instance_->num_items()));
  }

  // Expected total value of realized allocations at s.
  double welfare(const StrategyProfile& s) const;

  // Interim utility of bidder i with type t at profile s (own mixture).
  double interim_utility(int i, int type, const StrategyProfile& s) const;

  // Full certificate of s: best response and regret per (bidder, type).
  RegretCertificate certificate(const StrategyProfile& s) const;

  // Monte Carlo estimate (mean, standard error) of bidder i's utility for a
  // fixed bid against s_{-i}; for instances beyond exact budgets.
  std::pair<double, double> utility_mc(int i, int type, BidVec bid, const StrategyProfile& s,
                                       int samples, uint64_t seed) const;

  // The randomized deviation bound: sample the opponents' max-bid vector,
  // add one grid step, restrict to S, and measure the expected utility.
  double max_bid_deviation_utility(int i, int type, ItemSet S, const StrategyProfile& s,
                                   double shift) const;

  // Per-bidder, per-item distribution over bid levels (marginal of s).
  std::vector<std::vector<std::vector<double>>> level_marginals(const StrategyProfile& s) const;

 private:
  const Instance* instance_;
  BidGrid grid_;
  EvalMechanism mech_;
  Budget budget_;
};

// All bid vectors supported on `support` (null outside), odometer order.
std::vector<BidVec> enumerate_bid_vectors(const BidGrid& grid, int num_items, ItemSet support);

// Number of non-null coordinates; argmax ties prefer the larger count.
int active_items(BidVec v, int num_items);

}  // namespace simauct
