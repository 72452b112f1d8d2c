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

#include "simauct/auction.hpp"

#include <algorithm>

namespace simauct {

ItemSet Outcome::allocation(int i) const {
  ItemSet s = 0;
  for (size_t j = 0; j < winner.size(); ++j) {
    if (winner[j] == i) s |= ItemSet{1} << j;
  }
  return s;
}

double Outcome::total_payment(int i) const {
  double s = fees.empty() ? 0.0 : fees[i];
  for (double p : payments[i]) s += p;
  return s;
}

double Outcome::revenue() const {
  double s = 0.0;
  for (const auto& row : payments) {
    for (double p : row) s += p;
  }
  for (double f : fees) s += f;
  return s;
}

Outcome run_auction(const AuctionRule& rule, const BidProfile& profile, Rng& rng) {
  const int n = profile.num_bidders();
  const int m = profile.num_items();
  Outcome out;
  out.winner.assign(m, -1);
  out.payments.assign(n, std::vector<double>(m, 0.0));

  for (int j = 0; j < m; ++j) {
    double high = -1.0;
    double second = 0.0;
    std::vector<int> tied;
    for (int i = 0; i < n; ++i) {
      const Bid& b = profile.bids[i][j];
      if (b.is_null()) continue;
      double a = *b.value;
      if (a > high) {
        second = (high >= 0.0) ? high : 0.0;
        high = a;
        tied.assign(1, i);
      } else if (a == high) {
        second = high;
        tied.push_back(i);
      } else if (a > second) {
        second = a;
      }
      if (rule.kind == RuleKind::kAllPay) out.payments[i][j] = a;
    }
    if (tied.empty()) continue;
    int w = tied.size() == 1 ? tied[0] : tied[rng.next_index(static_cast<int>(tied.size()))];
    out.winner[j] = w;
    switch (rule.kind) {
      case RuleKind::kFirstPrice:
        out.payments[w][j] = high;
        break;
      case RuleKind::kSecondPrice:
        out.payments[w][j] = tied.size() > 1 ? high : second;
        break;
      case RuleKind::kAllPay:
        break;  // already paid their bid
    }
  }
  return out;
}

Outcome run_entry_fee(const EntryFeeWrapper& wrapper, const std::vector<EntryFeeAction>& actions,
                      Rng& rng) {
  const int n = static_cast<int>(actions.size());
  BidProfile profile;
  profile.bids.resize(n);
  for (int i = 0; i < n; ++i) profile.bids[i] = actions[i].bids;
  const int m = profile.num_items();

  std::vector<double> charged_fee(n, 0.0);
  std::vector<bool> enters(n, false);
  for (int i = 0; i < n; ++i) {
    bool waived = rng.next_double() < wrapper.waive_prob;
    charged_fee[i] = waived ? 0.0 : wrapper.fees[i];
    enters[i] = waived || actions[i].enter;
  }

  Outcome base = run_auction(wrapper.base, profile, rng);
  Outcome out;
  out.winner.assign(m, -1);
  out.payments.assign(n, std::vector<double>(m, 0.0));
  out.fees.assign(n, 0.0);
  for (int j = 0; j < m; ++j) {
    int w = base.winner[j];
    if (w >= 0 && enters[w]) out.winner[j] = w;
  }
  for (int i = 0; i < n; ++i) {
    if (!enters[i]) continue;
    out.payments[i] = base.payments[i];
    out.fees[i] = charged_fee[i];
  }
  return out;
}

Outcome run_reserve(const ReserveWrapper& wrapper, const BidProfile& profile, Rng& rng) {
  Outcome out = run_auction(wrapper.base, profile, rng);
  const int m = profile.num_items();
  for (int j = 0; j < m; ++j) {
    int w = out.winner[j];
    if (w >= 0) out.payments[w][j] = std::max(out.payments[w][j], wrapper.reserves[w][j]);
  }
  return out;
}

}  // namespace simauct
