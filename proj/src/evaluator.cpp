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

#include "simauct/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

namespace simauct {

void MixedBids::add(BidVec v, double p) {
  for (auto& [bv, prob] : atoms) {
    if (bv == v) {
      prob += p;
      return;
    }
  }
  atoms.emplace_back(v, p);
  std::sort(atoms.begin(), atoms.end());
}

void MixedBids::normalize() {
  double sum = 0.0;
  for (auto& [bv, p] : atoms) sum += p;
  if (sum <= 0.0) throw ConfigError("mixed strategy with zero total mass");
  for (auto& [bv, p] : atoms) p /= sum;
}

uint64_t StrategyProfile::hash() const {
  uint64_t h = 0x243f6a8885a308d3ULL;
  auto mix = [&h](uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& bidder : strategies) {
    for (const auto& mixbids : bidder) {
      for (const auto& [bv, p] : mixbids.atoms) {
        mix(bv);
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(p));
        std::memcpy(&bits, &p, sizeof(bits));
        mix(bits);
      }
      mix(0xabcdULL);
    }
  }
  return h;
}

std::vector<BidVec> enumerate_bid_vectors(const BidGrid& grid, int num_items, ItemSet support) {
  std::vector<int> items;
  for (int j = 0; j < num_items; ++j) {
    if (contains(support, j)) items.push_back(j);
  }
  std::vector<BidVec> out;
  long long total = 1;
  for (size_t k = 0; k < items.size(); ++k) total *= grid.num_levels();
  out.reserve(total);
  std::vector<int> levels(items.size(), 0);
  while (true) {
    BidVec v = 0;
    for (size_t k = 0; k < items.size(); ++k) v = bv_with_level(v, items[k], levels[k]);
    out.push_back(v);
    size_t k = 0;
    while (k < items.size()) {
      if (++levels[k] < grid.num_levels()) break;
      levels[k] = 0;
      ++k;
    }
    if (k == items.size()) break;
  }
  return out;
}

Evaluator::Evaluator(const Instance& instance, const BidGrid& grid, EvalMechanism mech,
                     Budget budget)
    : instance_(&instance), grid_(grid), mech_(std::move(mech)), budget_(budget) {
  if (mech_.has_reserves()) {
    if (static_cast<int>(mech_.reserves.size()) != instance.num_bidders()) {
      throw ConfigError("reserve matrix bidder count mismatch");
    }
    for (const auto& row : mech_.reserves) {
      if (static_cast<int>(row.size()) != instance.num_items()) {
        throw ConfigError("reserve matrix item count mismatch");
      }
      for (double r : row) {
        if (r < 0.0 || !std::isfinite(r)) throw ConfigError("reserves must be finite and >= 0");
      }
    }
  }
}

namespace {

uint64_t atom_key(const OppAtom& a, int m) {
  uint64_t k = 0;
  for (int j = 0; j < m; ++j) {
    k |= static_cast<uint64_t>(a.max_level[j]) << (16 * j);
    k |= static_cast<uint64_t>(a.count[j]) << (16 * j + 8);
  }
  return k;
}

OppAtom atom_from_key(uint64_t k, double prob, int m) {
  OppAtom a;
  a.prob = prob;
  for (int j = 0; j < m; ++j) {
    a.max_level[j] = static_cast<uint8_t>((k >> (16 * j)) & 0xff);
    a.count[j] = static_cast<uint8_t>((k >> (16 * j + 8)) & 0xff);
  }
  return a;
}

}  // namespace

OppAtoms Evaluator::opponent_atoms(int i, const StrategyProfile& s) const {
  const int n = instance_->num_bidders();
  const int m = instance_->num_items();

  std::map<uint64_t, double> states;
  states[0] = 1.0;  // all null so far

  for (int o = 0; o < n; ++o) {
    if (o == i) continue;
    // Collapse bidder o to their (bid vector -> probability) marginal.
    std::map<BidVec, double> draws;
    for (int t = 0; t < instance_->num_types(o); ++t) {
      double f = instance_->type_prob(o, t);
      if (f == 0.0) continue;
      for (const auto& [bv, p] : s.strategies[o][t].atoms) {
        if (p > 0.0) draws[bv] += f * p;
      }
    }
    std::map<uint64_t, double> next;
    for (const auto& [key, prob] : states) {
      OppAtom cur = atom_from_key(key, prob, m);
      for (const auto& [bv, p] : draws) {
        OppAtom merged = cur;
        for (int j = 0; j < m; ++j) {
          int l = bv_level(bv, j);
          if (l == 0) continue;
          if (l > merged.max_level[j]) {
            merged.max_level[j] = static_cast<uint8_t>(l);
            merged.count[j] = 1;
          } else if (l == merged.max_level[j]) {
            ++merged.count[j];
          }
        }
        next[atom_key(merged, m)] += prob * p;
      }
    }
    states.swap(next);
    if (static_cast<long long>(states.size()) > budget_.max_enumeration) {
      throw BudgetExceeded("opponent_atoms: state budget exceeded");
    }
  }

  OppAtoms out;
  out.reserve(states.size());
  for (const auto& [key, prob] : states) out.push_back(atom_from_key(key, prob, m));
  return out;
}

double Evaluator::utility(int i, int type, BidVec bid, const OppAtoms& opp, ItemSet value_mask,
                          ItemSet pay_mask) const {
  const int m = instance_->num_items();
  double total = 0.0;

  for (const OppAtom& atom : opp) {
    double pay = 0.0;
    ItemSet sure_mask = 0;
    int partial_items[kMaxItems];
    double partial_prob[kMaxItems];
    int num_partial = 0;

    for (int j = 0; j < m; ++j) {
      int l = bv_level(bid, j);
      if (l == 0) continue;
      double a = grid_.amount(l);
      int ml = atom.max_level[j];
      double p_win;
      if (l > ml) {
        p_win = 1.0;
      } else if (l == ml) {
        p_win = 1.0 / (atom.count[j] + 1.0);
      } else {
        p_win = 0.0;
      }
      if (contains(pay_mask, j)) {
        double r = mech_.reserve(i, j);
        double pay_win = 0.0, pay_lose = 0.0;
        switch (mech_.kind) {
          case RuleKind::kFirstPrice:
            pay_win = std::max(a, r);
            break;
          case RuleKind::kSecondPrice:
            pay_win = std::max(ml > 0 ? grid_.amount(ml) : 0.0, r);
            break;
          case RuleKind::kAllPay:
            pay_win = std::max(a, r);
            pay_lose = a;
            break;
        }
        pay += p_win * pay_win + (1.0 - p_win) * pay_lose;
      }
      if (contains(value_mask, j)) {
        if (p_win >= 1.0) {
          sure_mask |= ItemSet{1} << j;
        } else if (p_win > 0.0) {
          partial_items[num_partial] = j;
          partial_prob[num_partial] = p_win;
          ++num_partial;
        }
      }
    }

    double val = 0.0;
    for (int comb = 0; comb < (1 << num_partial); ++comb) {
      ItemSet wins = sure_mask;
      double p = 1.0;
      for (int k = 0; k < num_partial; ++k) {
        if ((comb >> k) & 1) {
          wins |= ItemSet{1} << partial_items[k];
          p *= partial_prob[k];
        } else {
          p *= 1.0 - partial_prob[k];
        }
      }
      val += p * instance_->value(i, type, wins);
    }
    total += atom.prob * (val - pay);
  }
  return total;
}

double Evaluator::utility_of_mixture(int i, int type, const MixedBids& mix,
                                     const OppAtoms& opp) const {
  double u = 0.0;
  for (const auto& [bv, p] : mix.atoms) {
    if (p > 0.0) u += p * utility(i, type, bv, opp);
  }
  return u;
}

double Evaluator::expected_value(int i, int type, BidVec bid, const OppAtoms& opp) const {
  // Same machinery, no payments.
  ItemSet all = full_set(instance_->num_items());
  double with_pay = utility(i, type, bid, opp, all, 0);
  return with_pay;
}

int active_items(BidVec v, int num_items) {
  int count = 0;
  for (int j = 0; j < num_items; ++j) {
    if (bv_level(v, j) != 0) ++count;
  }
  return count;
}

std::pair<BidVec, double> Evaluator::best_response(int i, int type, const OppAtoms& opp) const {
  const int m = instance_->num_items();
  std::vector<BidVec> candidates = enumerate_bid_vectors(grid_, m, full_set(m));
  if (static_cast<long long>(candidates.size()) * static_cast<long long>(opp.size()) >
      budget_.max_enumeration * 8) {
    throw BudgetExceeded("best_response: grid scan budget exceeded");
  }
  // Exact utility ties break toward participating in more auctions (zero-
  // margin entry over abstention), then toward the first candidate in
  // odometer order. Keeps reserve-price equilibria from burning the mass
  // sitting exactly at a reserve.
  BidVec best = 0;
  double best_u = utility(i, type, 0, opp);
  int best_active = 0;
  for (BidVec v : candidates) {
    if (v == 0) continue;
    double u = utility(i, type, v, opp);
    int active = active_items(v, m);
    if (u > best_u || (u == best_u && active > best_active)) {
      best_u = u;
      best = v;
      best_active = active;
    }
  }
  return {best, best_u};
}

double Evaluator::mu(int i, int type, ItemSet S, const OppAtoms& opp) const {
  const int m = instance_->num_items();
  std::vector<BidVec> candidates = enumerate_bid_vectors(grid_, m, S);
  double best = 0.0;  // the null vector (always a candidate) yields 0
  for (BidVec v : candidates) {
    double u = utility(i, type, v, opp, S, S);
    if (u > best) best = u;
  }
  return best;
}

std::vector<std::vector<std::vector<double>>> Evaluator::level_marginals(
    const StrategyProfile& s) const {
  const int n = instance_->num_bidders();
  const int m = instance_->num_items();
  std::vector<std::vector<std::vector<double>>> marg(
      n, std::vector<std::vector<double>>(m, std::vector<double>(grid_.num_levels(), 0.0)));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < instance_->num_types(i); ++t) {
      double f = instance_->type_prob(i, t);
      for (const auto& [bv, p] : s.strategies[i][t].atoms) {
        for (int j = 0; j < m; ++j) marg[i][j][bv_level(bv, j)] += f * p;
      }
    }
  }
  return marg;
}

double Evaluator::revenue(const StrategyProfile& s, ItemSet S) const {
  const int n = instance_->num_bidders();
  const int m = instance_->num_items();
  auto marg = level_marginals(s);

  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    if (!contains(S, j)) continue;
    // Enumerate the level combination across bidders for this item.
    std::vector<std::vector<std::pair<int, double>>> supp(n);
    long long combos = 1;
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < grid_.num_levels(); ++l) {
        if (marg[i][j][l] > 0.0) supp[i].emplace_back(l, marg[i][j][l]);
      }
      combos *= static_cast<long long>(supp[i].size());
    }
    if (combos > budget_.max_enumeration) {
      throw BudgetExceeded("revenue: per-item combination budget exceeded");
    }
    std::vector<size_t> idx(n, 0);
    while (true) {
      double prob = 1.0;
      int high = 0;
      for (int i = 0; i < n; ++i) {
        prob *= supp[i][idx[i]].second;
        high = std::max(high, supp[i][idx[i]].first);
      }
      if (prob > 0.0 && high > 0) {
        std::vector<int> tied;
        for (int i = 0; i < n; ++i) {
          if (supp[i][idx[i]].first == high) tied.push_back(i);
        }
        double amount_high = grid_.amount(high);
        double pay = 0.0;
        if (mech_.kind == RuleKind::kAllPay) {
          for (int i = 0; i < n; ++i) {
            int l = supp[i][idx[i]].first;
            if (l > 0) pay += grid_.amount(l);
          }
          for (int w : tied) {
            pay += (std::max(amount_high, mech_.reserve(w, j)) - amount_high) /
                   static_cast<double>(tied.size());
          }
        } else {
          double second = 0.0;
          if (mech_.kind == RuleKind::kSecondPrice) {
            if (tied.size() > 1) {
              second = amount_high;
            } else {
              int second_level = 0;
              for (int i = 0; i < n; ++i) {
                int l = supp[i][idx[i]].first;
                if (i != tied[0] && l > second_level) second_level = l;
              }
              second = second_level > 0 ? grid_.amount(second_level) : 0.0;
            }
          }
          for (int w : tied) {
            double base = mech_.kind == RuleKind::kFirstPrice ? amount_high : second;
            pay += std::max(base, mech_.reserve(w, j)) / static_cast<double>(tied.size());
          }
        }
        total += prob * pay;
      }
      int i = 0;
      while (i < n) {
        if (++idx[i] < supp[i].size()) break;
        idx[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
  }
  return total;
}

double Evaluator::welfare(const StrategyProfile& s) const {
  double w = 0.0;
  for (int i = 0; i < instance_->num_bidders(); ++i) {
    OppAtoms opp = opponent_atoms(i, s);
    for (int t = 0; t < instance_->num_types(i); ++t) {
      double f = instance_->type_prob(i, t);
      if (f == 0.0) continue;
      double v = 0.0;
      for (const auto& [bv, p] : s.strategies[i][t].atoms) {
        if (p > 0.0) v += p * expected_value(i, t, bv, opp);
      }
      w += f * v;
    }
  }
  return w;
}

double Evaluator::interim_utility(int i, int type, const StrategyProfile& s) const {
  OppAtoms opp = opponent_atoms(i, s);
  return utility_of_mixture(i, type, s.strategies[i][type], opp);
}

RegretCertificate Evaluator::certificate(const StrategyProfile& s) const {
  RegretCertificate cert;
  for (int i = 0; i < instance_->num_bidders(); ++i) {
    OppAtoms opp = opponent_atoms(i, s);
    for (int t = 0; t < instance_->num_types(i); ++t) {
      RegretEntry e;
      e.bidder = i;
      e.type = t;
      e.eq_utility = utility_of_mixture(i, t, s.strategies[i][t], opp);
      auto [br, bu] = best_response(i, t, opp);
      e.br_bid = br;
      e.br_utility = bu;
      cert.entries.push_back(e);
      cert.epsilon = std::max(cert.epsilon, e.regret());
    }
  }
  return cert;
}

std::pair<double, double> Evaluator::utility_mc(int i, int type, BidVec bid,
                                                const StrategyProfile& s, int samples,
                                                uint64_t seed) const {
  const int n = instance_->num_bidders();
  const int m = std::min(instance_->num_items(), kMaxItems);
  Rng rng(seed);
  double sum = 0.0, sumsq = 0.0;
  for (int it = 0; it < samples; ++it) {
    OppAtom atom;
    atom.prob = 1.0;
    for (int o = 0; o < n; ++o) {
      if (o == i) continue;
      // Sample type, then a bid vector from the mixture.
      double u = rng.next_double();
      int t = 0;
      double acc = 0.0;
      for (; t < instance_->num_types(o) - 1; ++t) {
        acc += instance_->type_prob(o, t);
        if (u < acc) break;
      }
      const MixedBids& mix = s.strategies[o][t];
      double u2 = rng.next_double();
      BidVec bv = mix.atoms.back().first;
      double acc2 = 0.0;
      for (const auto& [candidate, p] : mix.atoms) {
        acc2 += p;
        if (u2 < acc2) {
          bv = candidate;
          break;
        }
      }
      for (int j = 0; j < m; ++j) {
        int l = bv_level(bv, j);
        if (l == 0) continue;
        if (l > atom.max_level[j]) {
          atom.max_level[j] = static_cast<uint8_t>(l);
          atom.count[j] = 1;
        } else if (l == atom.max_level[j]) {
          ++atom.count[j];
        }
      }
    }
    OppAtoms one{atom};
    double u = utility(i, type, bid, one);
    sum += u;
    sumsq += u * u;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sumsq / samples - mean * mean);
  double stderr_ = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
  return {mean, stderr_};
}

double Evaluator::max_bid_deviation_utility(int i, int type, ItemSet S, const StrategyProfile& s,
                                            double shift) const {
  const int m = instance_->num_items();
  OppAtoms opp = opponent_atoms(i, s);
  double total = 0.0;
  for (const OppAtom& sampled : opp) {
    BidVec dev = 0;
    for (int j = 0; j < m; ++j) {
      if (!contains(S, j)) continue;
      double base = sampled.max_level[j] > 0 ? grid_.amount(sampled.max_level[j]) : 0.0;
      dev = bv_with_level(dev, j, grid_.level_at_least(base + shift));
    }
    total += sampled.prob * utility(i, type, dev, opp, S, S);
  }
  return total;
}

}  // namespace simauct
