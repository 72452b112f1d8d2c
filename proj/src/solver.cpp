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

#include "simauct/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "simauct/rng.hpp"

namespace simauct {

namespace {

StrategyProfile random_start(const Instance& instance, const BidGrid& grid, uint64_t seed) {
  Rng rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  StrategyProfile s;
  s.strategies.resize(instance.num_bidders());
  for (int i = 0; i < instance.num_bidders(); ++i) {
    s.strategies[i].resize(instance.num_types(i));
    for (int t = 0; t < instance.num_types(i); ++t) {
      BidVec v = 0;
      for (int j = 0; j < instance.num_items(); ++j) {
        // Random level between null and the own-value level.
        int cap_level = grid.level_at_least(instance.item_value_of_type(i, t, j));
        v = bv_with_level(v, j, rng.next_index(cap_level + 1));
      }
      s.strategies[i][t] = MixedBids::pure(v);
    }
  }
  return s;
}

// Pure reduction: highest-probability atom per (bidder, type).
StrategyProfile pure_reduction(const StrategyProfile& s) {
  StrategyProfile out = s;
  for (auto& bidder : out.strategies) {
    for (auto& mix : bidder) {
      auto best = std::max_element(mix.atoms.begin(), mix.atoms.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
      mix = MixedBids::pure(best->first);
    }
  }
  return out;
}

struct IbrOutcome {
  StrategyProfile profile;
  RegretCertificate certificate;
  int iterations = 0;
  bool reached_target = false;
  bool cycled = false;
};

IbrOutcome run_ibr(const Evaluator& eval, StrategyProfile current, double target, int max_iters) {
  const Instance& instance = eval.instance();
  IbrOutcome out;
  std::unordered_set<uint64_t> seen;
  RegretCertificate best_cert;
  StrategyProfile best_profile = current;
  double best_eps = -1.0;

  for (int iter = 0; iter < max_iters; ++iter) {
    seen.insert(current.hash());
    StrategyProfile next = current;
    RegretCertificate cert;
    for (int i = 0; i < instance.num_bidders(); ++i) {
      OppAtoms opp = eval.opponent_atoms(i, current);
      for (int t = 0; t < instance.num_types(i); ++t) {
        RegretEntry e;
        e.bidder = i;
        e.type = t;
        e.eq_utility = eval.utility_of_mixture(i, t, current.strategies[i][t], opp);
        auto [br, bu] = eval.best_response(i, t, opp);
        e.br_bid = br;
        e.br_utility = bu;
        cert.entries.push_back(e);
        cert.epsilon = std::max(cert.epsilon, e.regret());
        next.strategies[i][t] = MixedBids::pure(br);
      }
    }
    out.iterations = iter + 1;
    if (best_eps < 0.0 || cert.epsilon < best_eps) {
      best_eps = cert.epsilon;
      best_cert = cert;
      best_profile = current;
    }
    if (cert.epsilon <= target) {
      out.profile = current;
      out.certificate = cert;
      out.reached_target = true;
      return out;
    }
    if (seen.count(next.hash())) {
      out.cycled = true;
      break;
    }
    current = std::move(next);
  }
  out.profile = best_profile;
  out.certificate = best_cert;
  return out;
}

// Fictitious play for two bidders with incremental cumulative-utility
// tables: U[i][t][q] accumulates the utility of bidding q against each
// round's opposing pure play, so certificates for the running average come
// out of the tables directly.
struct FpState {
  std::vector<std::vector<std::vector<double>>> tables;       // [bidder][type][bidvec]
  std::vector<std::vector<std::map<BidVec, int>>> history;    // own past plays
  std::vector<std::vector<BidVec>> play;                      // current round plays
  int rounds = 0;
};

StrategyProfile fp_average(const Instance& instance, const FpState& st) {
  StrategyProfile s;
  s.strategies.resize(instance.num_bidders());
  for (int i = 0; i < instance.num_bidders(); ++i) {
    s.strategies[i].resize(instance.num_types(i));
    for (int t = 0; t < instance.num_types(i); ++t) {
      MixedBids mix;
      for (const auto& [bv, cnt] : st.history[i][t]) {
        mix.atoms.emplace_back(bv, static_cast<double>(cnt) / st.rounds);
      }
      s.strategies[i][t] = std::move(mix);
    }
  }
  return s;
}

class FpTwoBidder {
 public:
  FpTwoBidder(const Evaluator& eval, const std::vector<BidVec>& candidates)
      : eval_(eval), instance_(eval.instance()), grid_(eval.grid()), candidates_(candidates) {
    decode_.assign(candidates.size(), 0);
    dense_index_.clear();
    for (size_t k = 0; k < candidates.size(); ++k) {
      decode_[k] = candidates[k];
      dense_index_[candidates[k]] = static_cast<int>(k);
    }
  }

  // Adds weight * u(q | opponent bids opp_bv) to every entry of bidder i's
  // tables. Win/payment terms are shared across own types.
  void accumulate(FpState* st, int i, BidVec opp_bv, double weight) const {
    const int m = instance_.num_items();
    const int num_types = instance_.num_types(i);
    for (size_t k = 0; k < candidates_.size(); ++k) {
      BidVec q = candidates_[k];
      double pay = 0.0;
      ItemSet sure = 0;
      int partial_items[kMaxItems];
      int num_partial = 0;
      for (int j = 0; j < m; ++j) {
        int l = bv_level(q, j);
        if (l == 0) continue;
        double a = grid_.amount(l);
        int ml = bv_level(opp_bv, j);
        double p_win = l > ml ? 1.0 : (l == ml ? 0.5 : 0.0);
        double r = eval_.mechanism().reserve(i, j);
        double pay_win = 0.0, pay_lose = 0.0;
        switch (eval_.mechanism().kind) {
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
        if (p_win >= 1.0) {
          sure |= ItemSet{1} << j;
        } else if (p_win > 0.0) {
          partial_items[num_partial++] = j;
        }
      }
      for (int t = 0; t < num_types; ++t) {
        double val = 0.0;
        for (int comb = 0; comb < (1 << num_partial); ++comb) {
          ItemSet wins = sure;
          double p = 1.0;
          for (int b = 0; b < num_partial; ++b) {
            if ((comb >> b) & 1) wins |= ItemSet{1} << partial_items[b];
            p *= 0.5;
          }
          val += p * instance_.value(i, t, wins);
        }
        st->tables[i][t][k] += weight * (val - pay);
      }
    }
  }

  int index_of(BidVec v) const { return dense_index_.at(v); }
  BidVec decode(int k) const { return decode_[k]; }

 private:
  const Evaluator& eval_;
  const Instance& instance_;
  const BidGrid& grid_;
  const std::vector<BidVec>& candidates_;
  std::vector<BidVec> decode_;
  std::map<BidVec, int> dense_index_;
};

struct FpOutcome {
  StrategyProfile profile;
  RegretCertificate certificate;
  int iterations = 0;
  bool reached_target = false;
};

FpOutcome run_fp_two_bidders(const Evaluator& eval, StrategyProfile start, double target,
                             int max_iters, int cert_interval) {
  const Instance& instance = eval.instance();
  const int m = instance.num_items();
  std::vector<BidVec> candidates = enumerate_bid_vectors(eval.grid(), m, full_set(m));
  FpTwoBidder engine(eval, candidates);

  StrategyProfile start_pure = pure_reduction(start);
  FpState st;
  st.tables.resize(2);
  st.history.resize(2);
  st.play.resize(2);
  for (int i = 0; i < 2; ++i) {
    st.tables[i].assign(instance.num_types(i), std::vector<double>(candidates.size(), 0.0));
    st.history[i].resize(instance.num_types(i));
    st.play[i].resize(instance.num_types(i));
    for (int t = 0; t < instance.num_types(i); ++t) {
      st.play[i][t] = start_pure.strategies[i][t].atoms[0].first;
    }
  }

  FpOutcome out;
  StrategyProfile best_profile = start_pure;
  RegretCertificate best_cert;
  double best_eps = -1.0;

  for (int round = 1; round <= max_iters; ++round) {
    // Record this round's plays and fold them into the tables.
    for (int i = 0; i < 2; ++i) {
      int o = 1 - i;
      for (int t = 0; t < instance.num_types(i); ++t) st.history[i][t][st.play[i][t]] += 1;
      for (int to = 0; to < instance.num_types(o); ++to) {
        double f = instance.type_prob(o, to);
        if (f > 0.0) engine.accumulate(&st, i, st.play[o][to], f);
      }
    }
    st.rounds = round;

    // Next round: best response to the empirical average; exact ties prefer
    // participation, mirroring Evaluator::best_response.
    for (int i = 0; i < 2; ++i) {
      for (int t = 0; t < instance.num_types(i); ++t) {
        const auto& table = st.tables[i][t];
        int best_k = 0;
        int best_active = active_items(engine.decode(0), instance.num_items());
        for (size_t k = 1; k < table.size(); ++k) {
          int active = active_items(engine.decode(static_cast<int>(k)), instance.num_items());
          if (table[k] > table[best_k] ||
              (table[k] == table[best_k] && active > best_active)) {
            best_k = static_cast<int>(k);
            best_active = active;
          }
        }
        st.play[i][t] = engine.decode(best_k);
      }
    }

    bool checkpoint = (round % cert_interval == 0) || round == max_iters;
    if (!checkpoint) continue;

    RegretCertificate cert;
    for (int i = 0; i < 2; ++i) {
      for (int t = 0; t < instance.num_types(i); ++t) {
        const auto& table = st.tables[i][t];
        double br_u = table[0];
        int br_k = 0;
        for (size_t k = 1; k < table.size(); ++k) {
          if (table[k] > br_u) {
            br_u = table[k];
            br_k = static_cast<int>(k);
          }
        }
        double eq_u = 0.0;
        for (const auto& [bv, cnt] : st.history[i][t]) {
          eq_u += static_cast<double>(cnt) * table[engine.index_of(bv)];
        }
        RegretEntry e;
        e.bidder = i;
        e.type = t;
        e.br_utility = br_u / round;
        e.eq_utility = eq_u / (static_cast<double>(round) * round);
        e.br_bid = engine.decode(br_k);
        cert.entries.push_back(e);
        cert.epsilon = std::max(cert.epsilon, e.regret());
      }
    }
    out.iterations = round;
    if (best_eps < 0.0 || cert.epsilon < best_eps) {
      best_eps = cert.epsilon;
      best_cert = cert;
      best_profile = fp_average(instance, st);
    }
    if (cert.epsilon <= target) {
      out.profile = fp_average(instance, st);
      out.certificate = cert;
      out.reached_target = true;
      return out;
    }
  }
  out.profile = best_profile;
  out.certificate = best_cert;
  return out;
}

// General-n fictitious play: recomputes everything against the product of
// empirical averages. Only used off the two-bidder fast path.
FpOutcome run_fp_general(const Evaluator& eval, StrategyProfile start, double target,
                         int max_iters, int cert_interval) {
  const Instance& instance = eval.instance();
  const int n = instance.num_bidders();
  FpState st;
  st.history.resize(n);
  st.play.resize(n);
  StrategyProfile start_pure = pure_reduction(start);
  for (int i = 0; i < n; ++i) {
    st.history[i].resize(instance.num_types(i));
    st.play[i].resize(instance.num_types(i));
    for (int t = 0; t < instance.num_types(i); ++t) {
      st.play[i][t] = start_pure.strategies[i][t].atoms[0].first;
    }
  }

  FpOutcome out;
  StrategyProfile best_profile = start_pure;
  RegretCertificate best_cert;
  double best_eps = -1.0;

  for (int round = 1; round <= max_iters; ++round) {
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < instance.num_types(i); ++t) st.history[i][t][st.play[i][t]] += 1;
    }
    st.rounds = round;
    StrategyProfile avg = fp_average(instance, st);
    for (int i = 0; i < n; ++i) {
      OppAtoms opp = eval.opponent_atoms(i, avg);
      for (int t = 0; t < instance.num_types(i); ++t) {
        st.play[i][t] = eval.best_response(i, t, opp).first;
      }
    }
    bool checkpoint = (round % cert_interval == 0) || round == max_iters;
    if (!checkpoint) continue;
    RegretCertificate cert = eval.certificate(avg);
    out.iterations = round;
    if (best_eps < 0.0 || cert.epsilon < best_eps) {
      best_eps = cert.epsilon;
      best_cert = cert;
      best_profile = avg;
    }
    if (cert.epsilon <= target) {
      out.profile = avg;
      out.certificate = cert;
      out.reached_target = true;
      return out;
    }
  }
  out.profile = best_profile;
  out.certificate = best_cert;
  return out;
}

FpOutcome run_fp(const Evaluator& eval, StrategyProfile start, double target, int max_iters,
                 int cert_interval) {
  if (eval.instance().num_bidders() == 2) {
    return run_fp_two_bidders(eval, std::move(start), target, max_iters, cert_interval);
  }
  return run_fp_general(eval, std::move(start), target, max_iters, cert_interval);
}

}  // namespace

SolveResult solve_bne(const Instance& instance, const BidGrid& grid, const EvalMechanism& mech,
                      const SolverConfig& config) {
  Evaluator eval(instance, grid, mech);
  StrategyProfile start = config.initial_profile.has_value()
                              ? *config.initial_profile
                              : random_start(instance, grid, config.seed);

  SolveResult result;
  if (config.method == SolveMethod::kFictitiousPlay) {
    FpOutcome fp = run_fp(eval, start, config.epsilon_target, config.max_iters,
                          config.certificate_interval);
    result.profile = fp.profile;
    result.certificate = fp.certificate;
    result.iterations = fp.iterations;
    result.method_used = "fictitious_play";
    result.reached_target = fp.reached_target;
    return result;
  }

  // Best-response iteration either lands on a low-regret profile quickly or
  // cycles; cap it and hand the full budget to fictitious play afterwards.
  IbrOutcome ibr = run_ibr(eval, start, config.epsilon_target, std::min(config.max_iters, 200));
  if (ibr.reached_target) {
    result.profile = ibr.profile;
    result.certificate = ibr.certificate;
    result.iterations = ibr.iterations;
    result.method_used = "ibr";
    result.reached_target = true;
    return result;
  }

  result.profile = ibr.profile;
  result.certificate = ibr.certificate;
  result.iterations = ibr.iterations;
  result.method_used = "ibr+fictitious_play";

  auto absorb = [&result](const FpOutcome& fp) {
    result.iterations += fp.iterations;
    if (fp.certificate.epsilon < result.certificate.epsilon || fp.reached_target) {
      result.profile = fp.profile;
      result.certificate = fp.certificate;
      result.reached_target = fp.reached_target;
    }
  };
  absorb(run_fp(eval, ibr.profile, config.epsilon_target, config.max_iters,
                config.certificate_interval));
  if (!result.reached_target) {
    // The cycle profile can be a poor averaging seed; retry from the start.
    absorb(run_fp(eval, start, config.epsilon_target, config.max_iters,
                  config.certificate_interval));
  }
  return result;
}

SolveResult solve_best_of(const Instance& instance, const BidGrid& grid,
                          const EvalMechanism& mech, const SolverConfig& config,
                          const std::vector<uint64_t>& seeds) {
  SolveResult best;
  bool first = true;
  for (uint64_t seed : seeds) {
    SolverConfig c = config;
    c.seed = seed;
    SolveResult r = solve_bne(instance, grid, mech, c);
    if (first || r.certificate.epsilon < best.certificate.epsilon) {
      best = std::move(r);
      first = false;
    }
    if (best.reached_target) break;
  }
  return best;
}

}  // namespace simauct
