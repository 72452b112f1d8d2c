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

#include "simauct/serialize.hpp"

#include <cmath>
#include <sstream>

namespace simauct {

namespace {

Json bids_to_json(const BidGrid& grid, BidVec v, int num_items) {
  Json arr = Json::array();
  for (int j = 0; j < num_items; ++j) {
    int l = bv_level(v, j);
    if (l == 0) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(grid.amount(l));
    }
  }
  return arr;
}

BidVec bids_from_json(const BidGrid& grid, const Json& arr) {
  BidVec v = 0;
  for (size_t j = 0; j < arr.size(); ++j) {
    if (arr[j].is_null()) continue;
    double a = arr[j].get<double>();
    int level = grid.level_at_least(a);
    if (std::abs(grid.amount(level) - a) > 1e-9) {
      throw ConfigError("bid amount " + std::to_string(a) + " is not on the grid");
    }
    v = bv_with_level(v, static_cast<int>(j), level);
  }
  return v;
}

}  // namespace

Json profile_to_json(const BidGrid& grid, const StrategyProfile& profile) {
  Json j;
  j["grid"] = {{"eta", grid.eta()}, {"cap", grid.cap()}};
  Json bidders = Json::array();
  for (const auto& bidder : profile.strategies) {
    Json types = Json::array();
    for (const auto& mix : bidder) {
      Json atoms = Json::array();
      for (const auto& [bv, p] : mix.atoms) {
        Json atom;
        atom["bids"] = bids_to_json(grid, bv, kMaxItems);
        atom["prob"] = p;
        atoms.push_back(std::move(atom));
      }
      types.push_back(Json{{"atoms", std::move(atoms)}});
    }
    bidders.push_back(std::move(types));
  }
  j["bidders"] = std::move(bidders);
  return j;
}

StrategyProfile profile_from_json(const BidGrid& grid, const Json& j) {
  StrategyProfile profile;
  for (const Json& bidder : j.at("bidders")) {
    std::vector<MixedBids> types;
    for (const Json& type : bidder) {
      MixedBids mix;
      for (const Json& atom : type.at("atoms")) {
        mix.add(bids_from_json(grid, atom.at("bids")), atom.at("prob").get<double>());
      }
      mix.normalize();
      types.push_back(std::move(mix));
    }
    profile.strategies.push_back(std::move(types));
  }
  return profile;
}

Json certificate_to_json(const BidGrid& grid, const RegretCertificate& cert) {
  Json j;
  j["epsilon"] = cert.epsilon;
  Json entries = Json::array();
  for (const RegretEntry& e : cert.entries) {
    Json entry;
    entry["bidder"] = e.bidder;
    entry["type"] = e.type;
    entry["eq_utility"] = e.eq_utility;
    entry["br_utility"] = e.br_utility;
    entry["regret"] = e.regret();
    entry["br_bids"] = bids_to_json(grid, e.br_bid, kMaxItems);
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json check_to_json(const CheckResult& check) {
  Json j;
  j["name"] = check.name;
  j["statement"] = check.statement;
  j["lhs"] = check.lhs;
  j["rhs"] = check.rhs;
  j["slack_budget"] = check.slack_budget;
  j["margin"] = check.margin;
  j["pass"] = check.pass;
  j["expected_fail"] = check.expected_fail;
  j["applicable"] = check.applicable;
  j["satisfied"] = check.satisfied();
  // Wall-clock timing stays out of the report proper so byte-identical
  // reproducibility holds; cmd_verify writes a timings sidecar instead.
  j["witness"] = check.witness;
  j["seeds"] = check.seeds;
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["all_satisfied"] = report.all_satisfied();
  Json arr = Json::array();
  for (const CheckResult& c : report.checks) arr.push_back(check_to_json(c));
  j["checks"] = std::move(arr);
  return j;
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "name,lhs,rhs,slack_budget,margin,pass,expected_fail,satisfied,witness\n";
  for (const CheckResult& c : report.checks) {
    std::string witness = c.witness;
    for (char& ch : witness) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    os << c.name << "," << c.lhs << "," << c.rhs << "," << c.slack_budget << "," << c.margin
       << "," << (c.pass ? 1 : 0) << "," << (c.expected_fail ? 1 : 0) << ","
       << (c.satisfied() ? 1 : 0) << "," << witness << "\n";
  }
  return os.str();
}

Json decomposition_to_json(const DecompositionReport& d) {
  Json j;
  j["b"] = d.beta.b;
  j["beta"] = d.beta.beta;
  j["beta_condition1_ok"] = d.beta.condition1_ok;
  j["beta_condition2_ok"] = d.beta.condition2_ok;
  j["beta_violations"] = d.beta.violations;
  j["c"] = d.cutoffs.c;
  j["tau"] = d.cutoffs.tau;
  j["c_gap"] = d.cutoffs.c_gap;
  j["tau_gap"] = d.cutoffs.tau_gap;
  j["single"] = d.single;
  j["tail"] = d.tail;
  j["core"] = d.core;
  j["core_truncated"] = d.core_truncated;
  j["ef_rev"] = d.ef_rev;
  j["median_fees"] = d.median_fees;
  j["mu_hat_mean"] = d.mu_hat_mean;
  j["base_revenue"] = d.base_revenue;
  j["base_epsilon"] = d.base_epsilon;
  Json catalog = Json::array();
  for (const auto& entry : d.catalog) {
    Json e;
    e["name"] = entry.name;
    e["reserves"] = entry.reserves;
    e["condition1_ok"] = entry.condition1_ok;
    e["condition2_ok"] = entry.condition2_ok;
    e["reserve_mass"] = entry.reserve_mass;
    catalog.push_back(std::move(e));
  }
  j["catalog"] = std::move(catalog);
  j["rp_lower"] = d.rp_lower.value;
  j["rp_lower_note"] =
      "lower bound over the constructed reserve catalog and the equilibria found by the "
      "configured seeds; the exact best worst-equilibrium value is not computed";
  j["rp_best_entry"] = d.rp_lower.best_entry;
  j["rp_worst_revenue_per_entry"] = d.rp_lower.worst_revenue_per_entry;
  Json eqs = Json::array();
  for (const auto& q : d.rp_lower.equilibria) {
    eqs.push_back(Json{{"catalog_index", q.catalog_index},
                       {"seed", q.seed},
                       {"revenue", q.revenue},
                       {"epsilon", q.epsilon}});
  }
  j["rp_equilibria"] = std::move(eqs);
  return j;
}

}  // namespace simauct
