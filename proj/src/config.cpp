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

#include "simauct/config.hpp"

#include <fstream>

namespace simauct {

using Json = nlohmann::ordered_json;

namespace {

RuleKind parse_rule(const std::string& s) {
  if (s == "first_price") return RuleKind::kFirstPrice;
  if (s == "second_price") return RuleKind::kSecondPrice;
  if (s == "all_pay") return RuleKind::kAllPay;
  throw ConfigError("unknown auction rule: " + s);
}

Valuation parse_valuation(const Json& j, const ItemTypeSpace& space) {
  std::string family = j.at("family").get<std::string>();
  if (family == "additive") return Valuation::additive();
  if (family == "unit_demand") return Valuation::unit_demand();
  if (family == "xos") return Valuation::xos(j.at("clauses").get<int>());
  if (family == "constrained_additive") {
    if (j.contains("cardinality")) {
      return Valuation::constrained_additive_cardinality(j.at("cardinality").get<int>());
    }
    std::vector<ItemSet> sets;
    for (const Json& set : j.at("feasible_sets")) {
      ItemSet mask = 0;
      for (const Json& item : set) mask |= ItemSet{1} << item.get<int>();
      sets.push_back(mask);
    }
    return Valuation::constrained_additive(std::move(sets));
  }
  if (family == "tabular") {
    std::vector<std::vector<double>> table;
    for (const Json& row : j.at("table")) table.push_back(row.get<std::vector<double>>());
    return Valuation::tabular(space, std::move(table));
  }
  throw ConfigError("unknown valuation family: " + family);
}

}  // namespace

Instance instance_from_json(const Json& j) {
  int items = j.at("items").get<int>();
  std::vector<BidderModel> bidders;
  for (const Json& bj : j.at("bidders")) {
    BidderModel model;
    model.space.tokens.resize(items);
    model.pmf.resize(items);
    const Json& item_arr = bj.at("items");
    if (static_cast<int>(item_arr.size()) != items) {
      throw ConfigError("bidder item list length mismatch");
    }
    for (int it = 0; it < items; ++it) {
      const Json& ij = item_arr[it];
      model.pmf[it] = ij.at("pmf").get<std::vector<double>>();
      if (ij.contains("values")) {
        for (double v : ij.at("values").get<std::vector<double>>()) {
          Token tok;
          tok.value = v;
          model.space.tokens[it].push_back(tok);
        }
      } else if (ij.contains("clause_values")) {
        for (const Json& cv : ij.at("clause_values")) {
          Token tok;
          tok.clause_values = cv.get<std::vector<double>>();
          model.space.tokens[it].push_back(tok);
        }
      } else {
        throw ConfigError("item needs 'values' or 'clause_values'");
      }
      if (model.pmf[it].size() != model.space.tokens[it].size()) {
        throw ConfigError("pmf length does not match token count");
      }
    }
    model.valuation = parse_valuation(bj.at("valuation"), model.space);
    bidders.push_back(std::move(model));
  }
  return Instance(items, std::move(bidders));
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["items"] = inst.num_items();
  Json bidders = Json::array();
  for (int i = 0; i < inst.num_bidders(); ++i) {
    const BidderModel& model = inst.bidder(i);
    Json bj;
    switch (model.valuation.family()) {
      case ValuationFamily::kAdditive:
        bj["valuation"] = {{"family", "additive"}};
        break;
      case ValuationFamily::kUnitDemand:
        bj["valuation"] = {{"family", "unit_demand"}};
        break;
      case ValuationFamily::kXos:
        bj["valuation"] = {{"family", "xos"}, {"clauses", model.valuation.xos_clauses()}};
        break;
      case ValuationFamily::kConstrainedAdditive: {
        if (model.valuation.cardinality() >= 0) {
          bj["valuation"] = {{"family", "constrained_additive"},
                             {"cardinality", model.valuation.cardinality()}};
        } else {
          Json sets = Json::array();
          for (ItemSet mask : model.valuation.feasible_sets()) {
            Json set = Json::array();
            for (int item = 0; item < inst.num_items(); ++item) {
              if (contains(mask, item)) set.push_back(item);
            }
            sets.push_back(std::move(set));
          }
          bj["valuation"] = {{"family", "constrained_additive"}, {"feasible_sets", std::move(sets)}};
        }
        break;
      }
      case ValuationFamily::kTabular:
        bj["valuation"] = {{"family", "tabular"}, {"table", model.valuation.table()}};
        break;
    }
    Json item_arr = Json::array();
    for (int it = 0; it < inst.num_items(); ++it) {
      Json ij;
      ij["pmf"] = model.pmf[it];
      bool xos = model.valuation.family() == ValuationFamily::kXos;
      if (xos) {
        Json cvs = Json::array();
        for (const Token& tok : model.space.tokens[it]) cvs.push_back(tok.clause_values);
        ij["clause_values"] = std::move(cvs);
      } else {
        Json values = Json::array();
        for (const Token& tok : model.space.tokens[it]) values.push_back(tok.value);
        ij["values"] = std::move(values);
      }
      item_arr.push_back(std::move(ij));
    }
    bj["items"] = std::move(item_arr);
    bidders.push_back(std::move(bj));
  }
  j["bidders"] = std::move(bidders);
  return j;
}

ScenarioConfig parse_config(const Json& doc) {
  ScenarioConfig config;
  config.raw = doc;
  if (!doc.contains("instance")) throw ConfigError("config needs an 'instance' section");
  config.instance = std::make_shared<Instance>(instance_from_json(doc.at("instance")));

  if (doc.contains("mechanism")) {
    const Json& mj = doc.at("mechanism");
    config.mechanism.rule = parse_rule(mj.value("rule", std::string("first_price")));
    std::string wrapper = mj.value("wrapper", std::string("none"));
    if (wrapper == "none") {
      config.mechanism.wrapper = WrapperKind::kNone;
    } else if (wrapper == "entry_fee") {
      config.mechanism.wrapper = WrapperKind::kEntryFee;
    } else if (wrapper == "reserve") {
      config.mechanism.wrapper = WrapperKind::kReserve;
    } else {
      throw ConfigError("unknown wrapper: " + wrapper);
    }
    config.mechanism.delta = mj.value("delta", 0.01);
    if (config.mechanism.delta <= 0.0 || config.mechanism.delta >= 1.0) {
      throw ConfigError("delta must lie in (0,1)");
    }
    if (mj.contains("fees") && mj.at("fees").is_array()) {
      config.mechanism.fees_derived = false;
      config.mechanism.fees = mj.at("fees").get<std::vector<double>>();
      for (double f : config.mechanism.fees) {
        if (f < 0.0) throw ConfigError("fees must be nonnegative");
      }
    }
    if (mj.contains("reserves") && mj.at("reserves").is_array()) {
      config.mechanism.reserves_derived = false;
      for (const Json& row : mj.at("reserves")) {
        config.mechanism.reserves.push_back(row.get<std::vector<double>>());
      }
    }
  }

  if (doc.contains("solver")) {
    const Json& sj = doc.at("solver");
    if (sj.contains("eta")) config.solver.eta = sj.at("eta").get<double>();
    if (sj.contains("cap")) config.solver.cap = sj.at("cap").get<double>();
    std::string method = sj.value("method", std::string("ibr"));
    if (method == "ibr") {
      config.solver.method = SolveMethod::kIteratedBestResponse;
    } else if (method == "fictitious_play") {
      config.solver.method = SolveMethod::kFictitiousPlay;
    } else {
      throw ConfigError("unknown solver method: " + method);
    }
    if (sj.contains("epsilon_target")) {
      config.solver.epsilon_target = sj.at("epsilon_target").get<double>();
    }
    config.solver.max_iters = sj.value("max_iters", 4000);
    if (sj.contains("seeds")) config.solver.seeds = sj.at("seeds").get<std::vector<uint64_t>>();
    if (config.solver.seeds.empty()) throw ConfigError("solver needs at least one seed");
    config.solver.certificate_interval = sj.value("certificate_interval", 5);
    if (sj.contains("initial_profile")) config.solver.initial_profile = sj.at("initial_profile");
  }

  if (doc.contains("budget")) {
    const Json& bj = doc.at("budget");
    config.budget_b = bj.value("b", 0.2);
    if (config.budget_b <= 0.0 || config.budget_b >= 1.0) {
      throw ConfigError("budget share b must lie in (0,1)");
    }
    if (bj.contains("max_enumeration")) {
      config.budget.max_enumeration = bj.at("max_enumeration").get<long long>();
    }
    if (bj.contains("max_lp_nonzeros")) {
      config.budget.max_lp_nonzeros = bj.at("max_lp_nonzeros").get<long long>();
    }
  }

  if (doc.contains("checks")) {
    for (const Json& c : doc.at("checks")) {
      if (c.is_string()) {
        config.checks.push_back(Json{{"name", c.get<std::string>()}});
      } else {
        if (!c.contains("name")) throw ConfigError("check entry needs a name");
        config.checks.push_back(c);
      }
    }
  }
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

BidGrid grid_for(const ScenarioConfig& config) {
  if (config.solver.eta.has_value() || config.solver.cap.has_value()) {
    if (!config.solver.eta.has_value() || !config.solver.cap.has_value()) {
      throw ConfigError("solver grid needs both eta and cap (or neither)");
    }
    return BidGrid::make(*config.solver.eta, *config.solver.cap);
  }
  return BidGrid::auto_sized(config.instance->max_item_value());
}

double epsilon_target_for(const ScenarioConfig& config, const BidGrid& grid) {
  if (config.solver.epsilon_target.has_value()) return *config.solver.epsilon_target;
  return 0.01 * grid.cap();
}

}  // namespace simauct
