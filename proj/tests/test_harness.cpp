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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "simauct/harness.hpp"

using namespace simauct;

namespace {

namespace fs = std::filesystem;

Json small_config() {
  Json doc;
  doc["instance"] = {
      {"items", 2},
      {"bidders",
       Json::array({Json{{"valuation", {{"family", "additive"}}},
                         {"items", Json::array({Json{{"pmf", {0.5, 0.5}}, {"values", {1.0, 2.0}}},
                                                Json{{"pmf", {0.5, 0.5}}, {"values", {1.0, 2.0}}}})}},
                    Json{{"valuation", {{"family", "additive"}}},
                         {"items", Json::array({Json{{"pmf", {0.5, 0.5}}, {"values", {1.0, 2.0}}},
                                                Json{{"pmf", {0.5, 0.5}}, {"values", {1.0, 2.0}}}})}}})}};
  doc["mechanism"] = {{"rule", "first_price"}};
  doc["solver"] = {{"max_iters", 150}, {"seeds", {0, 1}}};
  return doc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config schema errors throw ConfigError") {
  Json doc = small_config();
  doc["instance"]["bidders"][0]["items"][0]["pmf"] = {0.5, 0.6};
  CHECK_THROWS_AS(parse_config(doc), ConfigError);

  Json no_instance;
  no_instance["mechanism"] = {{"rule", "first_price"}};
  CHECK_THROWS_AS(parse_config(no_instance), ConfigError);

  Json bad_rule = small_config();
  bad_rule["mechanism"]["rule"] = "third_price";
  CHECK_THROWS_AS(parse_config(bad_rule), ConfigError);

  Json bad_check = small_config();
  bad_check["checks"] = Json::array({Json{{"nome", "typo"}}});
  CHECK_THROWS_AS(parse_config(bad_check), ConfigError);
}

TEST_CASE("instance round-trips through json") {
  ScenarioConfig config = parse_config(small_config());
  Json j = instance_to_json(*config.instance);
  Instance again = instance_from_json(j);
  CHECK(again.num_bidders() == config.instance->num_bidders());
  CHECK(again.num_types(0) == config.instance->num_types(0));
  for (int t = 0; t < again.num_types(0); ++t) {
    CHECK(again.value(0, t, 0b11) == config.instance->value(0, t, 0b11));
  }
}

TEST_CASE("strategy profiles round-trip through json") {
  ScenarioConfig config = parse_config(small_config());
  BidGrid grid = grid_for(config);
  StrategyProfile s;
  s.strategies.resize(2);
  for (int i = 0; i < 2; ++i) {
    for (int t = 0; t < config.instance->num_types(i); ++t) {
      MixedBids mix;
      mix.add(bv_with_level(bv_with_level(0, 0, 1 + t % 3), 1, 0), 0.25);
      mix.add(bv_with_level(bv_with_level(0, 0, 2), 1, 3), 0.75);
      s.strategies[i].push_back(std::move(mix));
    }
  }
  Json j = profile_to_json(grid, s);
  StrategyProfile back = profile_from_json(grid, j);
  CHECK(back.hash() == s.hash());
}

TEST_CASE("solve writes profile and certificate files") {
  ScenarioConfig config = parse_config(small_config());
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_solve").string();
  fs::remove_all(options.out_dir);
  CHECK(cmd_solve(config, options) == kExitOk);
  CHECK(fs::exists(fs::path(options.out_dir) / "profile.json"));
  CHECK(fs::exists(fs::path(options.out_dir) / "certificate.json"));
}

TEST_CASE("solve with derived reserves reports the best catalog auction") {
  Json doc = small_config();
  doc["mechanism"]["wrapper"] = "reserve";
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_solve_rp").string();
  fs::remove_all(options.out_dir);
  CHECK(cmd_solve(config, options) == kExitOk);
  Json reserves = Json::parse(slurp(fs::path(options.out_dir) / "reserves.json"));
  CHECK(reserves.contains("name"));
  CHECK(reserves.at("reserves").size() == 2);
  CHECK(fs::exists(fs::path(options.out_dir) / "certificate.json"));
}

TEST_CASE("verify reports are byte-identical across runs") {
  Json doc = small_config();
  doc["checks"] = Json::array({"c_efficiency", "decomposition_upper", "reserve_floor"});
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  fs::path base = fs::temp_directory_path() / "simauct_test_verify";
  fs::remove_all(base);
  options.out_dir = (base / "a").string();
  int rc1 = cmd_verify(config, options);
  options.out_dir = (base / "b").string();
  int rc2 = cmd_verify(config, options);
  CHECK(rc1 == rc2);
  CHECK(slurp(base / "a" / "report.json") == slurp(base / "b" / "report.json"));
  CHECK(slurp(base / "a" / "report.csv") == slurp(base / "b" / "report.csv"));
}

TEST_CASE("verify exit code reflects failures and expected failures") {
  // An impossibly strong efficiency requirement must fail...
  Json doc = small_config();
  doc["checks"] = Json::array({Json{{"name", "c_efficiency"}, {"c", 50.0}, {"slack", 0.0}}});
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  CHECK(cmd_verify(config, options) == kExitCheckFailed);

  // ...unless the config marks the failure as intended.
  doc["checks"] = Json::array(
      {Json{{"name", "c_efficiency"}, {"c", 50.0}, {"slack", 0.0}, {"expect", "fail"}}});
  ScenarioConfig expected = parse_config(doc);
  CHECK(cmd_verify(expected, options) == kExitOk);
}

TEST_CASE("budget limits surface as BudgetExceeded") {
  Json doc = small_config();
  doc["budget"] = {{"b", 0.2}, {"max_lp_nonzeros", 10}};
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  CHECK_THROWS_AS(cmd_opt(config, options), BudgetExceeded);
}

TEST_CASE("decompose emits the full report") {
  ScenarioConfig config = parse_config(small_config());
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_decompose").string();
  fs::remove_all(options.out_dir);
  CHECK(cmd_decompose(config, options) == kExitOk);
  Json j = Json::parse(slurp(fs::path(options.out_dir) / "decomposition.json"));
  CHECK(j.contains("single"));
  CHECK(j.contains("tail"));
  CHECK(j.contains("core"));
  CHECK(j.contains("core_truncated"));
  CHECK(j.contains("rp_lower"));
  CHECK(j.at("opt_revenue").get<double>() > 0.0);
}

TEST_CASE("opt command emits the LP on request") {
  ScenarioConfig config = parse_config(small_config());
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_opt").string();
  fs::remove_all(options.out_dir);
  options.emit_lp_path = (fs::path(options.out_dir) / "model.lp").string();
  fs::create_directories(options.out_dir);
  CHECK(cmd_opt(config, options) == kExitOk);
  std::string lp = slurp(options.emit_lp_path);
  CHECK(lp.find("Maximize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
}

TEST_CASE("default suite on the shipped config matches the pinned golden report") {
  ScenarioConfig config =
      load_config_file(std::string(SIMAUCT_SOURCE_DIR) + "/configs/additive_2x2.json");
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_golden").string();
  fs::remove_all(options.out_dir);
  cmd_verify(config, options);
  std::string fresh = slurp(fs::path(options.out_dir) / "report.json");
  std::string golden = slurp(fs::path(SIMAUCT_SOURCE_DIR) / "tests" / "data" /
                             "golden_report.json");
  REQUIRE(!golden.empty());
  CHECK(fresh == golden);
}

TEST_CASE("three-item mixed-family scenario runs the default suite") {
  Json doc;
  doc["instance"] = {
      {"items", 3},
      {"bidders",
       Json::array(
           {Json{{"valuation", {{"family", "unit_demand"}}},
                 {"items", Json::array({Json{{"pmf", {0.5, 0.5}}, {"values", {1.0, 3.0}}},
                                        Json{{"pmf", {1.0}}, {"values", {2.0}}},
                                        Json{{"pmf", {0.75, 0.25}}, {"values", {1.0, 4.0}}}})}},
            Json{{"valuation", {{"family", "additive"}}},
                 {"items", Json::array({Json{{"pmf", {1.0}}, {"values", {2.0}}},
                                        Json{{"pmf", {0.5, 0.5}}, {"values", {1.0, 2.0}}},
                                        Json{{"pmf", {1.0}}, {"values", {3.0}}}})}}})}};
  doc["mechanism"] = {{"rule", "first_price"}};
  doc["solver"] = {{"eta", 0.625}, {"cap", 5.0}, {"max_iters", 400}, {"seeds", {0}}};
  doc["checks"] = Json::array({"c_efficiency", "decomposition_upper", "reserve_floor", "chains",
                               "mu_structure", "welfare_bound", "copies_bound"});
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_2x3").string();
  fs::remove_all(options.out_dir);
  CHECK(cmd_verify(config, options) == kExitOk);
  Json report = Json::parse(slurp(fs::path(options.out_dir) / "report.json"));
  CHECK(report.at("all_satisfied").get<bool>());
}

TEST_CASE("verify respects the --check filter") {
  Json doc = small_config();
  doc["checks"] = Json::array({"c_efficiency", "decomposition_upper"});
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  options.only_checks = {"decomposition_upper"};
  options.out_dir = (fs::temp_directory_path() / "simauct_test_filter").string();
  fs::remove_all(options.out_dir);
  cmd_verify(config, options);
  Json report = Json::parse(slurp(fs::path(options.out_dir) / "report.json"));
  REQUIRE(report.at("checks").size() == 1);
  CHECK(report.at("checks")[0].at("name") == "decomposition_upper");
}

TEST_CASE("sweep emits one row per instance with the ratio column") {
  Json doc = small_config();
  doc["sweep"] = {{"instances", 2}, {"bidders", 2}, {"items", 2}, {"max_atoms", 2},
                  {"master_seed", 5}};
  doc["solver"]["max_iters"] = 80;
  ScenarioConfig config = parse_config(doc);
  HarnessOptions options;
  options.quiet = true;
  options.out_dir = (fs::temp_directory_path() / "simauct_test_sweep").string();
  fs::remove_all(options.out_dir);
  cmd_sweep(config, options);
  std::string csv = slurp(fs::path(options.out_dir) / "sweep.csv");
  CHECK(csv.find("ratio") != std::string::npos);
  int lines = 0;
  for (char c : csv) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 3);  // header + 2 instances
}
