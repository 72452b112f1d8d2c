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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simauct/auction.hpp"
#include "simauct/instance.hpp"
#include "simauct/solver.hpp"

namespace simauct {

enum class WrapperKind { kNone, kEntryFee, kReserve };

struct MechanismSpec {
  RuleKind rule = RuleKind::kFirstPrice;
  WrapperKind wrapper = WrapperKind::kNone;
  double delta = 0.01;
  bool fees_derived = true;
  std::vector<double> fees;
  bool reserves_derived = true;
  std::vector<std::vector<double>> reserves;
};

struct SolverSpec {
  std::optional<double> eta;
  std::optional<double> cap;
  SolveMethod method = SolveMethod::kIteratedBestResponse;
  std::optional<double> epsilon_target;  // default 0.01 * cap
  int max_iters = 4000;
  std::vector<uint64_t> seeds{0};
  int certificate_interval = 5;
  std::optional<nlohmann::ordered_json> initial_profile;
};

struct ScenarioConfig {
  std::shared_ptr<Instance> instance;
  MechanismSpec mechanism;
  SolverSpec solver;
  double budget_b = 0.2;
  Budget budget;
  std::vector<nlohmann::ordered_json> checks;
  nlohmann::ordered_json raw;
};

// Parses and validates a config document; throws ConfigError on any schema
// problem (the CLI maps it to exit code 2).
ScenarioConfig parse_config(const nlohmann::ordered_json& doc);
ScenarioConfig load_config_file(const std::string& path);

Instance instance_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json instance_to_json(const Instance& instance);

BidGrid grid_for(const ScenarioConfig& config);
double epsilon_target_for(const ScenarioConfig& config, const BidGrid& grid);

}  // namespace simauct
