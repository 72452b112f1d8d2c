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
#include <string>
#include <vector>

#include "simauct/config.hpp"
#include "simauct/duality.hpp"
#include "simauct/serialize.hpp"

namespace simauct {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBudgetExceeded = 3;

struct HarnessOptions {
  std::string out_dir;
  std::vector<std::string> only_checks;  // empty = all checks from config / defaults
  bool exact_rational = false;
  int mc_samples = 0;
  std::optional<uint64_t> seed_override;
  std::string emit_lp_path;
  bool quiet = false;
};

// Everything the checks share for one scenario: the solved base equilibrium,
// the LP benchmark and the decomposition built on both.
struct ScenarioRun {
  BidGrid grid;
  EvalMechanism mechanism;
  SolveResult base;
  OptResult opt;
  double opt_welfare_value = 0.0;
  DecompositionReport decomposition;
  double rev_ef = 0.0;  // max{Rev(A), (1-delta)*median-fee revenue}
};

ScenarioRun run_scenario(const ScenarioConfig& config, const HarnessOptions& options);

int cmd_solve(const ScenarioConfig& config, const HarnessOptions& options);
int cmd_opt(const ScenarioConfig& config, const HarnessOptions& options);
int cmd_decompose(const ScenarioConfig& config, const HarnessOptions& options);
int cmd_verify(const ScenarioConfig& config, const HarnessOptions& options);
int cmd_sweep(const ScenarioConfig& config, const HarnessOptions& options);

}  // namespace simauct
