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

#include "simauct/evaluator.hpp"

namespace simauct {

enum class SolveMethod { kIteratedBestResponse, kFictitiousPlay };

struct SolverConfig {
  SolveMethod method = SolveMethod::kIteratedBestResponse;
  double epsilon_target = 0.0;
  int max_iters = 4000;
  uint64_t seed = 0;
  int certificate_interval = 5;  // fictitious play recertifies every k rounds
  std::optional<StrategyProfile> initial_profile;
};

struct SolveResult {
  StrategyProfile profile;
  RegretCertificate certificate;
  int iterations = 0;
  std::string method_used;
  bool reached_target = false;
};

// Computes an epsilon-equilibrium of the (instance, grid, mechanism) game.
// Iterated best response switches to fictitious play when it cycles; returns
// the best profile seen by certified epsilon. Non-convergence is reported
// through the certificate, never as an error.
SolveResult solve_bne(const Instance& instance, const BidGrid& grid, const EvalMechanism& mech,
                      const SolverConfig& config);

// Runs solve_bne once per seed and keeps the lowest certified epsilon.
SolveResult solve_best_of(const Instance& instance, const BidGrid& grid,
                          const EvalMechanism& mech, const SolverConfig& config,
                          const std::vector<uint64_t>& seeds);

}  // namespace simauct
