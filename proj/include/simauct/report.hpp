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

#include <string>
#include <vector>

namespace simauct {

// One verified inequality: `pass` means lhs <= rhs + slack_budget. For
// universally quantified checks the stored sides are the worst case and
// `witness` identifies it.
struct CheckResult {
  std::string name;
  std::string statement;  // the inequality in plain notation
  double lhs = 0.0;
  double rhs = 0.0;
  double slack_budget = 0.0;
  double margin = 0.0;  // rhs + slack_budget - lhs
  bool pass = false;
  bool expected_fail = false;
  // Recorded but non-gating: checks whose hypotheses the instance does not
  // meet (e.g. chains on an instance whose budget conditions are flagged).
  bool applicable = true;
  std::string witness;
  double runtime_sec = 0.0;
  std::vector<uint64_t> seeds;

  static CheckResult of(std::string name, std::string statement, double lhs, double rhs,
                        double slack_budget, std::string witness = "") {
    CheckResult r;
    r.name = std::move(name);
    r.statement = std::move(statement);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack_budget = slack_budget;
    r.margin = rhs + slack_budget - lhs;
    r.pass = r.margin >= 0.0;
    r.witness = std::move(witness);
    return r;
  }

  // Outcome as the harness sees it: expected failures count as satisfied;
  // inapplicable checks are recorded without gating.
  bool satisfied() const { return !applicable || (expected_fail ? !pass : pass); }
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_satisfied() const {
    for (const auto& c : checks) {
      if (!c.satisfied()) return false;
    }
    return true;
  }
};

}  // namespace simauct
