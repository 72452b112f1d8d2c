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
#include <utility>
#include <vector>

#include "simauct/common.hpp"

namespace simauct {

enum class RowSense { kLe, kGe, kEq };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  RowSense sense = RowSense::kLe;
  double rhs = 0.0;
  std::string name;
};

// Maximization problem; variables default to x >= 0, free variables are
// handled by an internal split.
struct LpProblem {
  std::vector<double> objective;
  std::vector<bool> free_var;
  std::vector<std::string> var_names;
  std::vector<LpRow> rows;

  int add_var(double obj, bool is_free, std::string name);
  void add_row(LpRow row) { rows.push_back(std::move(row)); }
  long long nonzeros() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterLimit };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> x;
  long long pivots = 0;
};

// Dense two-phase simplex. Double path uses a 1e-9 feasibility tolerance;
// the exact path pivots in arbitrary-precision rationals (coefficients are
// taken at their exact double values).
LpSolution solve_lp(const LpProblem& problem);
LpSolution solve_lp_exact(const LpProblem& problem);

// CPLEX LP interchange text, for external cross-checking.
std::string to_lp_format(const LpProblem& problem);

}  // namespace simauct
