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

#include <cmath>

#include "simauct/lp.hpp"
#include "simauct/rng.hpp"

using namespace simauct;

TEST_CASE("simple bounded maximization") {
  // max x + y, x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> x = 8/5, y = 6/5.
  LpProblem p;
  int x = p.add_var(1.0, false, "x");
  int y = p.add_var(1.0, false, "y");
  p.add_row({{{x, 1.0}, {y, 2.0}}, RowSense::kLe, 4.0, ""});
  p.add_row({{{x, 3.0}, {y, 1.0}}, RowSense::kLe, 6.0, ""});
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(std::abs(s.objective - 2.8) < 1e-9);
  CHECK(std::abs(s.x[x] - 1.6) < 1e-9);
  CHECK(std::abs(s.x[y] - 1.2) < 1e-9);

  LpSolution e = solve_lp_exact(p);
  REQUIRE(e.status == LpStatus::kOptimal);
  CHECK(std::abs(e.objective - 2.8) < 1e-12);
}

TEST_CASE("equality and ge rows need artificials") {
  // max x, x + y = 2, x - y >= 0, y >= 0.4 -> x = 1.6.
  LpProblem p;
  int x = p.add_var(1.0, false, "x");
  int y = p.add_var(0.0, false, "y");
  p.add_row({{{x, 1.0}, {y, 1.0}}, RowSense::kEq, 2.0, ""});
  p.add_row({{{x, 1.0}, {y, -1.0}}, RowSense::kGe, 0.0, ""});
  p.add_row({{{y, 1.0}}, RowSense::kGe, 0.4, ""});
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(std::abs(s.objective - 1.6) < 1e-9);
}

TEST_CASE("free variables") {
  // max -|x| style: max x with x <= -3 as a free variable.
  LpProblem p;
  int x = p.add_var(1.0, true, "x");
  p.add_row({{{x, 1.0}}, RowSense::kLe, -3.0, ""});
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(std::abs(s.x[x] + 3.0) < 1e-9);
}

TEST_CASE("infeasible and unbounded detection") {
  LpProblem inf;
  int x = inf.add_var(1.0, false, "x");
  inf.add_row({{{x, 1.0}}, RowSense::kLe, 1.0, ""});
  inf.add_row({{{x, 1.0}}, RowSense::kGe, 2.0, ""});
  CHECK(solve_lp(inf).status == LpStatus::kInfeasible);

  LpProblem unb;
  int y = unb.add_var(1.0, false, "y");
  unb.add_row({{{y, -1.0}}, RowSense::kLe, 1.0, ""});
  CHECK(solve_lp(unb).status == LpStatus::kUnbounded);
}

TEST_CASE("random LPs: double agrees with exact rational") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int nv = 2 + rng.next_index(3);
    int nr = 2 + rng.next_index(3);
    LpProblem p;
    for (int v = 0; v < nv; ++v) {
      p.add_var(rng.next_index(9) - 4, false, "v" + std::to_string(v));
    }
    for (int r = 0; r < nr; ++r) {
      LpRow row;
      for (int v = 0; v < nv; ++v) {
        int c = rng.next_index(7) - 3;
        if (c != 0) row.coeffs.emplace_back(v, static_cast<double>(c));
      }
      row.coeffs.emplace_back(rng.next_index(nv), 1.0);  // keep rows bounded-ish
      row.sense = RowSense::kLe;
      row.rhs = static_cast<double>(rng.next_index(10));
      p.add_row(std::move(row));
    }
    // Box to guarantee boundedness.
    for (int v = 0; v < nv; ++v) {
      p.add_row({{{v, 1.0}}, RowSense::kLe, 20.0, ""});
    }
    LpSolution d = solve_lp(p);
    LpSolution e = solve_lp_exact(p);
    REQUIRE(d.status == LpStatus::kOptimal);
    REQUIRE(e.status == LpStatus::kOptimal);
    CHECK(std::abs(d.objective - e.objective) < 1e-7);
  }
}

TEST_CASE("degenerate pivoting terminates at the known optimum") {
  // A classic cycling construction for naive pivot rules; the optimum is
  // 1/20 at x1 = 1/25, x3 = 1.
  LpProblem p;
  int x1 = p.add_var(0.75, false, "x1");
  int x2 = p.add_var(-150.0, false, "x2");
  int x3 = p.add_var(0.02, false, "x3");
  int x4 = p.add_var(-6.0, false, "x4");
  p.add_row({{{x1, 0.25}, {x2, -60.0}, {x3, -0.04}, {x4, 9.0}}, RowSense::kLe, 0.0, ""});
  p.add_row({{{x1, 0.5}, {x2, -90.0}, {x3, -0.02}, {x4, 3.0}}, RowSense::kLe, 0.0, ""});
  p.add_row({{{x3, 1.0}}, RowSense::kLe, 1.0, ""});
  LpSolution d = solve_lp(p);
  REQUIRE(d.status == LpStatus::kOptimal);
  CHECK(d.objective == doctest::Approx(0.05).epsilon(1e-9));
  LpSolution e = solve_lp_exact(p);
  REQUIRE(e.status == LpStatus::kOptimal);
  CHECK(e.objective == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("equality-heavy random LPs: double agrees with exact and stays feasible") {
  Rng rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    int nv = 3 + rng.next_index(3);
    LpProblem p;
    for (int v = 0; v < nv; ++v) {
      p.add_var(rng.next_index(5) - 2, v % 3 == 2, "v" + std::to_string(v));
    }
    // One normalization equality like the benchmark LPs, plus random rows.
    LpRow norm;
    for (int v = 0; v < nv; ++v) norm.coeffs.emplace_back(v, 1.0);
    norm.sense = RowSense::kEq;
    norm.rhs = 1.0;
    p.add_row(std::move(norm));
    for (int r = 0; r < 3; ++r) {
      LpRow row;
      for (int v = 0; v < nv; ++v) {
        int c = rng.next_index(5) - 2;
        if (c != 0) row.coeffs.emplace_back(v, 0.25 * c);
      }
      row.sense = rng.next_index(2) == 0 ? RowSense::kLe : RowSense::kGe;
      row.rhs = 0.25 * (rng.next_index(9) - 4);
      p.add_row(std::move(row));
    }
    for (int v = 0; v < nv; ++v) {
      p.add_row({{{v, 1.0}}, RowSense::kLe, 10.0, ""});
      p.add_row({{{v, 1.0}}, RowSense::kGe, -10.0, ""});
    }
    LpSolution d = solve_lp(p);
    LpSolution e = solve_lp_exact(p);
    REQUIRE(d.status == e.status);
    if (d.status != LpStatus::kOptimal) continue;
    CHECK(std::abs(d.objective - e.objective) < 1e-7);
    // Feasibility by substitution.
    for (const LpRow& row : p.rows) {
      double lhs = 0.0;
      for (auto [v, c] : row.coeffs) lhs += c * d.x[v];
      switch (row.sense) {
        case RowSense::kLe:
          CHECK(lhs <= row.rhs + 1e-7);
          break;
        case RowSense::kGe:
          CHECK(lhs >= row.rhs - 1e-7);
          break;
        case RowSense::kEq:
          CHECK(lhs == doctest::Approx(row.rhs).epsilon(1e-7));
          break;
      }
    }
  }
}

TEST_CASE("lp interchange text includes sections") {
  LpProblem p;
  int x = p.add_var(1.0, false, "x");
  p.add_var(0.5, true, "y");
  p.add_row({{{x, 2.0}}, RowSense::kLe, 3.0, "cap"});
  std::string text = to_lp_format(p);
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("cap:") != std::string::npos);
  CHECK(text.find("y free") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}
