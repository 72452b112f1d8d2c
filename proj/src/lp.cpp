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

#include "simauct/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "simauct/rational.hpp"

namespace simauct {

int LpProblem::add_var(double obj, bool is_free, std::string name) {
  objective.push_back(obj);
  free_var.push_back(is_free);
  var_names.push_back(std::move(name));
  return static_cast<int>(objective.size()) - 1;
}

long long LpProblem::nonzeros() const {
  long long n = 0;
  for (const auto& r : rows) n += static_cast<long long>(r.coeffs.size());
  return n;
}

namespace {

template <typename T>
struct Scalar;

template <>
struct Scalar<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool is_neg(double v, double tol) { return v < -tol; }
  static bool is_pos(double v, double tol) { return v > tol; }
};

template <>
struct Scalar<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  // Snap to the smallest-denominator rational within the LP tolerance;
  // decimal-entered data comes back exact and pivots stay small.
  static Rational from(double v) { return Rational::nearest(v, 1e-12); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static bool is_neg(const Rational& v, double) { return v.sign() < 0; }
  static bool is_pos(const Rational& v, double) { return v.sign() > 0; }
};

// Standard-form tableau simplex. Variables are remapped so everything is
// nonnegative; rows become equalities with slack variables; phase one drives
// artificial variables out of the basis.
template <typename T>
class Simplex {
 public:
  explicit Simplex(const LpProblem& p, double tol, long long pivot_limit)
      : problem_(p), tol_(tol), pivot_limit_(pivot_limit) {}

  LpSolution run() {
    build();
    LpSolution sol;
    if (!phase_one()) {
      sol.status = pivots_ >= pivot_limit_ ? LpStatus::kIterLimit : LpStatus::kInfeasible;
      sol.pivots = pivots_;
      return sol;
    }
    LpStatus st = phase_two();
    sol.status = st;
    sol.pivots = pivots_;
    if (st != LpStatus::kOptimal) return sol;
    extract(&sol);
    return sol;
  }

 private:
  void build() {
    const int nv = static_cast<int>(problem_.objective.size());
    // Map each LP variable to one or two nonnegative columns.
    pos_col_.assign(nv, -1);
    neg_col_.assign(nv, -1);
    int c = 0;
    for (int v = 0; v < nv; ++v) {
      pos_col_[v] = c++;
      if (problem_.free_var[v]) neg_col_[v] = c++;
    }
    num_struct_ = c;
    const int nr = static_cast<int>(problem_.rows.size());
    num_rows_ = nr;

    // Count slacks.
    slack_col_.assign(nr, -1);
    for (int r = 0; r < nr; ++r) {
      if (problem_.rows[r].sense != RowSense::kEq) slack_col_[r] = c++;
    }
    num_cols_ = c;  // structural + slack; artificials appended later

    // Dense rows with nonnegative rhs.
    a_.assign(nr, std::vector<T>(num_cols_, Scalar<T>::zero()));
    b_.assign(nr, Scalar<T>::zero());
    for (int r = 0; r < nr; ++r) {
      const LpRow& row = problem_.rows[r];
      for (auto [v, coef] : row.coeffs) {
        T cv = Scalar<T>::from(coef);
        a_[r][pos_col_[v]] = a_[r][pos_col_[v]] + cv;
        if (neg_col_[v] >= 0) a_[r][neg_col_[v]] = a_[r][neg_col_[v]] - cv;
      }
      if (slack_col_[r] >= 0) {
        a_[r][slack_col_[r]] = row.sense == RowSense::kLe ? Scalar<T>::one() : -Scalar<T>::one();
      }
      b_[r] = Scalar<T>::from(row.rhs);
      if (Scalar<T>::is_neg(b_[r], 0.0)) {
        for (auto& x : a_[r]) x = -x;
        b_[r] = -b_[r];
      }
    }

    // Choose a starting basis: slack column when its coefficient is +1 after
    // the sign flip, otherwise an artificial.
    basis_.assign(nr, -1);
    for (int r = 0; r < nr; ++r) {
      if (slack_col_[r] >= 0 && Scalar<T>::is_pos(a_[r][slack_col_[r]], tol_ / 2)) {
        basis_[r] = slack_col_[r];
      }
    }
    for (int r = 0; r < nr; ++r) {
      if (basis_[r] >= 0) continue;
      for (auto& rr : a_) rr.push_back(Scalar<T>::zero());
      a_[r][num_cols_] = Scalar<T>::one();
      basis_[r] = num_cols_;
      artificial_start_ = std::min(artificial_start_, num_cols_);
      ++num_cols_;
    }
    if (artificial_start_ == INT32_MAX) artificial_start_ = num_cols_;
  }

  // Canonical reduced-cost row for a cost vector, maintained incrementally
  // across pivots.
  void price(const std::vector<T>& cost) {
    red_ = cost;
    for (int r = 0; r < num_rows_; ++r) {
      const T& cb = cost[basis_[r]];
      if (cb == Scalar<T>::zero()) continue;
      for (int c = 0; c < num_cols_; ++c) {
        red_[c] = red_[c] - cb * a_[r][c];
      }
    }
  }

  void pivot(int r, int c) {
    T piv = a_[r][c];
    for (int j = 0; j < num_cols_; ++j) a_[r][j] = a_[r][j] / piv;
    b_[r] = b_[r] / piv;
    for (int i = 0; i < num_rows_; ++i) {
      if (i == r) continue;
      T f = a_[i][c];
      if (f == Scalar<T>::zero()) continue;
      for (int j = 0; j < num_cols_; ++j) a_[i][j] = a_[i][j] - f * a_[r][j];
      b_[i] = b_[i] - f * b_[r];
    }
    T rf = red_[c];
    if (!(rf == Scalar<T>::zero())) {
      for (int j = 0; j < num_cols_; ++j) red_[j] = red_[j] - rf * a_[r][j];
    }
    basis_[r] = c;
    ++pivots_;
  }

  // Runs to optimality for the given cost vector. Dantzig rule with a
  // permanent switch to Bland's rule after a degeneracy streak.
  LpStatus optimize(const std::vector<T>& cost, bool exclude_artificials) {
    price(cost);
    long long bland_after = 2000 + 10LL * (num_rows_ + num_cols_);
    long long local = 0;
    while (true) {
      if (pivots_ >= pivot_limit_) return LpStatus::kIterLimit;
      int limit = exclude_artificials ? artificial_start_ : num_cols_;
      int enter = -1;
      bool bland = local > bland_after;
      for (int c = 0; c < limit; ++c) {
        if (!Scalar<T>::is_pos(red_[c], tol_)) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (enter < 0 || red_[c] > red_[enter]) enter = c;
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      for (int r = 0; r < num_rows_; ++r) {
        if (!Scalar<T>::is_pos(a_[r][enter], tol_)) continue;
        if (leave < 0) {
          leave = r;
          continue;
        }
        // ratio comparison: b[r]/a[r][enter] < b[leave]/a[leave][enter]
        T lhs = b_[r] * a_[leave][enter];
        T rhs = b_[leave] * a_[r][enter];
        if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
      ++local;
    }
  }

  bool phase_one() {
    if (artificial_start_ >= num_cols_) return true;
    // maximize -(sum of artificials)
    std::vector<T> cost(num_cols_, Scalar<T>::zero());
    for (int c = artificial_start_; c < num_cols_; ++c) cost[c] = -Scalar<T>::one();
    LpStatus st = optimize(cost, /*exclude_artificials=*/false);
    if (st != LpStatus::kOptimal) return false;
    // Check feasibility: all artificials at zero.
    for (int r = 0; r < num_rows_; ++r) {
      if (basis_[r] >= artificial_start_ && Scalar<T>::is_pos(b_[r], tol_)) return false;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int r = 0; r < num_rows_; ++r) {
      if (basis_[r] < artificial_start_) continue;
      int c = 0;
      for (; c < artificial_start_; ++c) {
        if (Scalar<T>::is_pos(a_[r][c], tol_) || Scalar<T>::is_neg(a_[r][c], tol_)) break;
      }
      if (c < artificial_start_) pivot(r, c);
      // A fully-zero row is redundant; the artificial stays basic at zero.
    }
    return true;
  }

  LpStatus phase_two() {
    std::vector<T> cost(num_cols_, Scalar<T>::zero());
    for (size_t v = 0; v < problem_.objective.size(); ++v) {
      T cv = Scalar<T>::from(problem_.objective[v]);
      cost[pos_col_[v]] = cv;
      if (neg_col_[v] >= 0) cost[neg_col_[v]] = -cv;
    }
    return optimize(cost, /*exclude_artificials=*/true);
  }

  void extract(LpSolution* sol) const {
    std::vector<T> xs(num_cols_, Scalar<T>::zero());
    for (int r = 0; r < num_rows_; ++r) xs[basis_[r]] = b_[r];
    sol->x.assign(problem_.objective.size(), 0.0);
    double obj = 0.0;
    for (size_t v = 0; v < problem_.objective.size(); ++v) {
      double xv = Scalar<T>::to_double(xs[pos_col_[v]]);
      if (neg_col_[v] >= 0) xv -= Scalar<T>::to_double(xs[neg_col_[v]]);
      sol->x[v] = xv;
      obj += problem_.objective[v] * xv;
    }
    sol->objective = obj;
  }

  const LpProblem& problem_;
  double tol_;
  long long pivot_limit_;
  long long pivots_ = 0;

  int num_struct_ = 0;
  int num_rows_ = 0;
  int num_cols_ = 0;
  int artificial_start_ = INT32_MAX;
  std::vector<int> pos_col_, neg_col_, slack_col_, basis_;
  std::vector<std::vector<T>> a_;
  std::vector<T> b_;
  std::vector<T> red_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  Simplex<double> s(problem, 1e-9, 200000);
  return s.run();
}

LpSolution solve_lp_exact(const LpProblem& problem) {
  Simplex<Rational> s(problem, 0.0, 200000);
  return s.run();
}

std::string to_lp_format(const LpProblem& problem) {
  std::ostringstream os;
  os.precision(17);
  os << "Maximize\n obj:";
  for (size_t v = 0; v < problem.objective.size(); ++v) {
    if (problem.objective[v] == 0.0) continue;
    os << (problem.objective[v] >= 0 ? " + " : " - ") << std::abs(problem.objective[v]) << " "
       << problem.var_names[v];
  }
  os << "\nSubject To\n";
  for (size_t r = 0; r < problem.rows.size(); ++r) {
    const LpRow& row = problem.rows[r];
    os << " " << (row.name.empty() ? "c" + std::to_string(r) : row.name) << ":";
    for (auto [v, c] : row.coeffs) {
      os << (c >= 0 ? " + " : " - ") << std::abs(c) << " " << problem.var_names[v];
    }
    switch (row.sense) {
      case RowSense::kLe:
        os << " <= ";
        break;
      case RowSense::kGe:
        os << " >= ";
        break;
      case RowSense::kEq:
        os << " = ";
        break;
    }
    os << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (size_t v = 0; v < problem.objective.size(); ++v) {
    if (problem.free_var[v]) os << " " << problem.var_names[v] << " free\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace simauct
