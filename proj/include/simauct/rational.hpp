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

#include <cstdint>
#include <string>
#include <vector>

namespace simauct {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
// Just enough surface for exact simplex pivoting.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return limbs_.empty(); }
  int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;  // truncated quotient
  BigInt operator%(const BigInt& o) const;

  bool operator==(const BigInt& o) const;
  bool operator<(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator>(const BigInt& o) const { return o < *this; }
  bool operator<=(const BigInt& o) const { return !(o < *this); }
  bool operator>=(const BigInt& o) const { return !(*this < o); }

  double to_double() const;
  std::string to_string() const;

  static BigInt gcd(BigInt a, BigInt b);
  static void divmod(const BigInt& num, const BigInt& den, BigInt* quot, BigInt* rem);

 private:
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  void trim();

  std::vector<uint32_t> limbs_;  // little endian, no trailing zeros
  bool negative_ = false;
};

// Exact rational, always canonical: reduced, positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);

  // Exact value of the double (doubles are dyadic rationals).
  static Rational from_double(double v);

  // Smallest-denominator rational within tol of v (continued fractions);
  // falls back to the exact dyadic value when the expansion runs long.
  // Recovers decimal-entered data (0.9 -> 9/10) so exact pivoting stays
  // small.
  static Rational nearest(double v, double tol = 1e-12);

  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const;
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double to_double() const;
  std::string to_string() const;

 private:
  void normalize();
  BigInt num_;
  BigInt den_;
};

}  // namespace simauct
