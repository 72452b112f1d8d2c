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

#include "simauct/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace simauct {

BigInt::BigInt(long long v) {
  negative_ = v < 0;
  unsigned long long mag = negative_ ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  while (mag != 0) {
    limbs_.push_back(static_cast<uint32_t>(mag & 0xffffffffULL));
    mag >>= 32;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    out.push_back(static_cast<uint32_t>(s & 0xffffffffULL));
    carry = s >> 32;
  }
  if (carry) out.push_back(static_cast<uint32_t>(carry));
  return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
    if (d < 0) {
      d += (1LL << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<uint32_t>(d));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.limbs_.empty()) r.negative_ = !r.negative_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (negative_ == o.negative_) {
    r.limbs_ = add_mag(limbs_, o.limbs_);
    r.negative_ = negative_;
  } else {
    int c = cmp_mag(limbs_, o.limbs_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.limbs_ = sub_mag(limbs_, o.limbs_);
      r.negative_ = negative_;
    } else {
      r.limbs_ = sub_mag(o.limbs_, limbs_);
      r.negative_ = o.negative_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      uint64_t cur = r.limbs_[i + j] + carry + static_cast<uint64_t>(limbs_[i]) * o.limbs_[j];
      r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
      ++k;
    }
  }
  r.negative_ = negative_ != o.negative_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt* quot, BigInt* rem) {
  if (den.is_zero()) throw std::domain_error("BigInt division by zero");
  // Long division on bits; magnitudes only, signs fixed at the end.
  BigInt q, r;
  q.limbs_.assign(num.limbs_.size(), 0);
  for (size_t limb = num.limbs_.size(); limb-- > 0;) {
    for (int bit = 31; bit >= 0; --bit) {
      // r = r*2 + next bit
      uint32_t carry = 0;
      for (size_t i = 0; i < r.limbs_.size(); ++i) {
        uint32_t nc = r.limbs_[i] >> 31;
        r.limbs_[i] = (r.limbs_[i] << 1) | carry;
        carry = nc;
      }
      if (carry) r.limbs_.push_back(carry);
      uint32_t b = (num.limbs_[limb] >> bit) & 1u;
      if (b) {
        if (r.limbs_.empty()) r.limbs_.push_back(0);
        r.limbs_[0] |= 1u;
      }
      if (cmp_mag(r.limbs_, den.limbs_) >= 0) {
        r.limbs_ = sub_mag(r.limbs_, den.limbs_);
        q.limbs_[limb] |= (1u << bit);
      }
    }
  }
  q.negative_ = (num.negative_ != den.negative_);
  r.negative_ = num.negative_;
  q.trim();
  r.trim();
  if (quot) *quot = q;
  if (rem) *rem = r;
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q;
  divmod(*this, o, &q, nullptr);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt r;
  divmod(*this, o, nullptr, &r);
  return r;
}

bool BigInt::operator==(const BigInt& o) const {
  return negative_ == o.negative_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
  if (negative_ != o.negative_) return negative_;
  int c = cmp_mag(limbs_, o.limbs_);
  return negative_ ? c > 0 : c < 0;
}

double BigInt::to_double() const {
  double v = 0.0;
  for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
  return negative_ ? -v : v;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt n = *this;
  n.negative_ = false;
  std::string digits;
  const BigInt ten(10);
  while (!n.is_zero()) {
    BigInt q, r;
    divmod(n, ten, &q, &r);
    digits.push_back(static_cast<char>('0' + (r.is_zero() ? 0 : r.limbs_[0])));
    n = q;
  }
  if (negative_) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.negative_ = false;
  b.negative_ = false;
  while (!b.is_zero()) {
    BigInt r = a % b;
    r.negative_ = false;
    a = b;
    b = r;
  }
  return a;
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite double to Rational");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
  long long imant = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num(imant), den(1);
  BigInt two(2);
  while (exp > 0) {
    num = num * two;
    --exp;
  }
  while (exp < 0) {
    den = den * two;
    ++exp;
  }
  return Rational(std::move(num), std::move(den));
}

Rational Rational::nearest(double v, double tol) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite double to Rational");
  if (v == 0.0) return Rational(0);
  bool neg = v < 0.0;
  double x = std::abs(v);
  // Continued-fraction convergents p/q of x.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 40; ++iter) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (p2 < 0 || q2 <= 0) break;  // overflow guard
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= tol * std::max(1.0, x)) {
      Rational r{BigInt(p1), BigInt(q1)};
      if (neg) r = -r;
      return r;
    }
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  return from_double(v);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::domain_error("Rational division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator==(const Rational& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

bool Rational::operator<(const Rational& o) const {
  return (num_ * o.den_) < (o.num_ * den_);
}

double Rational::to_double() const {
  // Good enough for reporting; exact comparisons never go through doubles.
  return num_.to_double() / den_.to_double();
}

std::string Rational::to_string() const {
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace simauct
