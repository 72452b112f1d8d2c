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

#include <cmath>
#include <cstdint>

#include "simauct/common.hpp"

namespace simauct {

// Finite bid grid {null, 0, eta, 2*eta, ..., cap}. Level 0 is the null
// action; level k >= 1 is the amount (k-1)*eta.
class BidGrid {
 public:
  static BidGrid make(double eta, double cap) {
    if (eta <= 0.0) throw ConfigError("grid spacing must be positive");
    double steps = cap / eta;
    long long k = std::llround(steps);
    if (k < 0 || std::abs(steps - static_cast<double>(k)) > 1e-9) {
      throw ConfigError("grid cap must be a multiple of the spacing");
    }
    BidGrid g;
    g.eta_ = eta;
    g.cap_ = cap;
    g.amount_levels_ = static_cast<int>(k) + 1;
    return g;
  }

  // Default sizing: cap at 1.25x the best single-item value (overbidding
  // beyond that is dominated in first-price/all-pay and the headroom covers
  // second-price runs), 32 steps.
  static BidGrid auto_sized(double max_item_value) {
    double cap = 1.25 * max_item_value;
    if (cap <= 0.0) cap = 1.0;
    return make(cap / 32.0, cap);
  }

  double eta() const { return eta_; }
  double cap() const { return cap_; }
  int num_levels() const { return amount_levels_ + 1; }
  bool is_null(int level) const { return level == 0; }
  double amount(int level) const { return (level - 1) * eta_; }

  // Smallest non-null level whose amount is >= a (clamped to cap).
  int level_at_least(double a) const {
    if (a <= 0.0) return 1;
    long long k = static_cast<long long>(std::ceil(a / eta_ - 1e-12));
    if (k > amount_levels_ - 1) k = amount_levels_ - 1;
    return static_cast<int>(k) + 1;
  }

 private:
  double eta_ = 1.0;
  double cap_ = 1.0;
  int amount_levels_ = 2;
};

// One bid vector on the grid, packed one byte per item (level per item).
using BidVec = uint32_t;

inline int bv_level(BidVec v, int item) { return (v >> (8 * item)) & 0xff; }
inline BidVec bv_with_level(BidVec v, int item, int level) {
  return (v & ~(BidVec{0xff} << (8 * item))) | (BidVec(level) << (8 * item));
}

}  // namespace simauct
