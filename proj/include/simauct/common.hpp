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
#include <stdexcept>
#include <string>
#include <vector>

namespace simauct {

// Item sets are bitmasks over item indices. Instances are desk scale
// (m <= kMaxItems), which keeps every subset enumeration cheap.
using ItemSet = uint32_t;

inline constexpr int kMaxItems = 4;
inline constexpr double kPmfSumTol = 1e-12;
inline constexpr double kLpFeasTol = 1e-9;
inline constexpr double kRegretSlack = 1e-9;

inline constexpr ItemSet full_set(int m) { return (ItemSet{1} << m) - 1; }
inline constexpr bool contains(ItemSet s, int j) { return (s >> j) & 1u; }
inline constexpr int set_size(ItemSet s) { return __builtin_popcount(s); }

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration budgets. Exceeding one throws BudgetExceeded, which the CLI
// maps to exit code 3.
struct Budget {
  long long max_enumeration = 1'000'000;  // profile * support combinations
  long long max_lp_nonzeros = 1'000'000;
};

}  // namespace simauct
