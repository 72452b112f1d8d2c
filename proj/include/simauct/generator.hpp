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

#include <vector>

#include "simauct/instance.hpp"
#include "simauct/rng.hpp"

namespace simauct {

// Sweep-style generator: atom values from a bounded integer set scaled into
// [0, 10]; probability masses from a symmetric simplex draw. Bidders are
// drawn independently unless `iid_bidders` is set.
struct GeneratorParams {
  int bidders = 2;
  int items = 2;
  int max_atoms = 3;
  bool iid_bidders = false;
  // quantize masses to multiples of 1/mass_grid (0 = no quantization);
  // quantized masses make survival levels exactly representable
  int mass_grid = 0;
  // with mass_grid set: pin the top atom's mass to this many grid units
  int top_mass_units = 0;
  // families cycled through: 0 additive, 1 unit-demand, 2 XOS
  std::vector<int> families{0, 1, 2};
  double min_value = 1.0;
  double max_value = 10.0;
};

Instance random_instance(Rng& rng, const GeneratorParams& params);

// Random subadditive-over-independent-items bidder model for the
// concentration test: additive / unit-demand / XOS / random monotone
// subadditive table over <= 3 items.
BidderModel random_subadditive_model(Rng& rng, int max_items);

// The base instance with every token value raised by `shift`, plus the
// identity coupling over type indices.
struct ShiftedPair {
  Instance shifted;
  std::vector<std::vector<std::vector<double>>> coupling;
};
ShiftedPair shifted_dominating_pair(const Instance& base, double shift);

}  // namespace simauct
