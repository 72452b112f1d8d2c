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

#include "simauct/generator.hpp"
#include "simauct/rng.hpp"
#include "simauct/instance.hpp"
#include "simauct/valuation.hpp"

using namespace simauct;

namespace {

ItemTypeSpace scalar_space(std::vector<std::vector<double>> values) {
  ItemTypeSpace space;
  for (auto& item : values) {
    std::vector<Token> tokens;
    for (double v : item) {
      Token t;
      t.value = v;
      tokens.push_back(t);
    }
    space.tokens.push_back(std::move(tokens));
  }
  return space;
}

}  // namespace

TEST_CASE("additive value sums over the set") {
  ItemTypeSpace space = scalar_space({{3.0}, {4.0}});
  Valuation v = Valuation::additive();
  CHECK(v.value(space, {0, 0}, 0b11) == 7.0);
  CHECK(v.value(space, {0, 0}, 0b01) == 3.0);
  CHECK(v.value(space, {0, 0}, 0) == 0.0);
}

TEST_CASE("unit demand takes the best item") {
  ItemTypeSpace space = scalar_space({{3.0}, {4.0}});
  Valuation v = Valuation::unit_demand();
  CHECK(v.value(space, {0, 0}, 0b11) == 4.0);
  CHECK(v.single_item_value(space, 0, 0) == 3.0);
  CHECK(v.single_item_value(space, 0, 1) == 4.0);
}

TEST_CASE("xos takes the best clause") {
  // Two clauses: (1,0) and (0,2); hand enumeration gives v({0,1}) = 2.
  ItemTypeSpace space;
  Token t0;
  t0.clause_values = {1.0, 0.0};
  Token t1;
  t1.clause_values = {0.0, 2.0};
  space.tokens = {{t0}, {t1}};
  Valuation v = Valuation::xos(2);
  CHECK(v.value(space, {0, 0}, 0b11) == 2.0);
  CHECK(v.value(space, {0, 0}, 0b01) == 1.0);
  CHECK(v.value(space, {0, 0}, 0b10) == 2.0);
  CHECK(v.single_item_value(space, 0, 1) == 2.0);
}

TEST_CASE("constrained additive with cardinality bound") {
  ItemTypeSpace space = scalar_space({{3.0}, {4.0}, {2.0}});
  Valuation v = Valuation::constrained_additive_cardinality(2);
  CHECK(v.value(space, {0, 0, 0}, 0b111) == 7.0);  // best two of {3,4,2}
  CHECK(v.value(space, {0, 0, 0}, 0b101) == 5.0);
  CHECK(v.verify_axioms(space).pass);
}

TEST_CASE("constrained additive with explicit feasible sets") {
  ItemTypeSpace space = scalar_space({{3.0}, {4.0}});
  Valuation v = Valuation::constrained_additive({0b01, 0b10});
  CHECK(v.value(space, {0, 0}, 0b11) == 4.0);
  CHECK(v.verify_axioms(space).pass);
}

TEST_CASE("family axioms hold exhaustively on small random spaces") {
  Rng rng(3);
  for (int k = 0; k < 25; ++k) {
    BidderModel model = random_subadditive_model(rng, 3);
    CHECK(model.valuation.verify_axioms(model.space).pass);
  }
}

TEST_CASE("family axioms hold at the four-item enumeration limit") {
  Rng rng(6);
  GeneratorParams params;
  params.items = 4;
  params.max_atoms = 3;
  for (int family : {0, 1, 2}) {
    params.families = {family};
    Instance inst = random_instance(rng, params);
    Budget roomy;
    roomy.max_enumeration = 100'000'000;
    CHECK(inst.bidder(0).valuation.verify_axioms(inst.bidder(0).space, 4, roomy).pass);
  }
  CHECK(Valuation::constrained_additive_cardinality(2)
            .verify_axioms(scalar_space({{1.0, 2.0}, {3.0}, {2.0}, {1.0, 4.0}}), 4)
            .pass);
}

TEST_CASE("tabular table violating subadditivity is rejected at construction") {
  ItemTypeSpace space = scalar_space({{1.0}, {1.0}});
  // v({0}) = 2, v({1}) = 2, v({0,1}) = 5 > 2 + 2.
  std::vector<std::vector<double>> table{{0.0, 2.0, 2.0, 5.0}};
  CHECK_THROWS_AS(Valuation::tabular(space, table), ConfigError);
}

TEST_CASE("tabular empty-set violation is rejected") {
  ItemTypeSpace space = scalar_space({{1.0}});
  CHECK_THROWS_AS(Valuation::tabular(space, {{1.0, 2.0}}), ConfigError);
}

TEST_CASE("single_item_value matches value on singletons for all types") {
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    BidderModel model = random_subadditive_model(rng, 3);
    Instance inst(model.space.num_items(), {model});
    for (int t = 0; t < inst.num_types(0); ++t) {
      for (int j = 0; j < inst.num_items(); ++j) {
        double direct = model.valuation.single_item_value(model.space, inst.type(0, t)[j], j);
        CHECK(direct == inst.value(0, t, ItemSet{1} << j));
      }
    }
  }
}

TEST_CASE("lipschitz constant bounds and exhaustive definition") {
  ItemTypeSpace space = scalar_space({{1.0, 2.0}, {1.0, 2.0}});
  Valuation add = Valuation::additive();
  double l_add = add.lipschitz_constant(space);
  CHECK(l_add <= 2.0 + 1e-12);  // per-item change bounded by the top value
  CHECK(l_add == 2.0);          // attained at (X={j}, Y={}) with value 2

  Valuation ud = Valuation::unit_demand();
  double l_ud = ud.lipschitz_constant(space);
  // Exhaustive reference over the same space.
  double expect = 0.0;
  const ItemSet masks = full_set(2) + 1;
  for (int t = 0; t < 4; ++t) {
    for (int t2 = 0; t2 < 4; ++t2) {
      TypeVec a = type_from_flat_index(space, t), b = type_from_flat_index(space, t2);
      for (ItemSet x = 0; x < masks; ++x) {
        for (ItemSet y = 0; y < masks; ++y) {
          int denom = set_size(x ^ y);
          for (int j = 0; j < 2; ++j) {
            if (contains(x & y, j) && a[j] != b[j]) ++denom;
          }
          if (denom == 0) continue;
          expect = std::max(expect,
                            std::abs(ud.value(space, a, x) - ud.value(space, b, y)) / denom);
        }
      }
    }
  }
  CHECK(l_ud == expect);

  ItemTypeSpace zero = scalar_space({{0.0}, {0.0}});
  CHECK(Valuation::additive().lipschitz_constant(zero) == 0.0);
}

TEST_CASE("instance validation rejects bad pmfs") {
  BidderModel model;
  model.space = scalar_space({{1.0, 2.0}});
  model.valuation = Valuation::additive();
  model.pmf = {{0.5, 0.4}};
  CHECK_THROWS_AS(Instance(1, {model}), ConfigError);
  model.pmf = {{0.5, 0.5}};
  CHECK_NOTHROW(Instance(1, {model}));
}

TEST_CASE("value tables are deterministic") {
  Rng rng(9);
  BidderModel model = random_subadditive_model(rng, 3);
  Instance a(model.space.num_items(), {model});
  Instance b(model.space.num_items(), {model});
  for (int t = 0; t < a.num_types(0); ++t) {
    for (ItemSet s = 0; s <= full_set(a.num_items()); ++s) {
      CHECK(a.value(0, t, s) == b.value(0, t, s));
    }
  }
}
