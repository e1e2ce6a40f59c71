// Copyright 2026 The Capscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include "doctest.h"

#include "capscope/error.hpp"
#include "capscope/scenario.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

using testing::load_document;

ModelState example2() { return to_state(load_document("example2.model")); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvariantViolated;
}

TEST_CASE("the empty scenario is the identity") {
  const ModelState base = example2();
  CHECK(apply_scenario(base, Scenario{}) == base);
}

TEST_CASE("damaging road_14 zeroes that common and leaves the base untouched") {
  const ModelState base = example2();
  Scenario s{"road", "", std::nullopt, {{CommonCapacity{"road_14"}, Rational(0)}}};
  ModelState after = apply_scenario(base, s);
  CHECK(after.commons.find("road_14")->capacity == 0);
  CHECK(base.commons.find("road_14")->capacity == 1);
  CHECK(after.commons.find("road_41")->capacity == 1);
}

TEST_CASE("park damage via ForbidAction records both fixings") {
  Scenario s{"park", "", std::nullopt,
             {{ForbidAction{"c1", "Walk"}, Rational(0)}, {ForbidAction{"c1", "Run"}, Rational(0)}}};
  ModelState after = apply_scenario(example2(), s);
  CHECK(after.find_citizen("c1")->forbidden_actions == std::vector<std::string>{"Walk", "Run"});
  CHECK(after.find_citizen("c2")->forbidden_actions.empty());
}

TEST_CASE("every override kind edits its target") {
  Scenario s{"all", "", std::nullopt,
             {{ResourceQuantity{"c1", "Money"}, Rational(-50)},
              {ConversionEntry{"c1", "Work", "Money"}, Rational(-80)},
              {TransformationEntry{"c2", "Museum", "Pleasure"}, Rational(7, 2)},
              {CommonCapacity{"park"}, Rational(0)}}};
  ModelState after = apply_scenario(example2(), s);
  const auto& c1 = *after.find_citizen("c1");
  CHECK(c1.resources.find("Money")->quantity == -50);
  CHECK(c1.conversion.at(*c1.conversion.row_index("Work"), *c1.conversion.column_index("Money")) == -80);
  const auto& c2 = *after.find_citizen("c2");
  CHECK(c2.transformation.at(*c2.transformation.row_index("Museum"), *c2.transformation.column_index("Pleasure")) ==
        Rational(7, 2));
}

TEST_CASE("overrides apply in declaration order") {
  Scenario s{"twice", "", std::nullopt,
             {{ResourceQuantity{"c1", "Time"}, Rational(10)}, {ResourceQuantity{"c1", "Time"}, Rational(12)}}};
  CHECK(apply_scenario(example2(), s).find_citizen("c1")->resources.find("Time")->quantity == 12);
}

TEST_CASE("unresolvable targets raise UnresolvableScenario") {
  const ModelState base = example2();
  auto apply = [&](Override o) { return apply_scenario(base, Scenario{"x", "", std::nullopt, {o}}); };
  CHECK(code_of([&] { apply({CommonCapacity{"bridge"}, Rational(0)}); }) == ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { apply({ResourceQuantity{"c9", "Time"}, Rational(0)}); }) == ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { apply({ResourceQuantity{"c1", "Gold"}, Rational(0)}); }) == ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { apply({ConversionEntry{"c1", "Fly", "Time"}, Rational(0)}); }) ==
        ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { apply({TransformationEntry{"c1", "Sleep", "Joy"}, Rational(0)}); }) ==
        ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { apply({ForbidAction{"c1", "Fly"}, Rational(0)}); }) == ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { apply({CommonDelta{"park"}, Rational(0)}); }) == ErrorCode::UnresolvableScenario);
}

TEST_CASE("absent citizens may be skipped when compiling one citizen") {
  ModelState one = example2();
  one.citizens.resize(1);
  Scenario s{"x", "", std::nullopt, {{ResourceQuantity{"c2", "Time"}, Rational(1)}}};
  CHECK_NOTHROW(apply_scenario(one, s, {}, ApplyOptions{true}));
  CHECK_THROWS_AS(apply_scenario(one, s), Error);
}

TEST_CASE("invariant-breaking values raise InvariantViolated") {
  ModelState base = to_state(load_document("example1.model"));
  auto apply = [&](Override o) { return apply_scenario(base, Scenario{"x", "", std::nullopt, {o}}); };
  CHECK(code_of([&] { apply({CommonDelta{"street_12"}, Rational(2)}); }) == ErrorCode::InvariantViolated);
  CHECK(code_of([&] { apply({CommonCapacity{"street_12"}, Rational(-1)}); }) == ErrorCode::InvariantViolated);
  ModelState city2 = example2();
  CHECK(code_of([&] {
          apply_scenario(city2, Scenario{"x", "", std::nullopt, {{CommonCapacity{"park"}, Rational(2)}}});
        }) == ErrorCode::InvariantViolated);
}

TEST_CASE("extends chains resolve ancestors first and reject cycles") {
  std::vector<Scenario> catalog{
      {"a", "", std::nullopt, {{ResourceQuantity{"c1", "Time"}, Rational(20)}}},
      {"b", "", "a", {{ResourceQuantity{"c1", "Time"}, Rational(18)}}},
      {"loop1", "", "loop2", {}},
      {"loop2", "", "loop1", {}},
      {"orphan", "", "ghost", {}},
  };
  auto flat = resolve_overrides(catalog[1], catalog);
  REQUIRE(flat.size() == 2);
  CHECK(flat[0].value == 20);
  CHECK(flat[1].value == 18);
  CHECK(apply_scenario(example2(), catalog[1], catalog).find_citizen("c1")->resources.find("Time")->quantity == 18);
  CHECK(code_of([&] { resolve_overrides(catalog[2], catalog); }) == ErrorCode::UnresolvableScenario);
  CHECK(code_of([&] { resolve_overrides(catalog[4], catalog); }) == ErrorCode::UnresolvableScenario);
}

TEST_CASE("composition equals sequential application") {
  const ModelState base = example2();
  Scenario s1{"s1", "", std::nullopt, {{CommonCapacity{"park"}, Rational(0)}}};
  Scenario s2{"s2", "", std::nullopt, {{ResourceQuantity{"c1", "Time"}, Rational(20)}}};
  CHECK(apply_scenario(apply_scenario(base, s1), s2) == apply_scenario(base, compose(s1, s2)));
  // Disjoint targets commute.
  CHECK(apply_scenario(base, compose(s1, s2)) == apply_scenario(base, compose(s2, s1)));
}

TEST_CASE("canonical_text identifies override content") {
  std::vector<Override> a{{CommonCapacity{"park"}, Rational(0)}};
  std::vector<Override> b{{CommonCapacity{"park"}, Rational(0)}};
  std::vector<Override> c{{CommonCapacity{"park"}, Rational(1)}};
  std::vector<Override> d{{CommonDelta{"park"}, Rational(0)}};
  CHECK(canonical_text(a) == canonical_text(b));
  CHECK(canonical_text(a) != canonical_text(c));
  CHECK(canonical_text(a) != canonical_text(d));
  CHECK(canonical_text(std::vector<Override>{}) != canonical_text(a));
}

}  // namespace
}  // namespace capscope
