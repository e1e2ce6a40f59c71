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

#include "doctest.h"

#include "capscope/document.hpp"
#include "capscope/error.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

using testing::fixture_path;
using testing::read_text;

constexpr const char* kTiny = R"({
  "format_version": "capscope/1",
  "welfare_dimensions": ["Joy"],
  "city": {
    "vertices": [{"id": "h"}, {"id": "p", "label": "Park"}],
    "edges": [
      {"id": "hp", "from": "h", "to": "p", "mode": "road", "common": "lane"},
      {"id": "ph", "from": "p", "to": "h", "mode": "public_transport", "common": "lane"}
    ],
    "activities": [{"id": "Picnic", "vertex": "p", "kind": "integer"}]
  },
  "commons": [{"id": "lane", "kind": "consumable", "capacity": 2, "delta": 0.5}],
  "citizens": [{
    "id": "ann", "home": "h",
    "resources": [{"id": "Time", "quantity": "15/2", "unit": "h"}],
    "conversion": {"@road": {"Time": 0.5, "lane": 1}, "ph": {"Time": 1, "lane": 1}, "Picnic": {"Time": 2}},
    "transformation": {"Picnic": {"Joy": 3}, "@public_transport": {"Joy": -1}}
  }]
})";

Error error_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an Error");
  return Error(ErrorCode::SchemaError, "");
}

TEST_CASE("decimal literals are exact and pseudo-rows expand") {
  const ModelDocument doc = parse_model(kTiny);
  CHECK(doc.commons[0].delta == Rational(1, 2));
  CHECK(doc.citizens[0].resources[0].quantity == Rational(15, 2));
  CHECK(doc.vertices[0].home_allowed);
  CHECK(doc.vertices[1].label == "Park");
  CHECK(doc.scenarios.empty());
  const ModelState s = to_state(doc);
  const CitizenState& ann = s.citizens[0];
  const auto& a = ann.conversion;
  CHECK(a.at(*a.row_index("hp"), *a.column_index("Time")) == Rational(1, 2));
  CHECK(a.at(*a.row_index("ph"), *a.column_index("Time")) == 1);
  CHECK(a.at(*a.row_index("ph"), *a.column_index("lane")) == 1);
  const auto& w = ann.transformation;
  CHECK(w.at(*w.row_index("ph"), 0) == -1);
  CHECK(w.at(*w.row_index("hp"), 0) == 0);
  CHECK(s.city.activities[0].kind == VariableKind::BoundedInteger);
}

TEST_CASE("round trip is lossless and canonical") {
  for (const char* name : {"example1.model", "example2.model"}) {
    const ModelDocument doc = parse_model(read_text(fixture_path(name)));
    const std::string text = serialize_model(doc);
    const ModelDocument again = parse_model(text);
    CHECK(again == doc);
    CHECK(serialize_model(again) == text);
  }
  const std::string tiny = serialize_model(parse_model(kTiny));
  CHECK(tiny.find("\"delta\": \"1/2\"") != std::string::npos);
  CHECK(tiny.back() == '\n');
}

TEST_CASE("rational JSON forms") {
  CHECK(rational_to_json(Rational(3)) == nlohmann::json(3));
  CHECK(rational_to_json(Rational(-1, 2)) == nlohmann::json("-1/2"));
  CHECK(rational_from_json(parse_exact_json("0.25"), "$") == Rational(1, 4));
  CHECK(rational_from_json(parse_exact_json("-7"), "$") == -7);
  CHECK(rational_from_json(nlohmann::json("2/6"), "$") == Rational(1, 3));
  CHECK_THROWS_AS(rational_from_json(nlohmann::json("two"), "$"), Error);
  CHECK_THROWS_AS(rational_from_json(nlohmann::json(true), "$"), Error);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_document("");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.line() == 1);
  }
  try {
    parse_document("{\n  \"format_version\": ,\n}");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("schema errors name the offending element") {
  std::string bad_mode = kTiny;
  bad_mode.replace(bad_mode.find("\"public_transport\""), 18, "\"boat\"");
  Error e = error_of(bad_mode);
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(e.path() == "$.city.edges[1].mode");

  std::string unknown = kTiny;
  unknown.replace(unknown.find("\"label\": \"Park\""), 15, "\"colour\": \"green\"");
  e = error_of(unknown);
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(e.path() == "$.city.vertices[1].colour");

  std::string version = kTiny;
  version.replace(version.find("capscope/1"), 10, "capscope/9");
  CHECK(error_of(version).code() == ErrorCode::SchemaError);

  std::string text_number = kTiny;
  text_number.replace(text_number.find("\"15/2\""), 6, "\"lots\"");
  e = error_of(text_number);
  CHECK(e.path() == "$.citizens[0].resources[0].quantity");
}

TEST_CASE("semantic problems are collected as diagnostics") {
  std::string dangling = kTiny;
  dangling.replace(dangling.find("\"common\": \"lane\"}"), 16, "\"common\": \"gone\"");
  try {
    parse_model(dangling);
    FAIL("expected ValidationFailure");
  } catch (const ValidationFailure& f) {
    CHECK(f.code() == ErrorCode::ValidationError);
    REQUIRE_FALSE(f.diagnostics().empty());
  }
  std::string unknown_action = kTiny;
  unknown_action.replace(unknown_action.find("\"Picnic\": {\"Joy\""), 8, "\"Supper\"");
  ModelDocument doc = parse_document(unknown_action);
  auto diags = validate_document(doc);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == "UnknownAction");
}

TEST_CASE("scenarios are validated with the document") {
  ModelDocument doc = parse_model(kTiny);
  doc.scenarios.push_back({"jam", "Traffic", std::nullopt, {{CommonDelta{"lane"}, Rational(2)}}});
  doc.scenarios.push_back({"jam2", "", "jam", {{ResourceQuantity{"ann", "Time"}, Rational(1)}}});
  CHECK(validate_document(doc).empty());
  CHECK(parse_model(serialize_model(doc)) == doc);
  doc.scenarios.push_back({"jam", "", std::nullopt, {}});
  auto diags = validate_document(doc);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags.back().code == "DuplicateScenario");
  doc.scenarios.pop_back();
  doc.scenarios.push_back({"broken", "", std::nullopt, {{CommonCapacity{"lane"}, Rational(-3)}}});
  CHECK_FALSE(validate_document(doc).empty());
}

TEST_CASE("scenario JSON round trip") {
  Scenario s{"mix", "All kinds", "base2",
             {{CommonCapacity{"a"}, Rational(0)},
              {CommonDelta{"b"}, Rational(1, 3)},
              {ResourceQuantity{"c", "r"}, Rational(5)},
              {ConversionEntry{"c", "x", "r"}, Rational(-2)},
              {TransformationEntry{"c", "x", "d"}, Rational(7, 2)},
              {ForbidAction{"c", "x"}, Rational(0)}}};
  CHECK(scenario_from_json(scenario_to_json(s)) == s);
  CHECK_THROWS_AS(scenario_from_json(parse_exact_json(R"({"id":"x","overrides":[{"target":"tax"}]})")), Error);
}

}  // namespace
}  // namespace capscope
