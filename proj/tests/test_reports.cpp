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

#include "capscope/reports.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

using testing::pt;

WelfareRepresentation sample() {
  WelfareRepresentation w;
  w.dimensions = {"Beauty", "Health"};
  w.points.push_back({pt({6, 6}), Doings{{{"x13", 1}, {"x21", 1}, {"x32", 1}}}, 1});
  FrontierPoint half{BeingsPoint{{Rational(9, 2), Rational(7)}}, Doings{{{"x15", 2}}}, 3};
  w.points.push_back(half);
  return w;
}

TEST_CASE("welfare JSON") {
  const auto j = welfare_to_json(sample());
  CHECK(j["dimensions"] == nlohmann::json({"Beauty", "Health"}));
  CHECK(j["points"][0] == nlohmann::json({6, 6}));
  CHECK(j["points"][1][0] == "9/2");
  CHECK(j["witnesses"][0]["x13"] == 1);
  CHECK(j["witnesses"][1]["x15"] == 2);
  CHECK(j["alternates_count"] == nlohmann::json({1, 3}));
}

TEST_CASE("CSV header and rows follow action order") {
  const std::vector<std::string> actions{"x13", "x15", "x21", "x32"};
  CHECK(frontier_csv_header(sample(), actions) == "Beauty,Health,x13,x15,x21,x32");
  auto rows = frontier_csv_rows(sample(), actions);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "6,6,1,0,1,1");
  CHECK(rows[1] == "9/2,7,0,2,0,0");
}

TEST_CASE("comparison and error JSON") {
  ComparisonOutcome o;
  o.relation = Relation::StrictlyBetter;
  o.certificates.push_back({pt({1, 1}), pt({2, 2})});
  const auto j = comparison_to_json(o);
  CHECK(j["relation"] == "StrictlyBetter");
  CHECK(j["certificates"][0]["dominated"] == nlohmann::json({1, 1}));
  CHECK(j["certificates"][0]["by"] == nlohmann::json({2, 2}));
  const auto e = error_to_json(Error(ErrorCode::UnknownCitizen, "unknown citizen 'z'", "z"));
  CHECK(e["code"] == "UnknownCitizen");
  CHECK(e["path"] == "z");
}

TEST_CASE("deprivation JSON") {
  DeprivationReport r;
  r.before = sample();
  r.lost_points = {pt({6, 6})};
  r.ideal_point_drop = {Rational(1), Rational(0)};
  r.dominated_region_shrink_2d = Rational(13, 2);
  const auto j = deprivation_to_json(r);
  CHECK(j["lost_points"] == nlohmann::json::array({{6, 6}}));
  CHECK(j["ideal_point_drop"] == nlohmann::json({1, 0}));
  CHECK(j["dominated_region_shrink_2d"] == "13/2");
  r.dominated_region_shrink_2d.reset();
  CHECK(deprivation_to_json(r)["dominated_region_shrink_2d"].is_null());
}

}  // namespace
}  // namespace capscope
