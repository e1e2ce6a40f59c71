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
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

#include "capscope/service.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

using nlohmann::json;
using testing::load_document;

json body_of(const Response& r) { return json::parse(r.body); }

TEST_CASE("read-only routes") {
  Service service(load_document("example1.model"));
  Response model = service.handle("GET", "/model");
  CHECK(model.status == 200);
  CHECK(parse_model(model.body) == load_document("example1.model"));
  json citizens = body_of(service.handle("GET", "/citizens"));
  CHECK(citizens[0]["id"] == "c1");
  CHECK(citizens[0]["resources"][0]["quantity"] == 10);
  json commons = body_of(service.handle("GET", "/commons"));
  CHECK(commons.size() == 8);
  CHECK(commons[0]["kind"] == "consumable");
}

TEST_CASE("solve, diff and compare") {
  Service service(load_document("example1.model"));
  Response solved = service.handle("POST", "/solve", R"({"citizen_id": "c1"})");
  REQUIRE(solved.status == 200);
  CHECK(body_of(solved)["points"] == json::array({{6, 6}, {4, 7}}));
  Response exhaustive =
      service.handle("POST", "/solve", R"({"citizen_id": "c1", "scenario_id": "base", "method": "exhaustive"})");
  CHECK(body_of(exhaustive)["points"] == json::array({{6, 6}, {4, 7}}));

  Response diff = service.handle("POST", "/diff",
                                 R"({"citizen_id": "c1", "before_id": "base", "after_id": "street23_damage"})");
  REQUIRE(diff.status == 200);
  CHECK(body_of(diff)["lost_points"] == json::array({{6, 6}}));

  Response compare = service.handle("POST", "/compare", R"({"left_citizen": "c1", "right_citizen": "c1"})");
  CHECK(body_of(compare)["relation"] == "Equivalent");
}

TEST_CASE("draft scenarios overlay the model") {
  Service service(load_document("example1.model"));
  Response created = service.handle(
      "POST", "/scenarios",
      R"({"id": "draft", "extends": "street23_damage",
          "overrides": [{"target": "resource", "citizen": "c1", "resource": "Time", "value": 20}]})");
  REQUIRE(created.status == 200);
  json j = body_of(created);
  CHECK(j["overrides"].size() == 2);
  CHECK(j["summary"].size() == 2);
  Response solved = service.handle("POST", "/solve", R"({"citizen_id": "c1", "scenario_id": "draft"})");
  REQUIRE(solved.status == 200);
  // The base model is untouched.
  CHECK(body_of(service.handle("GET", "/citizens"))[0]["resources"][1]["quantity"] == 10);
  CHECK(service.handle("POST", "/scenarios", R"({"id": "base"})").status == 422);
  CHECK(service.handle("POST", "/scenarios", R"({"id": "tired"})").status == 422);
  CHECK(service.handle("POST", "/scenarios", R"({"id": "neg", "overrides": [
          {"target": "common_capacity", "common": "street_12", "value": -1}]})")
            .status == 422);
}

TEST_CASE("error statuses") {
  Service service(load_document("example1.model"));
  CHECK(service.handle("GET", "/nowhere").status == 404);
  CHECK(service.handle("DELETE", "/model").status == 405);
  CHECK(service.handle("POST", "/solve", "{").status == 400);
  CHECK(service.handle("POST", "/solve", R"({"citizen": "c1"})").status == 400);
  Response unknown = service.handle("POST", "/solve", R"({"citizen_id": "zed"})");
  CHECK(unknown.status == 404);
  CHECK(body_of(unknown)["code"] == "UnknownCitizen");
  Response scenario = service.handle("POST", "/solve", R"({"citizen_id": "c1", "scenario_id": "nope"})");
  CHECK(scenario.status == 422);
  CHECK(body_of(scenario)["code"] == "UnknownScenario");
}

TEST_CASE("node limits surface the partial frontier") {
  Service service(load_document("example2.model"));
  Response r = service.handle("POST", "/solve", R"({"citizen_id": "c1"})", {{"node_limit", "3"}});
  CHECK(r.status == 409);
  json j = body_of(r);
  CHECK(j["code"] == "NodeLimitExceeded");
  CHECK(j.contains("incumbent"));
  CHECK(service.handle("POST", "/solve", R"({"citizen_id": "c1"})", {{"node_limit", "x"}}).status == 400);
}

TEST_CASE("served over HTTP") {
  Service service(load_document("example1.model"));
  std::thread server([&] { service.listen("127.0.0.1", 0); });
  service.wait_until_ready();
  httplib::Client client("127.0.0.1", service.bound_port());
  auto model = client.Get("/model");
  REQUIRE(model);
  CHECK(model->status == 200);
  auto solved = client.Post("/solve", R"({"citizen_id": "c1"})", "application/json");
  REQUIRE(solved);
  CHECK(json::parse(solved->body)["points"] == json::array({{6, 6}, {4, 7}}));
  service.stop();
  server.join();
}

}  // namespace
}  // namespace capscope
