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

#include <cstdint>
#include <vector>

#include "doctest.h"

#include "capscope/error.hpp"
#include "capscope/graph_builder.hpp"
#include "capscope/solver.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

using testing::as_longs;
using testing::load_document;
using testing::pareto_oracle;
using testing::pt;
using testing::pts;
using testing::random_instance;

IlpInstance example1_ilp(const Scenario& scenario = {}) {
  const ModelState s = to_state(load_document("example1.model"));
  return build_ilp(s.citizens[0], s.city, s.commons, scenario);
}

// max (x1 + 2 x2, 2 x1 + x2)  s.t.  x1 + x2 <= 2, x in {0,1,2}^2.
IlpInstance two_variable() {
  IlpInstance ilp;
  ilp.variables = {{"x1", VariableKind::BoundedInteger, 2}, {"x2", VariableKind::BoundedInteger, 2}};
  ilp.constraints.push_back({{{0, Rational(1)}, {1, Rational(1)}}, ConstraintSense::LessEqual, Rational(2), "cap"});
  ilp.objectives.push_back({"f", {{0, Rational(1)}, {1, Rational(2)}}});
  ilp.objectives.push_back({"g", {{0, Rational(2)}, {1, Rational(1)}}});
  return ilp;
}

TEST_CASE("single-objective maxima on a two-variable program") {
  const IlpInstance ilp = two_variable();
  SolveResult f = solve_single(ilp, 0);
  REQUIRE(f.status == SolveStatus::Optimal);
  CHECK(f.objective_value == 4);
  CHECK(f.assignment == std::vector<std::int64_t>{0, 2});
  CHECK(f.witness.count("x2") == 2);
  SolveResult g = solve_single(ilp, 1);
  CHECK(g.objective_value == 4);
  CHECK(g.assignment == std::vector<std::int64_t>{2, 0});
}

TEST_CASE("the two-variable frontier is the three integer corners") {
  WelfareRepresentation eps = pareto_frontier(two_variable());
  CHECK(eps.beings() == pts({{4, 2}, {3, 3}, {2, 4}}));
  CHECK(eps.points[1].witness.count("x1") == 1);
  CHECK(eps.points[1].witness.count("x2") == 1);
  FrontierOptions exhaustive;
  exhaustive.method = FrontierMethod::Exhaustive;
  CHECK(pareto_frontier(two_variable(), exhaustive) == eps);
}

TEST_CASE("Example 1 single objectives") {
  const IlpInstance ilp = example1_ilp();
  CHECK(solve_single(ilp, 0).objective_value == 6);
  CHECK(solve_single(ilp, 1).objective_value == 7);
}

TEST_CASE("Example 1 frontier with witnesses") {
  WelfareRepresentation w = pareto_frontier(example1_ilp());
  REQUIRE(w.beings() == pts({{6, 6}, {4, 7}}));
  CHECK(w.points[0].witness.count("x13") == 1);
  CHECK(w.points[0].witness.count("x32") == 1);
  CHECK(w.points[0].witness.count("x21") == 1);
  CHECK(w.points[1].witness.count("x15") == 1);
  CHECK(w.points[1].witness.count("x53") == 1);
  CHECK(w.points[1].witness.count("x31") == 1);
  CHECK(as_longs(w.beings()) == pareto_oracle(testing::example1_beings()));
}

TEST_CASE("Example 1 with street 23 removed") {
  Scenario closed{"s", "", std::nullopt, {{CommonCapacity{"street_23"}, Rational(0)}}};
  WelfareRepresentation w = pareto_frontier(example1_ilp(closed));
  CHECK(w.beings() == pts({{5, 6}, {4, 7}}));
  CHECK(as_longs(w.beings()) == pareto_oracle(testing::example1_beings({4})));
}

TEST_CASE("Example 1 enumeration finds the five Beings and their counts") {
  WelfareRepresentation all = enumerate_beings(example1_ilp());
  CHECK(all.beings() == pts({{6, 6}, {5, 6}, {4, 7}, {3, 4}, {0, 0}}));
  std::vector<std::vector<long>> oracle = testing::example1_beings();
  std::sort(oracle.rbegin(), oracle.rend());
  CHECK(as_longs(all.beings()) == oracle);
  std::uint64_t total = 0;
  for (const auto& p : all.points) total += p.alternates_count;
  CHECK(total == testing::example1_walks().size());
}

TEST_CASE("infeasible programs") {
  IlpInstance ilp = two_variable();
  ilp.constraints.push_back({{{0, Rational(1)}}, ConstraintSense::Equal, Rational(3), "impossible"});
  CHECK(solve_single(ilp, 0).status == SolveStatus::Infeasible);
  CHECK(pareto_frontier(ilp).points.empty());
  FrontierOptions exhaustive;
  exhaustive.method = FrontierMethod::Exhaustive;
  CHECK(pareto_frontier(ilp, exhaustive).points.empty());
  CHECK_FALSE(lexmin_assignment(ilp, {}).has_value());
}

TEST_CASE("the node limit reports the incumbent") {
  // Parity forces deep branching: max sum x  s.t.  2 sum x <= 2n + 1.
  IlpInstance ilp;
  Terms row;
  Terms objective;
  for (std::size_t j = 0; j < 12; ++j) {
    ilp.variables.push_back({"x" + std::to_string(j), VariableKind::BoundedInteger, 3});
    row.emplace_back(j, Rational(2));
    objective.emplace_back(j, Rational(1 + static_cast<long>(j % 3)));
  }
  ilp.constraints.push_back({row, ConstraintSense::LessEqual, Rational(25), "odd"});
  ilp.objectives.push_back({"f", objective});
  try {
    solve_single(ilp, 0, {}, 2);
    FAIL("expected NodeLimitExceeded");
  } catch (const NodeLimitError& e) {
    CHECK(e.code() == ErrorCode::NodeLimitExceeded);
    if (e.incumbent()) CHECK(ilp.satisfies(e.incumbent()->assignment));
  }
  CHECK(solve_single(ilp, 0).objective_value == 36);
}

TEST_CASE("scaling objectives scales the frontier") {
  IlpInstance scaled = two_variable();
  for (auto& [j, c] : scaled.objectives[0].terms) c *= Rational(1, 3);
  WelfareRepresentation w = pareto_frontier(scaled);
  REQUIRE(w.points.size() == 3);
  CHECK(w.points[0].point.values[0] == Rational(4, 3));
  CHECK(w.points[2].point.values[1] == 4);
}

TEST_CASE("method errors") {
  IlpInstance three = two_variable();
  three.objectives.push_back({"h", {}});
  try {
    pareto_frontier(three);
    FAIL("expected TooManyObjectives");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyObjectives);
  }
  FrontierOptions exhaustive;
  exhaustive.method = FrontierMethod::Exhaustive;
  CHECK(pareto_frontier(three, exhaustive).points.size() == 3);
  exhaustive.search_cap = 3;
  try {
    pareto_frontier(two_variable(), exhaustive);
    FAIL("expected SearchSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchSpaceTooLarge);
  }
}

TEST_CASE("filter_nondominated") {
  CHECK(filter_nondominated(pts({{6, 6}, {4, 7}, {5, 6}, {3, 4}, {0, 0}})) == pts({{6, 6}, {4, 7}}));
  CHECK(filter_nondominated(pts({{1, 1}, {1, 1}})) == pts({{1, 1}}));
  CHECK(filter_nondominated(std::vector<BeingsPoint>{}).empty());
  CHECK_THROWS_AS(filter_nondominated(std::vector<BeingsPoint>{pt({1, 2}), pt({1})}), Error);
}

TEST_CASE("epsilon-constraint matches the exhaustive oracle on random programs") {
  FrontierOptions exhaustive;
  exhaustive.method = FrontierMethod::Exhaustive;
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    const IlpInstance ilp = random_instance(seed);
    WelfareRepresentation a = pareto_frontier(ilp);
    WelfareRepresentation b = pareto_frontier(ilp, exhaustive);
    CAPTURE(seed);
    REQUIRE(a.beings() == b.beings());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].witness == b.points[i].witness);
  }
}

TEST_CASE("Example 2 citizen 2 frontier matches the activity oracle") {
  const ModelState s = to_state(load_document("example2.model"));
  WelfareRepresentation w = pareto_frontier(build_ilp(*s.find_citizen("c2"), s.city, s.commons));
  CHECK(as_longs(w.beings()) == pareto_oracle(testing::example2_beings(testing::example2_citizen(2), false)));
  CHECK(w.beings() ==
        pts({{17, 13}, {16, 15}, {15, 18}, {14, 20}, {11, 21}, {10, 25}, {5, 26}, {4, 28}, {1, 29}}));
  for (const auto& p : w.points) {
    for (const auto& [action, count] : p.witness.counts) CHECK(action.front() != 'r');  // no car, no road
  }
}

TEST_CASE("lexmin_assignment returns the smallest feasible assignment") {
  const IlpInstance ilp = two_variable();
  std::vector<IlpConstraint> at_least_three{
      {{{0, Rational(-1)}, {1, Rational(-2)}}, ConstraintSense::LessEqual, Rational(-3), "f>=3"}};
  auto x = lexmin_assignment(ilp, at_least_three);
  REQUIRE(x.has_value());
  CHECK(*x == std::vector<std::int64_t>{0, 2});
}

}  // namespace
}  // namespace capscope
