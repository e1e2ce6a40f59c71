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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capscope/compare.hpp"
#include "capscope/graph_builder.hpp"
#include "capscope/scenario_engine.hpp"
#include "capscope/solver.hpp"
#include "test_support.hpp"

namespace capscope {
namespace {

using testing::as_longs;
using testing::load_document;
using testing::pareto_oracle;
using testing::pt;
using testing::pts;

// Thrown by expect(); carries the reason a criterion failed.
struct Failure {
  std::string reason;
};

void expect(bool condition, const std::string& reason) {
  if (!condition) throw Failure{reason};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Fn>
auto timed(double limit, const std::string& what, Fn fn) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  const double elapsed = seconds_since(start);
  expect(elapsed < limit, what + " took " + std::to_string(elapsed) + " s (limit " + std::to_string(limit) + " s)");
  return result;
}

std::string points_text(const std::vector<BeingsPoint>& points) {
  std::string out = "{";
  for (const auto& p : points) out += (out.size() > 1 ? "," : "") + to_string(p);
  return out + "}";
}

// Some point of `before` is >= p componentwise.
bool weakly_covered(const BeingsPoint& p, const std::vector<BeingsPoint>& before) {
  for (const auto& q : before)
    if (q == p || dominates_point(q, p)) return true;
  return false;
}

const FrontierOptions kExhaustive{FrontierMethod::Exhaustive};

// --------------------------------------------------------------------------

void example1_enumeration() {
  const ModelState s = to_state(load_document("example1.model"));
  const CitizenState& c = s.citizens[0];
  const WelfareRepresentation all = timed(1.0, "enumeration", [&] {
    return enumerate_beings(build_ilp(c, s.city, s.commons), kExhaustive);
  });
  const auto beings = all.beings();
  expect(beings.size() == 5, "expected 5 distinct Beings, got " + points_text(beings));
  expect(beings == pts({{6, 6}, {5, 6}, {4, 7}, {3, 4}, {0, 0}}), "unexpected Beings " + points_text(beings));
  std::vector<std::vector<long>> oracle = testing::example1_beings();
  std::sort(oracle.rbegin(), oracle.rend());
  expect(as_longs(beings) == oracle, "enumeration disagrees with the street-walk oracle");

  auto cost_of = [&](const BeingsPoint& target) {
    for (const auto& p : all.points) {
      if (p.point != target) continue;
      Consumption used = consumption_of(p.witness, c.conversion);
      expect(beings_of(p.witness, c.transformation) == target, "witness does not map to " + to_string(target));
      return BeingsPoint{{*used.resource("Energy"), *used.resource("Time")}};
    }
    throw Failure{"no witness for " + to_string(target)};
  };
  expect(cost_of(pt({4, 7})) == pt({6, 5}), "Doings with Beings (4,7) should cost (6,5)");
  expect(cost_of(pt({3, 4})) == pt({7, 7}), "Doings with Beings (3,4) should cost (7,7)");
}

void example1_frontier() {
  const auto kept = filter_nondominated(pts({{6, 6}, {4, 7}, {5, 6}, {3, 4}, {0, 0}}));
  expect(kept == pts({{6, 6}, {4, 7}}), "filter kept " + points_text(kept));
  // (5,6) is dominated by (6,6) and must not survive.
  expect(dominates_point(pt({6, 6}), pt({5, 6})), "(6,6) should dominate (5,6)");
  const ModelState s = to_state(load_document("example1.model"));
  const auto solved = pareto_frontier(build_ilp(s.citizens[0], s.city, s.commons)).beings();
  expect(solved == kept, "solved frontier " + points_text(solved) + " differs from the filtered aggregates");
}

void example2_point() {
  const ModelState s = to_state(load_document("example2.model"));
  const CitizenState& c1 = *s.find_citizen("c1");
  const WelfareRepresentation w = timed(10.0, "epsilon-constraint frontier", [&] {
    return pareto_frontier(build_ilp(c1, s.city, s.commons));
  });
  const FrontierPoint* target = nullptr;
  for (const auto& p : w.points)
    if (p.point == pt({10, 40})) target = &p;
  expect(target != nullptr, "(10,40) missing from " + points_text(w.beings()));
  expect(target->witness == Doings{{{"Sleep", 1}, {"FamilyTime", 15}}},
         "witness of (10,40) is not Sleep=1, FamilyTime=15 with no travel");
  expect(as_longs(w.beings()) == pareto_oracle(testing::example2_beings(testing::example2_citizen(1), false)),
         "frontier disagrees with the activity-enumeration oracle");
  expect(w.beings() == pts({{25, 9}, {23, 11}, {20, 15}, {17, 18}, {14, 19}, {12, 21}, {10, 40}, {0, 48}}),
         "frontier changed: " + points_text(w.beings()));
  for (const auto& p : w.points) {
    expect(beings_of(p.witness, c1.transformation) == p.point, "witness does not map to " + to_string(p.point));
  }
}

void park_damage() {
  const ModelDocument doc = load_document("example2.model");
  const ModelState s = to_state(doc);
  const CitizenState& c1 = *s.find_citizen("c1");
  const Scenario* park = doc.find_scenario("park_damage");
  expect(park != nullptr, "fixture lacks park_damage");
  const auto before = timed(10.0, "present-state frontier", [&] {
    return pareto_frontier(build_ilp(c1, s.city, s.commons));
  });
  const auto after = timed(10.0, "park frontier", [&] {
    return pareto_frontier(build_ilp(c1, s.city, s.commons, *park, doc.scenarios));
  });
  expect(!after.points.empty(), "park frontier is empty");
  for (const auto& p : after.points) {
    expect(p.witness.count("Walk") == 0 && p.witness.count("Run") == 0,
           "witness of " + to_string(p.point) + " walks or runs in the closed park");
  }
  const auto b = before.beings();
  for (const auto& p : after.beings()) {
    expect(weakly_covered(p, b), to_string(p) + " is not covered by the present-state frontier");
  }
  expect(as_longs(after.beings()) == pareto_oracle(testing::example2_beings(testing::example2_citizen(1), true)),
         "park frontier disagrees with the oracle");
}

void oracle_equivalence() {
  timed(60.0, "100 random instances", [&] {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const IlpInstance ilp = testing::random_instance(seed * 7919);
      expect(ilp.variables.size() <= 12, "instance too large");
      const auto eps = pareto_frontier(ilp);
      const auto oracle = exhaustive_frontier(ilp);
      expect(eps.beings() == oracle.beings(), "seed " + std::to_string(seed) + ": " + points_text(eps.beings()) +
                                                  " vs " + points_text(oracle.beings()));
      for (std::size_t i = 0; i < eps.points.size(); ++i) {
        expect(eps.points[i].witness == oracle.points[i].witness,
               "seed " + std::to_string(seed) + ": witnesses differ at " + to_string(eps.points[i].point));
      }
    }
    return 0;
  });
}

void damage_monotonicity() {
  timed(60.0, "50 damage pairs", [&] {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const ModelState s = testing::random_city(seed);
      const Scenario damage = testing::random_damage(s, seed);
      const CitizenState& c = s.citizens.front();
      const auto before = pareto_frontier(build_ilp(c, s.city, s.commons)).beings();
      const auto after = pareto_frontier(build_ilp(c, s.city, s.commons, damage)).beings();
      for (const auto& p : after) {
        expect(weakly_covered(p, before), "seed " + std::to_string(seed) + ": " + to_string(p) +
                                              " escapes " + points_text(before));
      }
    }
    return 0;
  });
}

void comparison_algebra() {
  std::mt19937_64 rng(20261016);
  auto random_set = [&] {
    std::vector<BeingsPoint> out;
    const int n = static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) out.push_back(pt({static_cast<long>(rng() % 4), static_cast<long>(rng() % 4)}));
    return out;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_set();
    const auto b = random_set();
    const auto c = random_set();
    const std::string at = "trial " + std::to_string(trial);
    for (const auto* set : {&a, &b, &c}) {
      for (const auto& p : *set) expect(!dominates_point(p, p), at + ": dominance is reflexive");
    }
    for (const auto& x : a)
      for (const auto& y : b)
        for (const auto& z : c)
          if (dominates_point(x, y) && dominates_point(y, z))
            expect(dominates_point(x, z), at + ": point dominance is not transitive");
    if (set_succeeds(a, b) && set_succeeds(b, c)) expect(set_succeeds(a, c), at + ": succession is not transitive");
    expect(classify(b, a).relation == inverse(classify(a, b).relation), at + ": classification not inverse");
  }
}

void determinism() {
  namespace fs = std::filesystem;
  const fs::path work = CAPSCOPE_WORK;
  fs::create_directories(work);
  const std::string model = testing::fixture_path("example2.model");
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = work / ("frontier_" + std::to_string(run) + ".csv");
    const std::string command =
        std::string("\"") + CAPSCOPE_CLI + "\" frontier \"" + model + "\" --citizen c1 > \"" + out.string() + "\"";
    expect(std::system(command.c_str()) == 0, "CLI run failed: " + command);
    outputs.push_back(testing::read_text(out.string()));
  }
  expect(!outputs[0].empty(), "CLI printed nothing");
  expect(outputs[0] == outputs[1], "two runs differ");
}

}  // namespace
}  // namespace capscope

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"example1-enumeration", capscope::example1_enumeration},
      {"example1-frontier", capscope::example1_frontier},
      {"example2-point-reproduction", capscope::example2_point},
      {"park-damage", capscope::park_damage},
      {"oracle-equivalence", capscope::oracle_equivalence},
      {"damage-monotonicity", capscope::damage_monotonicity},
      {"comparison-algebra", capscope::comparison_algebra},
      {"determinism", capscope::determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      run();
    } catch (const capscope::Failure& f) {
      reason = f.reason;
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.3f", capscope::seconds_since(start));
    if (reason.empty()) {
      std::cout << "PASS " << name << " (" << elapsed << " s)\n";
    } else {
      ++failed;
      std::cout << "FAIL " << name << " (" << elapsed << " s): " << reason << "\n";
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
