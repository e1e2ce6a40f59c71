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

#ifndef CAPSCOPE_SCENARIO_ENGINE_HPP_
#define CAPSCOPE_SCENARIO_ENGINE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capscope/scenario.hpp"
#include "capscope/solver.hpp"

namespace capscope {

/// Welfare representation of one citizen under a scenario, uncached.
WelfareRepresentation evaluate(const CitizenState& citizen, const CityModel& city, const CommonsState& commons,
                               const Scenario& scenario, const FrontierOptions& options = {},
                               std::span<const Scenario> catalog = {});

/// Shares one immutable base state across evaluations and memoizes results
/// by (citizen, resolved override content, solver options). Safe for
/// concurrent use; concurrent inserts of the same key keep the last one.
class Evaluator {
 public:
  Evaluator(ModelState base, std::vector<Scenario> catalog);

  const ModelState& base() const { return base_; }
  const std::vector<Scenario>& catalog() const { return catalog_; }

  /// Throws Error(UnknownCitizen) or anything apply_scenario/the solver throws.
  std::shared_ptr<const WelfareRepresentation> evaluate(std::string_view citizen_id, const Scenario& scenario,
                                                        const FrontierOptions& options = {}) const;

  /// Evaluates independent (citizen, scenario) pairs in parallel; results
  /// follow input order. The first failure is rethrown after all finish.
  std::vector<std::shared_ptr<const WelfareRepresentation>> evaluate_many(
      std::span<const std::pair<std::string, Scenario>> jobs, const FrontierOptions& options = {}) const;

  std::size_t cache_size() const;

 private:
  ModelState base_;
  std::vector<Scenario> catalog_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const WelfareRepresentation>> cache_;
};

struct DeprivationReport {
  WelfareRepresentation before;
  WelfareRepresentation after;
  // Points of `before` missing from `after` and not dominated by any point of it.
  std::vector<BeingsPoint> lost_points;
  // Per dimension, max(0, ideal(before) - ideal(after)); ideal({}) = 0.
  std::vector<Rational> ideal_point_drop;
  // Bi-objective only: dominated staircase area of before minus after,
  // both clipped to the box [0, ideal(before)].
  std::optional<Rational> dominated_region_shrink_2d;
};

/// Throws Error(DimensionMismatch).
DeprivationReport deprivation(const WelfareRepresentation& before, const WelfareRepresentation& after);

/// Componentwise maximum; the zero vector of `dimensions` entries when empty.
BeingsPoint ideal_point(std::span<const BeingsPoint> points, std::size_t dimensions);

/// Area of the union of [0,p1]x[0,p2] over the points, clipped to [0,box].
Rational dominated_area_2d(std::span<const BeingsPoint> points, const BeingsPoint& box);

}  // namespace capscope

#endif  // CAPSCOPE_SCENARIO_ENGINE_HPP_
