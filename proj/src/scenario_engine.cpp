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

#include "capscope/scenario_engine.hpp"

#include <algorithm>
#include <exception>

#include "capscope/compare.hpp"
#include "capscope/error.hpp"
#include "capscope/graph_builder.hpp"

namespace capscope {

WelfareRepresentation evaluate(const CitizenState& citizen, const CityModel& city, const CommonsState& commons,
                               const Scenario& scenario, const FrontierOptions& options,
                               std::span<const Scenario> catalog) {
  return pareto_frontier(build_ilp(citizen, city, commons, scenario, catalog), options);
}

Evaluator::Evaluator(ModelState base, std::vector<Scenario> catalog)
    : base_(std::move(base)), catalog_(std::move(catalog)) {}

namespace {

std::string cache_key(std::string_view citizen, std::span<const Override> overrides, const FrontierOptions& o) {
  std::string key(citizen);
  key += '\x1f';
  key += canonical_text(overrides);
  key += '\x1f';
  key += o.method == FrontierMethod::Exhaustive ? "exhaustive" : "eps";
  key += '\x1f' + std::to_string(o.node_limit) + '\x1f' + std::to_string(o.search_cap);
  return key;
}

}  // namespace

std::shared_ptr<const WelfareRepresentation> Evaluator::evaluate(std::string_view citizen_id,
                                                                 const Scenario& scenario,
                                                                 const FrontierOptions& options) const {
  if (!base_.find_citizen(citizen_id)) {
    throw Error(ErrorCode::UnknownCitizen, "unknown citizen '" + std::string(citizen_id) + "'",
                std::string(citizen_id));
  }
  auto overrides = resolve_overrides(scenario, catalog_);
  const std::string key = cache_key(citizen_id, overrides, options);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }

  ModelState applied = apply_scenario(base_, scenario, catalog_);
  if (auto diags = validate_model(applied.city, applied.commons, applied.citizens); !diags.empty()) {
    throw Error(ErrorCode::InvariantViolated, diags.front().message, diags.front().path);
  }
  const CitizenState& citizen = *applied.find_citizen(citizen_id);
  auto result = std::make_shared<const WelfareRepresentation>(
      pareto_frontier(compile_ilp(citizen, applied.city, applied.commons), options));

  std::lock_guard lock(mutex_);
  cache_.insert_or_assign(key, result);
  return result;
}

std::vector<std::shared_ptr<const WelfareRepresentation>> Evaluator::evaluate_many(
    std::span<const std::pair<std::string, Scenario>> jobs, const FrontierOptions& options) const {
  std::vector<std::shared_ptr<const WelfareRepresentation>> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      out[k] = evaluate(jobs[k].first, jobs[k].second, options);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::size_t Evaluator::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

BeingsPoint ideal_point(std::span<const BeingsPoint> points, std::size_t dimensions) {
  BeingsPoint ideal{std::vector<Rational>(dimensions)};
  if (points.empty()) return ideal;
  ideal = points.front();
  for (const auto& p : points) {
    for (std::size_t k = 0; k < dimensions; ++k) ideal.values[k] = max(ideal.values[k], p.values[k]);
  }
  return ideal;
}

Rational dominated_area_2d(std::span<const BeingsPoint> points, const BeingsPoint& box) {
  const Rational zero = 0;
  const Rational bx = max(box.values[0], zero);
  const Rational by = max(box.values[1], zero);
  std::vector<std::pair<Rational, Rational>> corners;
  for (const auto& p : points) {
    Rational x = min(max(p.values[0], zero), bx);
    Rational y = min(max(p.values[1], zero), by);
    if (x > 0 && y > 0) corners.emplace_back(std::move(x), std::move(y));
  }
  std::sort(corners.begin(), corners.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Rational area;
  Rational covered_y;
  for (const auto& [x, y] : corners) {
    if (y > covered_y) {
      area += x * (y - covered_y);
      covered_y = y;
    }
  }
  return area;
}

DeprivationReport deprivation(const WelfareRepresentation& before, const WelfareRepresentation& after) {
  if (before.dimensions.size() != after.dimensions.size()) {
    throw Error(ErrorCode::DimensionMismatch, "welfare representations have different dimension counts");
  }
  const std::size_t dims = before.dimensions.size();
  auto b = before.beings();
  auto a = after.beings();
  for (const auto* set : {&b, &a}) {
    for (const auto& p : *set) {
      if (p.values.size() != dims) throw Error(ErrorCode::DimensionMismatch, "point dimension mismatch");
    }
  }

  DeprivationReport report;
  report.before = before;
  report.after = after;
  for (const auto& p : b) {
    bool present = std::find(a.begin(), a.end(), p) != a.end();
    bool superseded = std::any_of(a.begin(), a.end(), [&](const BeingsPoint& q) { return dominates_point(q, p); });
    if (!present && !superseded) report.lost_points.push_back(p);
  }
  BeingsPoint ideal_before = ideal_point(b, dims);
  BeingsPoint ideal_after = ideal_point(a, dims);
  for (std::size_t k = 0; k < dims; ++k) {
    report.ideal_point_drop.push_back(max(Rational(ideal_before.values[k] - ideal_after.values[k]), Rational(0)));
  }
  if (dims == 2) {
    report.dominated_region_shrink_2d =
        dominated_area_2d(b, ideal_before) - dominated_area_2d(a, ideal_before);
  }
  return report;
}

}  // namespace capscope
