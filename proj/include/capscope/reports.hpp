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

// Deterministic renderings of analysis results: JSON bodies shared by the
// CLI and the HTTP service, and the CSV point table.

#ifndef CAPSCOPE_REPORTS_HPP_
#define CAPSCOPE_REPORTS_HPP_

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "capscope/compare.hpp"
#include "capscope/error.hpp"
#include "capscope/model.hpp"
#include "capscope/scenario_engine.hpp"

namespace capscope {

nlohmann::json point_to_json(const BeingsPoint& point);

/// {dimensions, points: [[..]], witnesses: [{action: count}], alternates_count: [..]}
nlohmann::json welfare_to_json(const WelfareRepresentation& welfare);

/// {before, after, lost_points, ideal_point_drop, dominated_region_shrink_2d}
nlohmann::json deprivation_to_json(const DeprivationReport& report);

/// {relation, certificates: [{dominated, by}]}
nlohmann::json comparison_to_json(const ComparisonOutcome& outcome);

/// {code, message, path}
nlohmann::json error_to_json(const Error& error);

/// Header "<dimensions>,<actions>" then one row per point: coordinates
/// followed by the witness count of every action in `actions` order.
std::string frontier_csv_header(const WelfareRepresentation& welfare, std::span<const std::string> actions);
std::vector<std::string> frontier_csv_rows(const WelfareRepresentation& welfare,
                                           std::span<const std::string> actions);

}  // namespace capscope

#endif  // CAPSCOPE_REPORTS_HPP_
