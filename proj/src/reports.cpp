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

#include "capscope/reports.hpp"

#include "capscope/document.hpp"

namespace capscope {

using nlohmann::json;

json point_to_json(const BeingsPoint& point) {
  json out = json::array();
  for (const auto& v : point.values) out.push_back(rational_to_json(v));
  return out;
}

namespace {

json points_to_json(std::span<const BeingsPoint> points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(point_to_json(p));
  return out;
}

}  // namespace

json welfare_to_json(const WelfareRepresentation& welfare) {
  json out = {{"dimensions", welfare.dimensions},
              {"points", json::array()},
              {"witnesses", json::array()},
              {"alternates_count", json::array()}};
  for (const auto& fp : welfare.points) {
    out["points"].push_back(point_to_json(fp.point));
    json witness = json::object();
    for (const auto& [action, count] : fp.witness.counts)
      if (count != 0) witness[action] = count;
    out["witnesses"].push_back(std::move(witness));
    out["alternates_count"].push_back(fp.alternates_count);
  }
  return out;
}

json deprivation_to_json(const DeprivationReport& report) {
  json drop = json::array();
  for (const auto& v : report.ideal_point_drop) drop.push_back(rational_to_json(v));
  return {{"before", welfare_to_json(report.before)},
          {"after", welfare_to_json(report.after)},
          {"lost_points", points_to_json(report.lost_points)},
          {"ideal_point_drop", std::move(drop)},
          {"dominated_region_shrink_2d", report.dominated_region_shrink_2d
                                             ? rational_to_json(*report.dominated_region_shrink_2d)
                                             : json(nullptr)}};
}

json comparison_to_json(const ComparisonOutcome& outcome) {
  json certificates = json::array();
  for (const auto& [dominated, by] : outcome.certificates) {
    certificates.push_back({{"dominated", point_to_json(dominated)}, {"by", point_to_json(by)}});
  }
  return {{"relation", std::string(to_string(outcome.relation))}, {"certificates", std::move(certificates)}};
}

json error_to_json(const Error& error) {
  return {{"code", std::string(code_name(error.code()))}, {"message", error.what()}, {"path", error.path()}};
}

std::string frontier_csv_header(const WelfareRepresentation& welfare, std::span<const std::string> actions) {
  std::string line;
  for (const auto& d : welfare.dimensions) line += (line.empty() ? "" : ",") + d;
  for (const auto& a : actions) line += (line.empty() ? "" : ",") + a;
  return line;
}

std::vector<std::string> frontier_csv_rows(const WelfareRepresentation& welfare,
                                           std::span<const std::string> actions) {
  std::vector<std::string> rows;
  for (const auto& fp : welfare.points) {
    std::string line;
    for (const auto& v : fp.point.values) line += (line.empty() ? "" : ",") + to_string(v);
    for (const auto& a : actions) line += (line.empty() ? "" : ",") + std::to_string(fp.witness.count(a));
    rows.push_back(std::move(line));
  }
  return rows;
}

}  // namespace capscope
