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

#include "capscope/model.hpp"

#include <algorithm>
#include <set>

#include "capscope/error.hpp"

namespace capscope {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnresolvableScenario: return "UnresolvableScenario";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
    case ErrorCode::InfeasibleBounds: return "InfeasibleBounds";
    case ErrorCode::UnboundedVariable: return "UnboundedVariable";
    case ErrorCode::NodeLimitExceeded: return "NodeLimitExceeded";
    case ErrorCode::TooManyObjectives: return "TooManyObjectives";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCitizen: return "UnknownCitizen";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

std::string_view to_string(CommonKind kind) {
  return kind == CommonKind::Utilised ? "utilised" : "consumable";
}

std::string_view to_string(TravelMode mode) {
  return mode == TravelMode::Road ? "road" : "public_transport";
}

std::string_view to_string(VariableKind kind) {
  return kind == VariableKind::Binary ? "binary" : "integer";
}

namespace {

template <typename Entries>
auto find_by_id(Entries& entries, std::string_view id) -> decltype(&entries.front()) {
  auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.id == id; });
  return it == entries.end() ? nullptr : &*it;
}

template <typename Entries>
std::vector<std::string> collect_ids(const Entries& entries) {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

}  // namespace

const ResourceEntry* ResourceVector::find(std::string_view id) const { return find_by_id(entries, id); }
ResourceEntry* ResourceVector::find(std::string_view id) { return find_by_id(entries, id); }
std::vector<std::string> ResourceVector::ids() const { return collect_ids(entries); }

const CommonEntry* CommonsState::find(std::string_view id) const { return find_by_id(entries, id); }
CommonEntry* CommonsState::find(std::string_view id) { return find_by_id(entries, id); }
std::vector<std::string> CommonsState::ids() const { return collect_ids(entries); }

std::vector<std::string> CityModel::action_ids() const {
  std::vector<std::string> out;
  out.reserve(edges.size() + activities.size());
  for (const auto& e : edges) out.push_back(e.id);
  for (const auto& a : activities) out.push_back(a.id);
  return out;
}

const Vertex* CityModel::find_vertex(std::string_view id) const { return find_by_id(vertices, id); }
const Edge* CityModel::find_edge(std::string_view id) const { return find_by_id(edges, id); }
const Activity* CityModel::find_activity(std::string_view id) const { return find_by_id(activities, id); }

ActionMatrix::ActionMatrix(std::vector<std::string> rows, std::vector<std::string> columns)
    : rows_(std::move(rows)), columns_(std::move(columns)), values_(rows_.size() * columns_.size()) {}

std::optional<std::size_t> ActionMatrix::row_index(std::string_view id) const {
  auto it = std::find(rows_.begin(), rows_.end(), id);
  if (it == rows_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

std::optional<std::size_t> ActionMatrix::column_index(std::string_view id) const {
  auto it = std::find(columns_.begin(), columns_.end(), id);
  if (it == columns_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns_.begin());
}

bool ActionMatrix::set(std::string_view row, std::string_view column, const Rational& value) {
  auto r = row_index(row);
  auto c = column_index(column);
  if (!r || !c) return false;
  at(*r, *c) = value;
  return true;
}

namespace {

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ConversionMatrix::ConversionMatrix(std::vector<std::string> actions,
                                   std::vector<std::string> resource_ids,
                                   std::vector<std::string> common_ids)
    : ActionMatrix(std::move(actions), concat(resource_ids, common_ids)),
      resource_count_(resource_ids.size()) {}

std::int64_t Doings::count(std::string_view action) const {
  auto it = counts.find(std::string(action));
  return it == counts.end() ? 0 : it->second;
}

Doings& Doings::operator+=(const Doings& other) {
  for (const auto& [id, n] : other.counts) counts[id] += n;
  std::erase_if(counts, [](const auto& kv) { return kv.second == 0; });
  return *this;
}

Doings Doings::scaled(std::int64_t factor) const {
  Doings out;
  if (factor == 0) return out;
  for (const auto& [id, n] : counts) out.counts[id] = n * factor;
  return out;
}

bool lex_less(const BeingsPoint& a, const BeingsPoint& b) {
  return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(),
                                      b.values.end());
}

std::string to_string(const BeingsPoint& point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.values.size(); ++i) {
    if (i) out += ",";
    out += to_string(point.values[i]);
  }
  return out + ")";
}

std::vector<BeingsPoint> WelfareRepresentation::beings() const {
  std::vector<BeingsPoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.point);
  return out;
}

const Rational* Consumption::resource(std::string_view id) const {
  for (const auto& [k, v] : resources)
    if (k == id) return &v;
  return nullptr;
}

const Rational* Consumption::common(std::string_view id) const {
  for (const auto& [k, v] : commons)
    if (k == id) return &v;
  return nullptr;
}

namespace {

void check_counts(const Doings& doings, const ActionMatrix& matrix) {
  for (const auto& [action, n] : doings.counts) {
    if (!matrix.row_index(action)) {
      throw Error(ErrorCode::IndexMismatch, "action '" + action + "' is not a row of the matrix",
                  action);
    }
    if (n < 0) {
      throw Error(ErrorCode::IndexMismatch, "negative count for action '" + action + "'", action);
    }
  }
}

std::vector<Rational> weighted_column_sums(const Doings& doings, const ActionMatrix& matrix) {
  check_counts(doings, matrix);
  std::vector<Rational> sums(matrix.columns().size());
  for (const auto& [action, n] : doings.counts) {
    if (n == 0) continue;
    std::size_t row = *matrix.row_index(action);
    Rational count(static_cast<long>(n));
    for (std::size_t c = 0; c < sums.size(); ++c) sums[c] += count * matrix.at(row, c);
  }
  return sums;
}

}  // namespace

BeingsPoint beings_of(const Doings& doings, const TransformationMatrix& transformation) {
  return BeingsPoint{weighted_column_sums(doings, transformation)};
}

Consumption consumption_of(const Doings& doings, const ConversionMatrix& conversion) {
  auto sums = weighted_column_sums(doings, conversion);
  Consumption out;
  const auto& cols = conversion.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto& bucket = c < conversion.resource_count() ? out.resources : out.commons;
    bucket.emplace_back(cols[c], sums[c]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// validate_model

namespace {

class DiagnosticSink {
 public:
  void add(std::string code, std::string path, std::string message) {
    out_.push_back({std::move(code), std::move(path), std::move(message)});
  }
  std::vector<Diagnostic> take() { return std::move(out_); }

 private:
  std::vector<Diagnostic> out_;
};

std::string indexed(std::string_view prefix, std::size_t i) {
  return std::string(prefix) + "[" + std::to_string(i) + "]";
}

template <typename Items, typename Key>
void check_unique(const Items& items, Key key, std::string_view prefix, std::string_view code,
                  DiagnosticSink& sink) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& id = key(items[i]);
    if (!seen.insert(id).second) {
      sink.add(std::string(code), indexed(prefix, i), "duplicate id '" + id + "'");
    }
  }
}

void check_matrix_index(const std::vector<std::string>& actual, const std::vector<std::string>& expected,
                        const std::string& path, std::string_view what, DiagnosticSink& sink) {
  if (actual != expected) {
    sink.add("MatrixIndexMismatch", path,
             std::string(what) + " index set does not match the model");
  }
}

}  // namespace

std::vector<Diagnostic> validate_model(const CityModel& city, const CommonsState& commons,
                                       std::span<const CitizenState> citizens) {
  DiagnosticSink sink;
  auto self = [](const std::string& s) -> const std::string& { return s; };
  auto by_id = [](const auto& e) -> const std::string& { return e.id; };

  check_unique(city.dimensions, self, "dimensions", "DuplicateDimension", sink);
  check_unique(city.vertices, by_id, "city.vertices", "DuplicateVertex", sink);
  check_unique(commons.entries, by_id, "commons", "DuplicateCommon", sink);

  {
    auto actions = city.action_ids();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (!seen.insert(actions[i]).second) {
        bool is_edge = i < city.edges.size();
        sink.add("DuplicateAction",
                 is_edge ? indexed("city.edges", i) : indexed("city.activities", i - city.edges.size()),
                 "duplicate action id '" + actions[i] + "'");
      }
    }
  }

  for (std::size_t i = 0; i < city.edges.size(); ++i) {
    const auto& e = city.edges[i];
    auto path = indexed("city.edges", i);
    if (!city.find_vertex(e.from)) sink.add("UnknownVertex", path + ".from", "unknown vertex '" + e.from + "'");
    if (!city.find_vertex(e.to)) sink.add("UnknownVertex", path + ".to", "unknown vertex '" + e.to + "'");
    if (!commons.find(e.common_id)) {
      sink.add("MissingCommon", path + ".common", "edge references unknown common '" + e.common_id + "'");
    }
  }
  for (std::size_t i = 0; i < city.activities.size(); ++i) {
    const auto& a = city.activities[i];
    if (!city.find_vertex(a.vertex_id)) {
      sink.add("UnknownVertex", indexed("city.activities", i) + ".vertex",
               "unknown vertex '" + a.vertex_id + "'");
    }
  }

  for (std::size_t i = 0; i < commons.entries.size(); ++i) {
    const auto& c = commons.entries[i];
    auto path = indexed("commons", i);
    if (c.capacity < 0) sink.add("NegativeCapacity", path + ".capacity", "capacity must be >= 0");
    if (c.delta < 0) sink.add("NegativeDelta", path + ".delta", "delta must be >= 0");
    if (c.kind == CommonKind::Utilised) {
      if (c.capacity != 0 && c.capacity != 1) {
        sink.add("BadUtilisedCapacity", path + ".capacity",
                 "utilised common '" + c.id + "' must have capacity 0 or 1");
      }
    } else if (c.delta > c.capacity) {
      sink.add("DeltaExceedsCapacity", path + ".delta",
               "delta exceeds capacity for consumable common '" + c.id + "'");
    }
  }

  check_unique(citizens, by_id, "citizens",
               "DuplicateCitizen", sink);

  auto actions = city.action_ids();
  auto common_ids = commons.ids();
  for (std::size_t i = 0; i < citizens.size(); ++i) {
    const auto& c = citizens[i];
    auto path = indexed("citizens", i);
    const Vertex* home = city.find_vertex(c.home_vertex);
    if (!home) {
      sink.add("UnknownVertex", path + ".home", "unknown home vertex '" + c.home_vertex + "'");
    } else if (!home->home_allowed) {
      sink.add("HomeNotAllowed", path + ".home", "vertex '" + c.home_vertex + "' does not allow homes");
    }
    check_unique(c.resources.entries, by_id, path + ".resources", "DuplicateResource", sink);

    auto resource_ids = c.resources.ids();
    std::vector<std::string> expected_columns = resource_ids;
    expected_columns.insert(expected_columns.end(), common_ids.begin(), common_ids.end());
    check_matrix_index(c.conversion.rows(), actions, path + ".conversion", "conversion row", sink);
    check_matrix_index(c.conversion.columns(), expected_columns, path + ".conversion",
                       "conversion column", sink);
    if (c.conversion.resource_count() != resource_ids.size()) {
      sink.add("MatrixIndexMismatch", path + ".conversion", "conversion resource columns out of sync");
    }
    check_matrix_index(c.transformation.rows(), actions, path + ".transformation",
                       "transformation row", sink);
    check_matrix_index(c.transformation.columns(), city.dimensions, path + ".transformation",
                       "transformation column", sink);
    for (std::size_t k = 0; k < c.forbidden_actions.size(); ++k) {
      if (std::find(actions.begin(), actions.end(), c.forbidden_actions[k]) == actions.end()) {
        sink.add("UnknownAction", indexed(path + ".forbidden", k),
                 "forbidden action '" + c.forbidden_actions[k] + "' does not exist");
      }
    }
  }
  return sink.take();
}

}  // namespace capscope
