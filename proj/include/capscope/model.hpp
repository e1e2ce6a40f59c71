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

// Domain types of the welfare model: a city graph whose edges and vertex
// activities are the actions ("Doings") a citizen can take, the citizen's
// private resources, the shared Commons, and the two per-citizen matrices
// that map actions to resource use (conversion) and to welfare (transformation).

#ifndef CAPSCOPE_MODEL_HPP_
#define CAPSCOPE_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "capscope/rational.hpp"

namespace capscope {

enum class CommonKind { Utilised, Consumable };
enum class TravelMode { Road, PublicTransport };
enum class VariableKind { Binary, BoundedInteger };

struct ResourceEntry {
  std::string id;
  Rational quantity;
  std::string unit;
  bool operator==(const ResourceEntry&) const = default;
};

struct ResourceVector {
  std::vector<ResourceEntry> entries;

  const ResourceEntry* find(std::string_view id) const;
  ResourceEntry* find(std::string_view id);
  std::vector<std::string> ids() const;
  bool operator==(const ResourceVector&) const = default;
};

struct CommonEntry {
  std::string id;
  CommonKind kind = CommonKind::Utilised;
  Rational capacity = 1;
  Rational delta = 0;  // consumption by everybody else; Consumable only
  bool operator==(const CommonEntry&) const = default;
};

struct CommonsState {
  std::vector<CommonEntry> entries;

  const CommonEntry* find(std::string_view id) const;
  CommonEntry* find(std::string_view id);
  std::vector<std::string> ids() const;
  bool operator==(const CommonsState&) const = default;
};

struct Vertex {
  std::string id;
  std::string label;
  bool home_allowed = true;
  bool operator==(const Vertex&) const = default;
};

struct Edge {
  std::string id;
  std::string from;
  std::string to;
  TravelMode mode = TravelMode::Road;
  std::string common_id;
  bool operator==(const Edge&) const = default;
};

struct Activity {
  std::string id;
  std::string vertex_id;
  VariableKind kind = VariableKind::Binary;
  bool operator==(const Activity&) const = default;
};

/// The shared city: opportunity vertices, travel edges and the activity
/// catalog. Actions are the edges followed by the activities, in
/// declaration order; that order is canonical everywhere downstream.
struct CityModel {
  std::vector<std::string> dimensions;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Activity> activities;

  std::vector<std::string> action_ids() const;
  const Vertex* find_vertex(std::string_view id) const;
  const Edge* find_edge(std::string_view id) const;
  const Activity* find_activity(std::string_view id) const;
  bool operator==(const CityModel&) const = default;
};

/// Dense action x column table of exact rationals. Missing entries are zero.
class ActionMatrix {
 public:
  ActionMatrix() = default;
  ActionMatrix(std::vector<std::string> rows, std::vector<std::string> columns);

  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }

  std::optional<std::size_t> row_index(std::string_view id) const;
  std::optional<std::size_t> column_index(std::string_view id) const;

  const Rational& at(std::size_t row, std::size_t column) const {
    return values_[row * columns_.size() + column];
  }
  Rational& at(std::size_t row, std::size_t column) {
    return values_[row * columns_.size() + column];
  }
  /// Returns false when either id is unknown.
  bool set(std::string_view row, std::string_view column, const Rational& value);

  bool operator==(const ActionMatrix&) const = default;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> columns_;
  std::vector<Rational> values_;
};

/// A^i. Columns are the citizen's resource ids followed by the common ids.
/// Negative entries are earnings.
class ConversionMatrix : public ActionMatrix {
 public:
  ConversionMatrix() = default;
  ConversionMatrix(std::vector<std::string> actions, std::vector<std::string> resource_ids,
                   std::vector<std::string> common_ids);

  std::size_t resource_count() const { return resource_count_; }
  bool operator==(const ConversionMatrix&) const = default;

 private:
  std::size_t resource_count_ = 0;
};

/// W^i. Columns are welfare dimensions in the model's canonical order.
class TransformationMatrix : public ActionMatrix {
 public:
  using ActionMatrix::ActionMatrix;
  bool operator==(const TransformationMatrix&) const = default;
};

struct CitizenState {
  std::string id;
  std::string home_vertex;
  ResourceVector resources;
  ConversionMatrix conversion;
  TransformationMatrix transformation;
  // Actions fixed to zero by a scenario.
  std::vector<std::string> forbidden_actions;
  bool operator==(const CitizenState&) const = default;
};

/// Action counts; absent actions count zero.
struct Doings {
  std::map<std::string, std::int64_t> counts;

  std::int64_t count(std::string_view action) const;
  Doings& operator+=(const Doings& other);
  friend Doings operator+(Doings a, const Doings& b) { return a += b; }
  Doings scaled(std::int64_t factor) const;
  bool operator==(const Doings&) const = default;
};

struct BeingsPoint {
  std::vector<Rational> values;
  bool operator==(const BeingsPoint&) const = default;
};

/// Lexicographic order on coordinates; used for canonical sorting.
bool lex_less(const BeingsPoint& a, const BeingsPoint& b);
std::string to_string(const BeingsPoint& point);

struct FrontierPoint {
  BeingsPoint point;
  Doings witness;
  std::uint64_t alternates_count = 1;
  bool operator==(const FrontierPoint&) const = default;
};

/// The non-dominated Beings of one citizen, sorted by decreasing first
/// coordinate (lexicographically decreasing).
struct WelfareRepresentation {
  std::vector<std::string> dimensions;
  std::vector<FrontierPoint> points;

  std::vector<BeingsPoint> beings() const;
  bool operator==(const WelfareRepresentation&) const = default;
};

struct Diagnostic {
  std::string code;
  std::string path;
  std::string message;
  bool operator==(const Diagnostic&) const = default;
};

/// Checks every structural invariant of the model jointly. Never throws.
std::vector<Diagnostic> validate_model(const CityModel& city, const CommonsState& commons,
                                       std::span<const CitizenState> citizens);

/// Welfare image of a Doings: sum over actions of count * W[action, h].
/// Throws Error(IndexMismatch) for actions missing from the matrix.
BeingsPoint beings_of(const Doings& doings, const TransformationMatrix& transformation);

struct Consumption {
  std::vector<std::pair<std::string, Rational>> resources;
  std::vector<std::pair<std::string, Rational>> commons;

  const Rational* resource(std::string_view id) const;
  const Rational* common(std::string_view id) const;
  bool operator==(const Consumption&) const = default;
};

/// Linear resource and Commons usage of a Doings; negative totals are net
/// earnings. Throws Error(IndexMismatch) for unknown actions.
Consumption consumption_of(const Doings& doings, const ConversionMatrix& conversion);

std::string_view to_string(CommonKind kind);
std::string_view to_string(TravelMode mode);
std::string_view to_string(VariableKind kind);

}  // namespace capscope

#endif  // CAPSCOPE_MODEL_HPP_
