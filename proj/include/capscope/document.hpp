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

// The "capscope/1" model document: JSON syntax, UTF-8. Numbers are exact:
// JSON integers, JSON decimals (read from their literal text) and strings
// of the form "p/q" are all accepted. Canonical output sorts keys, writes
// integers as JSON integers and every other rational as a "p/q" string.
//
// Citizen matrices are sparse objects keyed by action id then column id.
// The pseudo-rows "@road" and "@public_transport" apply to every edge of
// that mode lacking an explicit row.

#ifndef CAPSCOPE_DOCUMENT_HPP_
#define CAPSCOPE_DOCUMENT_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "capscope/error.hpp"
#include "capscope/model.hpp"
#include "capscope/scenario.hpp"

namespace capscope {

inline constexpr std::string_view kFormatVersion = "capscope/1";
inline constexpr std::string_view kRoadRow = "@road";
inline constexpr std::string_view kPublicTransportRow = "@public_transport";

using SparseRows = std::map<std::string, std::map<std::string, Rational>>;

struct CitizenSpec {
  std::string id;
  std::string home;
  std::vector<ResourceEntry> resources;
  SparseRows conversion;
  SparseRows transformation;
  bool operator==(const CitizenSpec&) const = default;
};

struct ModelDocument {
  std::string format_version{kFormatVersion};
  std::vector<std::string> welfare_dimensions;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Activity> activities;
  std::vector<CommonEntry> commons;
  std::vector<CitizenSpec> citizens;
  std::vector<Scenario> scenarios;

  const Scenario* find_scenario(std::string_view id) const;
  bool operator==(const ModelDocument&) const = default;
};

/// Error(SyntaxError) with the 1-based line and column of the failure.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Error(ValidationError) carrying every diagnostic.
class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Syntax and schema only. Throws SyntaxError or Error(SchemaError) whose
/// path locates the offending element ("$.city.edges[2].mode").
ModelDocument parse_document(std::string_view text);

/// parse_document followed by validate_document; throws ValidationFailure.
ModelDocument parse_model(std::string_view text);

/// Every semantic problem: unknown matrix rows/columns, validate_model
/// findings on the built state, and scenarios that fail to resolve or apply.
std::vector<Diagnostic> validate_document(const ModelDocument& doc);

std::string serialize_model(const ModelDocument& doc);
nlohmann::json to_json(const ModelDocument& doc);

/// Dense in-memory state; pseudo-rows expanded, unknown keys ignored.
ModelState to_state(const ModelDocument& doc);

nlohmann::json rational_to_json(const Rational& value);
/// Accepts integers, decimal literals and "p/q" strings.
Rational rational_from_json(const nlohmann::json& value, const std::string& path);

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& value, const std::string& path = "$");

/// Parses JSON text with decimals kept exact (see rational_from_json).
nlohmann::json parse_exact_json(std::string_view text);

}  // namespace capscope

#endif  // CAPSCOPE_DOCUMENT_HPP_
