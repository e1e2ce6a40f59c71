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

#include "capscope/document.hpp"

#include <algorithm>
#include <initializer_list>
#include <set>

namespace capscope {

using nlohmann::json;

SyntaxError::SyntaxError(std::string message, std::size_t line, std::size_t column)
    : Error(ErrorCode::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message,
            std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "validation failed";
  const auto& d = diagnostics.front();
  std::string msg = d.code + " at " + d.path + ": " + d.message;
  if (diagnostics.size() > 1) msg += " (+" + std::to_string(diagnostics.size() - 1) + " more)";
  return msg;
}

}  // namespace

ValidationFailure::ValidationFailure(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::ValidationError, summarize(diagnostics),
            diagnostics.empty() ? std::string() : diagnostics.front().path),
      diagnostics_(std::move(diagnostics)) {}

const Scenario* ModelDocument::find_scenario(std::string_view id) const {
  for (const auto& s : scenarios)
    if (s.id == id) return &s;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Exact JSON reading

namespace {

// Float literals are stored as strings behind this marker so their decimal
// text survives; readers of plain string fields reject the marker.
constexpr char kDecimalMarker = '\x01';

class ExactSax {
 public:
  explicit ExactSax(json& root) : dom_(root, false) {}

  bool null() { return dom_.null(); }
  bool boolean(bool v) { return dom_.boolean(v); }
  bool number_integer(json::number_integer_t v) { return dom_.number_integer(v); }
  bool number_unsigned(json::number_unsigned_t v) { return dom_.number_unsigned(v); }
  bool number_float(json::number_float_t, const json::string_t& text) {
    json::string_t marked = kDecimalMarker + text;
    return dom_.string(marked);
  }
  bool string(json::string_t& v) { return dom_.string(v); }
  bool binary(json::binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(json::string_t& k) { return dom_.key(k); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    position_ = position;
    message_ = ex.what();
    return false;
  }

  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  nlohmann::detail::json_sax_dom_parser<json> dom_;
  std::size_t position_ = 0;
  std::string message_;
};

}  // namespace

json parse_exact_json(std::string_view text) {
  json root;
  ExactSax sax(root);
  if (!json::sax_parse(text.begin(), text.end(), &sax)) {
    std::size_t offset = std::min(sax.position() > 0 ? sax.position() - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = sax.message();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw SyntaxError(msg, line, column);
  }
  return root;
}

json rational_to_json(const Rational& value) {
  if (is_integer(value) && mpz_fits_slong_p(value.get_num_mpz_t())) {
    return static_cast<std::int64_t>(mpz_get_si(value.get_num_mpz_t()));
  }
  return to_string(value);
}

Rational rational_from_json(const json& value, const std::string& path) {
  try {
    if (value.is_number_integer()) {
      return value.is_number_unsigned() ? Rational(std::to_string(value.get<std::uint64_t>()))
                                        : Rational(std::to_string(value.get<std::int64_t>()));
    }
    if (value.is_string()) {
      std::string text = value.get<std::string>();
      if (!text.empty() && text.front() == kDecimalMarker) text.erase(0, 1);
      return parse_rational(text);
    }
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::SchemaError, std::string("bad number: ") + e.what(), path);
  }
  throw Error(ErrorCode::SchemaError, "expected a number", path);
}

// ---------------------------------------------------------------------------
// Schema reading

namespace {

class Reader {
 public:
  static const json& object(const json& v, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!v.is_object()) throw Error(ErrorCode::SchemaError, "expected an object", path);
    for (const auto& [k, _] : v.items()) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw Error(ErrorCode::SchemaError, "unknown field '" + k + "'", path + "." + k);
      }
    }
    return v;
  }

  static const json& field(const json& obj, const std::string& path, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::SchemaError, "missing field '" + std::string(key) + "'", path);
    return *it;
  }

  static const json* optional(const json& obj, std::string_view key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  static std::string string(const json& v, const std::string& path) {
    if (!v.is_string()) throw Error(ErrorCode::SchemaError, "expected a string", path);
    std::string s = v.get<std::string>();
    if (!s.empty() && s.front() == kDecimalMarker) throw Error(ErrorCode::SchemaError, "expected a string", path);
    return s;
  }

  static std::string string_field(const json& obj, const std::string& path, std::string_view key) {
    return string(field(obj, path, key), path + "." + std::string(key));
  }

  static std::string string_or(const json& obj, const std::string& path, std::string_view key, std::string fallback) {
    const json* v = optional(obj, key);
    return v ? string(*v, path + "." + std::string(key)) : fallback;
  }

  static Rational rational_field(const json& obj, const std::string& path, std::string_view key) {
    return rational_from_json(field(obj, path, key), path + "." + std::string(key));
  }

  static bool bool_or(const json& obj, const std::string& path, std::string_view key, bool fallback) {
    const json* v = optional(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw Error(ErrorCode::SchemaError, "expected a boolean", path + "." + std::string(key));
    return v->get<bool>();
  }

  static const json& array(const json& v, const std::string& path) {
    if (!v.is_array()) throw Error(ErrorCode::SchemaError, "expected an array", path);
    return v;
  }

  template <typename Fn>
  static auto each(const json& obj, const std::string& path, std::string_view key, Fn fn) {
    std::vector<decltype(fn(json{}, std::string{}))> out;
    const std::string p = path + "." + std::string(key);
    const json& arr = array(field(obj, path, key), p);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(fn(arr[i], p + "[" + std::to_string(i) + "]"));
    return out;
  }

  template <typename E>
  static E choice(const json& obj, const std::string& path, std::string_view key,
                  std::initializer_list<std::pair<std::string_view, E>> options) {
    std::string s = string_field(obj, path, key);
    for (const auto& [name, value] : options)
      if (name == s) return value;
    throw Error(ErrorCode::SchemaError, "unexpected value '" + s + "'", path + "." + std::string(key));
  }
};

SparseRows read_rows(const json& v, const std::string& path) {
  if (!v.is_object()) throw Error(ErrorCode::SchemaError, "expected an object of rows", path);
  SparseRows rows;
  for (const auto& [action, cols] : v.items()) {
    const std::string row_path = path + "." + action;
    if (!cols.is_object()) throw Error(ErrorCode::SchemaError, "expected an object of columns", row_path);
    auto& row = rows[action];
    for (const auto& [col, value] : cols.items()) row[col] = rational_from_json(value, row_path + "." + col);
  }
  return rows;
}

Override read_override(const json& v, const std::string& path) {
  using R = Reader;
  const std::string target = R::string_field(R::object(v, path, {"target", "common", "citizen", "resource", "action",
                                                                 "column", "dimension", "value"}),
                                             path, "target");
  Override o;
  auto value = [&] { return R::rational_field(v, path, "value"); };
  if (target == "common_capacity") {
    o.target = CommonCapacity{R::string_field(v, path, "common")};
    o.value = value();
  } else if (target == "common_delta") {
    o.target = CommonDelta{R::string_field(v, path, "common")};
    o.value = value();
  } else if (target == "resource") {
    o.target = ResourceQuantity{R::string_field(v, path, "citizen"), R::string_field(v, path, "resource")};
    o.value = value();
  } else if (target == "conversion") {
    o.target = ConversionEntry{R::string_field(v, path, "citizen"), R::string_field(v, path, "action"),
                               R::string_field(v, path, "column")};
    o.value = value();
  } else if (target == "transformation") {
    o.target = TransformationEntry{R::string_field(v, path, "citizen"), R::string_field(v, path, "action"),
                                   R::string_field(v, path, "dimension")};
    o.value = value();
  } else if (target == "forbid") {
    o.target = ForbidAction{R::string_field(v, path, "citizen"), R::string_field(v, path, "action")};
  } else {
    throw Error(ErrorCode::SchemaError, "unknown override target '" + target + "'", path + ".target");
  }
  return o;
}

json override_to_json(const Override& o) {
  struct Visitor {
    const Rational& value;
    json operator()(const CommonCapacity& t) const {
      return {{"target", "common_capacity"}, {"common", t.common_id}, {"value", rational_to_json(value)}};
    }
    json operator()(const CommonDelta& t) const {
      return {{"target", "common_delta"}, {"common", t.common_id}, {"value", rational_to_json(value)}};
    }
    json operator()(const ResourceQuantity& t) const {
      return {{"target", "resource"}, {"citizen", t.citizen_id}, {"resource", t.resource_id},
              {"value", rational_to_json(value)}};
    }
    json operator()(const ConversionEntry& t) const {
      return {{"target", "conversion"}, {"citizen", t.citizen_id}, {"action", t.action_id},
              {"column", t.column_id}, {"value", rational_to_json(value)}};
    }
    json operator()(const TransformationEntry& t) const {
      return {{"target", "transformation"}, {"citizen", t.citizen_id}, {"action", t.action_id},
              {"dimension", t.dimension_id}, {"value", rational_to_json(value)}};
    }
    json operator()(const ForbidAction& t) const {
      return {{"target", "forbid"}, {"citizen", t.citizen_id}, {"action", t.action_id}};
    }
  };
  return std::visit(Visitor{o.value}, o.target);
}

json rows_to_json(const SparseRows& rows) {
  json out = json::object();
  for (const auto& [action, cols] : rows) {
    json row = json::object();
    for (const auto& [col, v] : cols) row[col] = rational_to_json(v);
    out[action] = std::move(row);
  }
  return out;
}

}  // namespace

Scenario scenario_from_json(const json& v, const std::string& path) {
  using R = Reader;
  R::object(v, path, {"id", "label", "extends", "overrides"});
  Scenario s;
  s.id = R::string_field(v, path, "id");
  s.label = R::string_or(v, path, "label", "");
  if (const json* e = R::optional(v, "extends")) s.extends = R::string(*e, path + ".extends");
  if (R::optional(v, "overrides")) s.overrides = R::each(v, path, "overrides", read_override);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json out = {{"id", s.id}, {"label", s.label}, {"overrides", json::array()}};
  if (s.extends) out["extends"] = *s.extends;
  for (const auto& o : s.overrides) out["overrides"].push_back(override_to_json(o));
  return out;
}

ModelDocument parse_document(std::string_view text) {
  using R = Reader;
  const json root = parse_exact_json(text);
  const std::string $ = "$";
  R::object(root, $, {"format_version", "welfare_dimensions", "city", "commons", "citizens", "scenarios"});

  ModelDocument doc;
  doc.format_version = R::string_field(root, $, "format_version");
  if (doc.format_version != kFormatVersion) {
    throw Error(ErrorCode::SchemaError,
                "unsupported format_version '" + doc.format_version + "', expected '" + std::string(kFormatVersion) + "'",
                "$.format_version");
  }
  doc.welfare_dimensions = R::each(root, $, "welfare_dimensions", R::string);

  const std::string city_path = "$.city";
  const json& city = R::object(R::field(root, $, "city"), city_path, {"vertices", "edges", "activities"});
  doc.vertices = R::each(city, city_path, "vertices", [](const json& v, const std::string& p) {
    R::object(v, p, {"id", "label", "home_allowed"});
    return Vertex{R::string_field(v, p, "id"), R::string_or(v, p, "label", ""), R::bool_or(v, p, "home_allowed", true)};
  });
  doc.edges = R::each(city, city_path, "edges", [](const json& v, const std::string& p) {
    R::object(v, p, {"id", "from", "to", "mode", "common"});
    return Edge{R::string_field(v, p, "id"), R::string_field(v, p, "from"), R::string_field(v, p, "to"),
                R::choice<TravelMode>(v, p, "mode",
                                      {{"road", TravelMode::Road}, {"public_transport", TravelMode::PublicTransport}}),
                R::string_field(v, p, "common")};
  });
  doc.activities = R::each(city, city_path, "activities", [](const json& v, const std::string& p) {
    R::object(v, p, {"id", "vertex", "kind"});
    return Activity{R::string_field(v, p, "id"), R::string_field(v, p, "vertex"),
                    R::choice<VariableKind>(v, p, "kind",
                                            {{"binary", VariableKind::Binary}, {"integer", VariableKind::BoundedInteger}})};
  });

  doc.commons = R::each(root, $, "commons", [](const json& v, const std::string& p) {
    R::object(v, p, {"id", "kind", "capacity", "delta"});
    CommonEntry c;
    c.id = R::string_field(v, p, "id");
    c.kind = R::choice<CommonKind>(v, p, "kind",
                                   {{"utilised", CommonKind::Utilised}, {"consumable", CommonKind::Consumable}});
    c.capacity = R::rational_field(v, p, "capacity");
    c.delta = R::optional(v, "delta") ? R::rational_field(v, p, "delta") : Rational(0);
    return c;
  });

  doc.citizens = R::each(root, $, "citizens", [](const json& v, const std::string& p) {
    R::object(v, p, {"id", "home", "resources", "conversion", "transformation"});
    CitizenSpec c;
    c.id = R::string_field(v, p, "id");
    c.home = R::string_field(v, p, "home");
    c.resources = R::each(v, p, "resources", [](const json& r, const std::string& rp) {
      R::object(r, rp, {"id", "quantity", "unit"});
      return ResourceEntry{R::string_field(r, rp, "id"), R::rational_field(r, rp, "quantity"),
                           R::string_or(r, rp, "unit", "")};
    });
    c.conversion = read_rows(R::field(v, p, "conversion"), p + ".conversion");
    c.transformation = read_rows(R::field(v, p, "transformation"), p + ".transformation");
    return c;
  });

  if (R::optional(root, "scenarios")) {
    doc.scenarios = R::each(root, $, "scenarios", [](const json& v, const std::string& p) {
      return scenario_from_json(v, p);
    });
  }
  return doc;
}

json to_json(const ModelDocument& doc) {
  json out;
  out["format_version"] = doc.format_version;
  out["welfare_dimensions"] = doc.welfare_dimensions;
  json city = {{"vertices", json::array()}, {"edges", json::array()}, {"activities", json::array()}};
  for (const auto& v : doc.vertices) {
    city["vertices"].push_back({{"id", v.id}, {"label", v.label}, {"home_allowed", v.home_allowed}});
  }
  for (const auto& e : doc.edges) {
    city["edges"].push_back(
        {{"id", e.id}, {"from", e.from}, {"to", e.to}, {"mode", to_string(e.mode)}, {"common", e.common_id}});
  }
  for (const auto& a : doc.activities) {
    city["activities"].push_back({{"id", a.id}, {"vertex", a.vertex_id}, {"kind", to_string(a.kind)}});
  }
  out["city"] = std::move(city);
  out["commons"] = json::array();
  for (const auto& c : doc.commons) {
    out["commons"].push_back({{"id", c.id},
                              {"kind", to_string(c.kind)},
                              {"capacity", rational_to_json(c.capacity)},
                              {"delta", rational_to_json(c.delta)}});
  }
  out["citizens"] = json::array();
  for (const auto& c : doc.citizens) {
    json resources = json::array();
    for (const auto& r : c.resources) {
      resources.push_back({{"id", r.id}, {"quantity", rational_to_json(r.quantity)}, {"unit", r.unit}});
    }
    out["citizens"].push_back({{"id", c.id},
                               {"home", c.home},
                               {"resources", std::move(resources)},
                               {"conversion", rows_to_json(c.conversion)},
                               {"transformation", rows_to_json(c.transformation)}});
  }
  out["scenarios"] = json::array();
  for (const auto& s : doc.scenarios) out["scenarios"].push_back(scenario_to_json(s));
  return out;
}

std::string serialize_model(const ModelDocument& doc) {
  return to_json(doc).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Semantic layer

namespace {

const std::map<std::string, Rational>* row_for(const SparseRows& rows, const Edge* edge, const std::string& action) {
  if (auto it = rows.find(action); it != rows.end()) return &it->second;
  if (edge) {
    std::string_view pseudo = edge->mode == TravelMode::Road ? kRoadRow : kPublicTransportRow;
    if (auto it = rows.find(std::string(pseudo)); it != rows.end()) return &it->second;
  }
  return nullptr;
}

template <typename Matrix>
void fill(Matrix& m, const SparseRows& rows, const CityModel& city) {
  for (const auto& action : m.rows()) {
    const auto* row = row_for(rows, city.find_edge(action), action);
    if (!row) continue;
    for (const auto& [col, v] : *row) m.set(action, col, v);
  }
}

}  // namespace

ModelState to_state(const ModelDocument& doc) {
  ModelState state;
  state.city.dimensions = doc.welfare_dimensions;
  state.city.vertices = doc.vertices;
  state.city.edges = doc.edges;
  state.city.activities = doc.activities;
  state.commons.entries = doc.commons;
  const auto actions = state.city.action_ids();
  const auto common_ids = state.commons.ids();
  for (const auto& spec : doc.citizens) {
    CitizenState c;
    c.id = spec.id;
    c.home_vertex = spec.home;
    c.resources.entries = spec.resources;
    c.conversion = ConversionMatrix(actions, c.resources.ids(), common_ids);
    c.transformation = TransformationMatrix(actions, doc.welfare_dimensions);
    fill(c.conversion, spec.conversion, state.city);
    fill(c.transformation, spec.transformation, state.city);
    state.citizens.push_back(std::move(c));
  }
  return state;
}

std::vector<Diagnostic> validate_document(const ModelDocument& doc) {
  std::vector<Diagnostic> out;
  ModelState state = to_state(doc);
  const auto actions = state.city.action_ids();
  auto is_row = [&](const std::string& key) {
    return key == kRoadRow || key == kPublicTransportRow ||
           std::find(actions.begin(), actions.end(), key) != actions.end();
  };

  for (std::size_t i = 0; i < doc.citizens.size(); ++i) {
    const auto& spec = doc.citizens[i];
    const std::string path = "citizens[" + std::to_string(i) + "]";
    const auto& citizen = state.citizens[i];
    for (const auto& [action, cols] : spec.conversion) {
      if (!is_row(action)) out.push_back({"UnknownAction", path + ".conversion." + action, "unknown action '" + action + "'"});
      for (const auto& [col, _] : cols) {
        if (!citizen.conversion.column_index(col)) {
          out.push_back({"UnknownColumn", path + ".conversion." + action + "." + col,
                         "'" + col + "' is neither a resource of this citizen nor a common"});
        }
      }
    }
    for (const auto& [action, cols] : spec.transformation) {
      if (!is_row(action)) {
        out.push_back({"UnknownAction", path + ".transformation." + action, "unknown action '" + action + "'"});
      }
      for (const auto& [col, _] : cols) {
        if (!citizen.transformation.column_index(col)) {
          out.push_back({"UnknownDimension", path + ".transformation." + action + "." + col,
                         "unknown welfare dimension '" + col + "'"});
        }
      }
    }
  }

  auto model = validate_model(state.city, state.commons, state.citizens);
  out.insert(out.end(), model.begin(), model.end());
  if (!model.empty()) return out;

  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.scenarios.size(); ++i) {
    const std::string path = "scenarios[" + std::to_string(i) + "]";
    if (!seen.insert(doc.scenarios[i].id).second) {
      out.push_back({"DuplicateScenario", path, "duplicate scenario id '" + doc.scenarios[i].id + "'"});
    }
    try {
      ModelState applied = apply_scenario(state, doc.scenarios[i], doc.scenarios);
      for (auto& d : validate_model(applied.city, applied.commons, applied.citizens)) {
        out.push_back({"InvariantViolated", path, d.message});
      }
    } catch (const Error& e) {
      out.push_back({std::string(code_name(e.code())), path, e.what()});
    }
  }
  return out;
}

ModelDocument parse_model(std::string_view text) {
  ModelDocument doc = parse_document(text);
  if (auto diags = validate_document(doc); !diags.empty()) throw ValidationFailure(std::move(diags));
  return doc;
}

}  // namespace capscope
