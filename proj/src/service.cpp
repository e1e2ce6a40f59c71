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

#include "capscope/service.hpp"

#include <initializer_list>
#include <utility>

#include "httplib.h"

#include "capscope/compare.hpp"
#include "capscope/reports.hpp"

namespace capscope {

using nlohmann::json;

struct Service::Server {
  httplib::Server http;
  int port = 0;
};

namespace {

std::string dump(const json& value) { return value.dump(2) + "\n"; }

Response reply(int status, const json& value) { return {status, dump(value)}; }

Response error_reply(int status, std::string code, std::string message, std::string path = {}) {
  return reply(status, {{"code", std::move(code)}, {"message", std::move(message)}, {"path", std::move(path)}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::SchemaError:
      return 400;
    case ErrorCode::UnknownCitizen:
      return 404;
    case ErrorCode::NodeLimitExceeded:
      return 409;
    default:
      return 422;
  }
}

const json& request_object(const json& body, std::initializer_list<std::string_view> allowed) {
  if (!body.is_object()) throw Error(ErrorCode::SchemaError, "request body must be an object", "$");
  for (const auto& [key, _] : body.items()) {
    bool known = false;
    for (auto a : allowed) known |= a == key;
    if (!known) throw Error(ErrorCode::SchemaError, "unknown field '" + key + "'", "$." + key);
  }
  return body;
}

std::string required_string(const json& body, std::string_view key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::SchemaError, "field '" + std::string(key) + "' must be a string", "$." + std::string(key));
  }
  return it->get<std::string>();
}

std::string optional_string(const json& body, std::string_view key, std::string fallback) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_string()) {
    throw Error(ErrorCode::SchemaError, "field '" + std::string(key) + "' must be a string", "$." + std::string(key));
  }
  return it->get<std::string>();
}

FrontierOptions options_from(const json& body, const std::map<std::string, std::string>& query) {
  FrontierOptions options;
  const std::string method = optional_string(body, "method", "eps");
  if (method == "eps") {
    options.method = FrontierMethod::EpsilonConstraint;
  } else if (method == "exhaustive") {
    options.method = FrontierMethod::Exhaustive;
  } else {
    throw Error(ErrorCode::SchemaError, "method must be 'eps' or 'exhaustive'", "$.method");
  }
  if (auto it = query.find("node_limit"); it != query.end()) {
    try {
      std::size_t used = 0;
      const auto limit = std::stoull(it->second, &used);
      if (used != it->second.size() || limit == 0) throw std::invalid_argument("node_limit");
      options.node_limit = limit;
    } catch (const std::exception&) {
      throw Error(ErrorCode::SchemaError, "node_limit must be a positive integer", "?node_limit");
    }
  }
  return options;
}

}  // namespace

Service::Service(ModelDocument doc)
    : doc_(std::move(doc)),
      model_body_(serialize_model(doc_)),
      evaluator_(to_state(doc_), doc_.scenarios),
      server_(std::make_unique<Server>()) {}

Service::~Service() = default;

std::optional<Scenario> Service::lookup_scenario(std::string_view id) const {
  if (id.empty() || id == kBaseScenarioId) return Scenario{std::string(kBaseScenarioId), "", std::nullopt, {}};
  {
    std::lock_guard lock(drafts_mutex_);
    if (auto it = drafts_.find(std::string(id)); it != drafts_.end()) return it->second;
  }
  if (const Scenario* s = doc_.find_scenario(id)) return *s;
  return std::nullopt;
}

// Drafts may extend document scenarios; the result is a flat override list
// so the evaluator's cache keys on content alone.
Scenario Service::resolved(std::string_view id) const {
  auto scenario = lookup_scenario(id);
  if (!scenario) {
    throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + std::string(id) + "'", std::string(id));
  }
  std::vector<Scenario> catalog = doc_.scenarios;
  {
    std::lock_guard lock(drafts_mutex_);
    for (const auto& [_, d] : drafts_) catalog.push_back(d);
  }
  Scenario flat;
  flat.id = scenario->id;
  flat.label = scenario->label;
  flat.overrides = resolve_overrides(*scenario, catalog);
  return flat;
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body,
                         const std::map<std::string, std::string>& query) const {
  try {
    auto route = [&](std::string_view m, std::string_view p) { return path == p && method == m; };
    if (route("GET", "/model")) return {200, model_body_};
    if (route("GET", "/citizens")) return get_citizens();
    if (route("GET", "/commons")) return get_commons();
    if (route("POST", "/scenarios")) return post_scenarios(body);
    if (route("POST", "/solve")) return post_solve(body, query);
    if (route("POST", "/diff")) return post_diff(body, query);
    if (route("POST", "/compare")) return post_compare(body, query);
    for (auto known : {"/model", "/citizens", "/commons", "/scenarios", "/solve", "/diff", "/compare"}) {
      if (path == known) return error_reply(405, "MethodNotAllowed", std::string(method) + " not allowed on " + known);
    }
    return error_reply(404, "NotFound", "no route for " + std::string(path), std::string(path));
  } catch (const NodeLimitError& e) {
    json out = error_to_json(e);
    out["incumbent"] = welfare_to_json(e.partial());
    if (e.incumbent()) {
      out["incumbent_value"] = rational_to_json(e.incumbent()->objective_value);
    }
    return reply(409, out);
  } catch (const Error& e) {
    return reply(status_for(e.code()), error_to_json(e));
  } catch (const std::exception& e) {
    return error_reply(500, "InternalError", e.what());
  }
}

Response Service::get_citizens() const {
  json out = json::array();
  for (const auto& c : doc_.citizens) {
    json resources = json::array();
    for (const auto& r : c.resources) {
      resources.push_back({{"id", r.id}, {"quantity", rational_to_json(r.quantity)}, {"unit", r.unit}});
    }
    out.push_back({{"id", c.id}, {"home", c.home}, {"resources", std::move(resources)}});
  }
  return reply(200, out);
}

Response Service::get_commons() const {
  json out = json::array();
  for (const auto& c : evaluator_.base().commons.entries) {
    out.push_back({{"id", c.id},
                   {"kind", std::string(to_string(c.kind))},
                   {"capacity", rational_to_json(c.capacity)},
                   {"delta", rational_to_json(c.delta)}});
  }
  return reply(200, out);
}

Response Service::post_scenarios(std::string_view body) const {
  Scenario draft = scenario_from_json(parse_exact_json(body), "$");
  if (draft.id.empty() || draft.id == kBaseScenarioId || doc_.find_scenario(draft.id)) {
    throw Error(ErrorCode::ValidationError, "draft id '" + draft.id + "' is reserved by the model", "$.id");
  }
  std::vector<Scenario> catalog = doc_.scenarios;
  {
    std::lock_guard lock(drafts_mutex_);
    for (const auto& [id, d] : drafts_)
      if (id != draft.id) catalog.push_back(d);
  }
  auto overrides = resolve_overrides(draft, catalog);
  ModelState applied = apply_scenario(evaluator_.base(), draft, catalog);
  if (auto diags = validate_model(applied.city, applied.commons, applied.citizens); !diags.empty()) {
    throw Error(ErrorCode::InvariantViolated, diags.front().message, diags.front().path);
  }
  {
    std::lock_guard lock(drafts_mutex_);
    drafts_.insert_or_assign(draft.id, draft);
  }
  json summary = json::array();
  json resolved_overrides = scenario_to_json(Scenario{draft.id, "", std::nullopt, overrides})["overrides"];
  for (const auto& o : overrides) summary.push_back(describe(o.target) + " = " + to_string(o.value));
  return reply(200, {{"id", draft.id}, {"overrides", std::move(resolved_overrides)}, {"summary", std::move(summary)}});
}

Response Service::post_solve(std::string_view body, const std::map<std::string, std::string>& query) const {
  const json request = parse_exact_json(body);
  request_object(request, {"citizen_id", "scenario_id", "method"});
  const std::string citizen = required_string(request, "citizen_id");
  const FrontierOptions options = options_from(request, query);
  const Scenario scenario = resolved(optional_string(request, "scenario_id", ""));
  return reply(200, welfare_to_json(*evaluator_.evaluate(citizen, scenario, options)));
}

Response Service::post_diff(std::string_view body, const std::map<std::string, std::string>& query) const {
  const json request = parse_exact_json(body);
  request_object(request, {"citizen_id", "before_id", "after_id", "method"});
  const std::string citizen = required_string(request, "citizen_id");
  const FrontierOptions options = options_from(request, query);
  const Scenario before = resolved(optional_string(request, "before_id", ""));
  const Scenario after = resolved(optional_string(request, "after_id", ""));
  auto b = evaluator_.evaluate(citizen, before, options);
  auto a = evaluator_.evaluate(citizen, after, options);
  return reply(200, deprivation_to_json(deprivation(*b, *a)));
}

Response Service::post_compare(std::string_view body, const std::map<std::string, std::string>& query) const {
  const json request = parse_exact_json(body);
  request_object(request, {"left_citizen", "right_citizen", "scenario_id", "method"});
  const std::string left = required_string(request, "left_citizen");
  const std::string right = required_string(request, "right_citizen");
  const FrontierOptions options = options_from(request, query);
  const Scenario scenario = resolved(optional_string(request, "scenario_id", ""));
  auto l = evaluator_.evaluate(left, scenario, options);
  auto r = evaluator_.evaluate(right, scenario, options);
  return reply(200, comparison_to_json(classify(*l, *r)));
}

void Service::set_ui_directory(std::string dir) { ui_dir_ = std::move(dir); }

bool Service::listen(const std::string& host, int port) {
  auto& http = server_->http;
  if (!ui_dir_.empty() && !http.set_mount_point("/ui", ui_dir_)) return false;
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    Response r = handle(req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  for (auto p : {"/model", "/citizens", "/commons", "/scenarios", "/solve", "/diff", "/compare"}) {
    http.Get(p, forward);
    http.Post(p, forward);
  }
  if (port == 0) {
    server_->port = http.bind_to_any_port(host);
    if (server_->port <= 0) return false;
  } else {
    if (!http.bind_to_port(host, port)) return false;
    server_->port = port;
  }
  return http.listen_after_bind();
}

void Service::stop() { server_->http.stop(); }

int Service::bound_port() const { return server_->port; }

void Service::wait_until_ready() const { server_->http.wait_until_ready(); }

}  // namespace capscope
