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

// HTTP facade over one loaded model. Routes:
//
//   GET  /model      canonical model document
//   GET  /citizens   citizens with their resources
//   GET  /commons    commons with current capacities and deltas
//   POST /scenarios  create or replace a draft scenario
//   POST /solve      {citizen_id, scenario_id?, method?}; ?node_limit=N
//   POST /diff       {citizen_id, before_id, after_id}
//   POST /compare    {left_citizen, right_citizen, scenario_id?}
//   GET  /ui/...     static files of the explorer, when a directory is given
//
// Errors are JSON bodies {code, message, path}. The base model is never
// mutated; drafts are overlays resolved against the document's scenarios.

#ifndef CAPSCOPE_SERVICE_HPP_
#define CAPSCOPE_SERVICE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capscope/document.hpp"
#include "capscope/scenario_engine.hpp"

namespace capscope {

inline constexpr int kDefaultPort = 7343;
inline constexpr std::string_view kBaseScenarioId = "base";

struct Response {
  int status = 200;
  std::string body;
};

class Service {
 public:
  /// `doc` must already be valid (see parse_model).
  explicit Service(ModelDocument doc);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Transport-independent request handling; thread safe.
  Response handle(std::string_view method, std::string_view path, std::string_view body = {},
                  const std::map<std::string, std::string>& query = {}) const;

  /// Serves static files from `dir` under /ui.
  void set_ui_directory(std::string dir);

  /// Binds and serves until stop(); returns false if binding fails.
  /// A port of 0 picks a free port, reported by bound_port() once running.
  bool listen(const std::string& host, int port);
  void stop();
  int bound_port() const;
  void wait_until_ready() const;

 private:
  std::optional<Scenario> lookup_scenario(std::string_view id) const;
  Scenario resolved(std::string_view id) const;

  Response get_citizens() const;
  Response get_commons() const;
  Response post_scenarios(std::string_view body) const;
  Response post_solve(std::string_view body, const std::map<std::string, std::string>& query) const;
  Response post_diff(std::string_view body, const std::map<std::string, std::string>& query) const;
  Response post_compare(std::string_view body, const std::map<std::string, std::string>& query) const;

  ModelDocument doc_;
  std::string model_body_;
  Evaluator evaluator_;
  mutable std::mutex drafts_mutex_;
  mutable std::map<std::string, Scenario> drafts_;
  std::string ui_dir_;

  struct Server;
  std::unique_ptr<Server> server_;
};

}  // namespace capscope

#endif  // CAPSCOPE_SERVICE_HPP_
