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

// capscope: batch analysis of capability-set models.
//
//   capscope validate <file>
//   capscope frontier <file> --citizen ID [--scenario ID] [--method eps|exhaustive] [--out points.csv]
//   capscope diff <file> --citizen ID --before S1 --after S2
//   capscope compare <file> --left C1 --right C2 [--scenario S]
//   capscope serve <file> [--port N] [--host H] [--ui-dir DIR]
//
// Exit codes: 0 success, 2 invalid input (syntax, schema, validation,
// unknown ids, unresolvable scenarios), 3 solver limits, 1 anything else.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "capscope/document.hpp"
#include "capscope/reports.hpp"
#include "capscope/scenario_engine.hpp"
#include "capscope/service.hpp"
#include "capscope/solver.hpp"

namespace {

using capscope::Error;
using capscope::ErrorCode;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSolverLimit = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NodeLimitExceeded:
    case ErrorCode::SearchSpaceTooLarge:
    case ErrorCode::TooManyObjectives:
      return kExitSolverLimit;
    case ErrorCode::SyntaxError:
    case ErrorCode::SchemaError:
    case ErrorCode::ValidationError:
    case ErrorCode::UnresolvableScenario:
    case ErrorCode::InvariantViolated:
    case ErrorCode::UnknownCitizen:
    case ErrorCode::UnknownScenario:
      return kExitInvalid;
    default:
      return kExitOther;
  }
}

void print_error(const Error& e) {
  std::cerr << "error: " << capscope::code_name(e.code());
  if (!e.path().empty()) std::cerr << " at " << e.path();
  std::cerr << ": " << e.what() << "\n";
}

// An input file that cannot be opened; reported as invalid input.
struct UnreadableInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableInput("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

capscope::Scenario scenario_named(const capscope::ModelDocument& doc, const std::string& id) {
  if (id.empty() || id == capscope::kBaseScenarioId) return {};
  if (const auto* s = doc.find_scenario(id)) return *s;
  throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + id + "'", id);
}

capscope::FrontierOptions frontier_options(const std::string& method, std::uint64_t node_limit) {
  capscope::FrontierOptions options;
  options.method =
      method == "exhaustive" ? capscope::FrontierMethod::Exhaustive : capscope::FrontierMethod::EpsilonConstraint;
  options.node_limit = node_limit;
  return options;
}

struct Args {
  std::string file;
  std::string citizen;
  std::string scenario;
  std::string method = "eps";
  std::string out;
  std::string before;
  std::string after;
  std::string left;
  std::string right;
  std::string host = "127.0.0.1";
  std::string ui_dir;
  int port = capscope::kDefaultPort;
  std::uint64_t node_limit = capscope::kDefaultNodeLimit;
  bool json = false;
};

int run_validate(const Args& args) {
  auto doc = capscope::parse_document(read_file(args.file));
  auto diagnostics = capscope::validate_document(doc);
  for (const auto& d : diagnostics) std::cerr << d.code << " at " << d.path << ": " << d.message << "\n";
  if (!diagnostics.empty()) return kExitInvalid;
  std::cout << "ok: " << doc.citizens.size() << " citizens, " << doc.scenarios.size() << " scenarios\n";
  return kExitOk;
}

int run_frontier(const Args& args) {
  auto doc = capscope::parse_model(read_file(args.file));
  capscope::Evaluator evaluator(capscope::to_state(doc), doc.scenarios);
  auto welfare = evaluator.evaluate(args.citizen, scenario_named(doc, args.scenario),
                                    frontier_options(args.method, args.node_limit));
  if (args.json) {
    std::cout << capscope::welfare_to_json(*welfare).dump(2) << "\n";
  } else {
    const auto actions = evaluator.base().city.action_ids();
    for (const auto& row : capscope::frontier_csv_rows(*welfare, actions)) std::cout << row << "\n";
    if (!args.out.empty()) {
      std::ofstream out(args.out, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write '" + args.out + "'");
      out << capscope::frontier_csv_header(*welfare, actions) << "\n";
      for (const auto& row : capscope::frontier_csv_rows(*welfare, actions)) out << row << "\n";
    }
  }
  return kExitOk;
}

int run_diff(const Args& args) {
  auto doc = capscope::parse_model(read_file(args.file));
  capscope::Evaluator evaluator(capscope::to_state(doc), doc.scenarios);
  const auto options = frontier_options(args.method, args.node_limit);
  auto before = evaluator.evaluate(args.citizen, scenario_named(doc, args.before), options);
  auto after = evaluator.evaluate(args.citizen, scenario_named(doc, args.after), options);
  std::cout << capscope::deprivation_to_json(capscope::deprivation(*before, *after)).dump(2) << "\n";
  return kExitOk;
}

int run_compare(const Args& args) {
  auto doc = capscope::parse_model(read_file(args.file));
  capscope::Evaluator evaluator(capscope::to_state(doc), doc.scenarios);
  const auto options = frontier_options(args.method, args.node_limit);
  const auto scenario = scenario_named(doc, args.scenario);
  auto left = evaluator.evaluate(args.left, scenario, options);
  auto right = evaluator.evaluate(args.right, scenario, options);
  std::cout << capscope::comparison_to_json(capscope::classify(*left, *right)).dump(2) << "\n";
  return kExitOk;
}

int run_serve(const Args& args) {
  capscope::Service service(capscope::parse_model(read_file(args.file)));
  if (!args.ui_dir.empty()) service.set_ui_directory(args.ui_dir);
  std::cerr << "serving " << args.file << " on http://" << args.host << ":" << args.port << "\n";
  if (!service.listen(args.host, args.port)) {
    std::cerr << "error: cannot listen on " << args.host << ":" << args.port << "\n";
    return kExitOther;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capability-set modeling: frontiers, scenarios and comparisons"};
  app.require_subcommand(1);
  Args args;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--method", args.method, "Frontier method")
        ->check(CLI::IsMember({"eps", "exhaustive"}))
        ->capture_default_str();
    cmd->add_option("--node-limit", args.node_limit, "Branch-and-bound node budget per solve")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Check a model document");
  validate->add_option("file", args.file, "Model document")->required();

  auto* frontier = app.add_subcommand("frontier", "Welfare representation of one citizen");
  frontier->add_option("file", args.file, "Model document")->required();
  frontier->add_option("--citizen", args.citizen, "Citizen id")->required();
  frontier->add_option("--scenario", args.scenario, "Scenario id (default: present state)");
  frontier->add_option("--out", args.out, "Also write a CSV with a header row");
  frontier->add_flag("--json", args.json, "Print JSON instead of CSV rows");
  add_solver_flags(frontier);

  auto* diff = app.add_subcommand("diff", "Deprivation report between two scenarios");
  diff->add_option("file", args.file, "Model document")->required();
  diff->add_option("--citizen", args.citizen, "Citizen id")->required();
  diff->add_option("--before", args.before, "Scenario id, or 'base'")->required();
  diff->add_option("--after", args.after, "Scenario id, or 'base'")->required();
  add_solver_flags(diff);

  auto* compare = app.add_subcommand("compare", "Compare two citizens' capability sets");
  compare->add_option("file", args.file, "Model document")->required();
  compare->add_option("--left", args.left, "Citizen id")->required();
  compare->add_option("--right", args.right, "Citizen id")->required();
  compare->add_option("--scenario", args.scenario, "Scenario id (default: present state)");
  add_solver_flags(compare);

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API for one model");
  serve->add_option("file", args.file, "Model document")->required();
  serve->add_option("--port", args.port, "TCP port")->capture_default_str();
  serve->add_option("--host", args.host, "Bind address")->capture_default_str();
  serve->add_option("--ui-dir", args.ui_dir, "Directory served under /ui");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return run_validate(args);
    if (*frontier) return run_frontier(args);
    if (*diff) return run_diff(args);
    if (*compare) return run_compare(args);
    if (*serve) return run_serve(args);
  } catch (const capscope::ValidationFailure& e) {
    for (const auto& d : e.diagnostics()) {
      std::cerr << "error: " << d.code << " at " << d.path << ": " << d.message << "\n";
    }
    return kExitInvalid;
  } catch (const capscope::NodeLimitError& e) {
    print_error(e);
    std::cerr << "partial frontier: " << e.partial().points.size() << " points\n";
    return kExitSolverLimit;
  } catch (const Error& e) {
    print_error(e);
    return exit_code_for(e.code());
  } catch (const UnreadableInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
