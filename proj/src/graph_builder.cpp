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

#include "capscope/graph_builder.hpp"

#include <algorithm>
#include <optional>

#include "capscope/error.hpp"

namespace capscope {

std::map<std::string, std::int64_t> upper_bounds(const CitizenState& citizen, const CityModel& city) {
  const ConversionMatrix& a = citizen.conversion;
  const auto actions = city.action_ids();

  // A resource is a budget only if nobody can earn more of it.
  std::vector<std::size_t> budgets;
  for (std::size_t r = 0; r < a.resource_count(); ++r) {
    bool earnable = false;
    for (std::size_t row = 0; row < a.rows().size(); ++row) earnable |= a.at(row, r) < 0;
    if (!earnable) budgets.push_back(r);
  }

  std::map<std::string, std::int64_t> out;
  for (const auto& action : actions) {
    auto row = a.row_index(action);
    if (!row) throw Error(ErrorCode::IndexMismatch, "no conversion row for '" + action + "'", action);
    std::optional<Integer> best;
    for (std::size_t r : budgets) {
      const Rational& use = a.at(*row, r);
      if (use <= 0) continue;
      const ResourceEntry* budget = citizen.resources.find(a.columns()[r]);
      Integer bound = floor_of(Rational(budget->quantity / use));
      if (!best || bound < *best) best = bound;
    }
    if (!best) {
      throw Error(ErrorCode::UnboundedVariable,
                  "action '" + action + "' consumes no non-earnable budget resource", action);
    }
    if (*best < 0) {
      throw Error(ErrorCode::InfeasibleBounds, "upper bound of '" + action + "' is negative", action);
    }
    out[action] = to_int64(*best);
  }
  return out;
}

namespace {

void push_constraint(IlpInstance& ilp, const LinExpr& lhs, ConstraintSense sense, Rational rhs,
                     std::string tag) {
  rhs -= lhs.constant();
  if (lhs.empty()) {
    bool holds = sense == ConstraintSense::Equal ? rhs == 0 : rhs >= 0;
    if (holds) return;
  }
  ilp.constraints.push_back({lhs.terms(), sense, std::move(rhs), std::move(tag)});
}

}  // namespace

IlpInstance compile_ilp(const CitizenState& citizen, const CityModel& city, const CommonsState& commons) {
  IlpInstance ilp;
  const auto actions = city.action_ids();
  const auto bounds = upper_bounds(citizen, city);
  const ConversionMatrix& conv = citizen.conversion;
  const TransformationMatrix& trans = citizen.transformation;

  // (a) variables, declaration order: edges, then activities.
  for (const auto& e : city.edges) {
    ilp.variables.push_back({e.id, VariableKind::BoundedInteger, bounds.at(e.id)});
  }
  for (const auto& act : city.activities) {
    std::int64_t ub = bounds.at(act.id);
    if (act.kind == VariableKind::Binary) ub = std::min<std::int64_t>(ub, 1);
    ilp.variables.push_back({act.id, act.kind, ub});
  }
  auto var_of = [&](const std::string& action) { return *ilp.variable_index(action); };
  auto conv_row = [&](std::size_t var) { return *conv.row_index(actions[var]); };

  for (const auto& f : citizen.forbidden_actions) {
    LinExpr x;
    x.add(var_of(f), 1);
    push_constraint(ilp, x, ConstraintSense::Equal, 0, "fix:" + f);
  }

  // (b) private resource budgets.
  for (std::size_t r = 0; r < conv.resource_count(); ++r) {
    LinExpr lhs;
    for (std::size_t v = 0; v < actions.size(); ++v) lhs.add(v, conv.at(conv_row(v), r));
    const std::string& id = conv.columns()[r];
    push_constraint(ilp, lhs, ConstraintSense::LessEqual, citizen.resources.find(id)->quantity,
                    "resource:" + id);
  }

  // (c) utilised and (d) consumable Commons.
  for (const auto& common : commons.entries) {
    std::size_t col = *conv.column_index(common.id);
    if (common.kind == CommonKind::Utilised) {
      for (std::size_t v = 0; v < actions.size(); ++v) {
        bool touches = conv.at(conv_row(v), col) != 0 ||
                       (v < city.edges.size() && city.edges[v].common_id == common.id);
        if (!touches) continue;
        LinExpr x;
        x.add(v, 1);
        Rational cap = Rational(static_cast<long>(ilp.variables[v].upper)) * common.capacity;
        push_constraint(ilp, x, ConstraintSense::LessEqual, cap, "common:" + common.id + ":" + actions[v]);
      }
    } else {
      LinExpr lhs;
      for (std::size_t v = 0; v < actions.size(); ++v) lhs.add(v, conv.at(conv_row(v), col));
      push_constraint(ilp, lhs, ConstraintSense::LessEqual, common.capacity - common.delta,
                      "common:" + common.id);
    }
  }

  // (e) flow conservation over both modes.
  for (const auto& vertex : city.vertices) {
    LinExpr balance;
    bool touched = false;
    for (std::size_t e = 0; e < city.edges.size(); ++e) {
      if (city.edges[e].to == vertex.id) {
        balance.add(e, 1);
        touched = true;
      }
      if (city.edges[e].from == vertex.id) {
        balance.add(e, -1);
        touched = true;
      }
    }
    if (touched && !balance.empty()) {
      push_constraint(ilp, balance, ConstraintSense::Equal, 0, "flow:" + vertex.id);
    }
  }

  // (f) activity gating; the citizen's home is exempt.
  for (const auto& vertex : city.vertices) {
    if (vertex.id == citizen.home_vertex) continue;
    LinExpr lhs;
    Integer big_m = 0;
    for (const auto& act : city.activities) {
      if (act.vertex_id != vertex.id) continue;
      std::size_t v = var_of(act.id);
      lhs.add(v, 1);
      big_m += ilp.variables[v].upper;
    }
    if (lhs.empty()) continue;
    for (std::size_t e = 0; e < city.edges.size(); ++e) {
      if (city.edges[e].to == vertex.id) lhs.add(e, Rational(-big_m));
    }
    push_constraint(ilp, lhs, ConstraintSense::LessEqual, 0, "gate:" + vertex.id);
  }

  // (g) one objective per welfare dimension.
  for (std::size_t h = 0; h < city.dimensions.size(); ++h) {
    LinExpr obj;
    auto col = trans.column_index(city.dimensions[h]);
    for (std::size_t v = 0; v < actions.size(); ++v) {
      obj.add(v, trans.at(*trans.row_index(actions[v]), *col));
    }
    ilp.objectives.push_back({city.dimensions[h], obj.terms()});
  }
  return ilp;
}

IlpInstance build_ilp(const CitizenState& citizen, const CityModel& city, const CommonsState& commons,
                      const Scenario& scenario, std::span<const Scenario> catalog) {
  ModelState state{city, commons, {citizen}};
  if (auto diags = validate_model(state.city, state.commons, state.citizens); !diags.empty()) {
    throw Error(ErrorCode::ValidationError, diags.front().message, diags.front().path);
  }
  ModelState applied = apply_scenario(state, scenario, catalog, {.skip_absent_citizens = true});
  return compile_ilp(applied.citizens.front(), applied.city, applied.commons);
}

}  // namespace capscope
