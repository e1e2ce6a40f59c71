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

#include "capscope/scenario.hpp"

#include <algorithm>
#include <set>

#include "capscope/error.hpp"

namespace capscope {

const CitizenState* ModelState::find_citizen(std::string_view id) const {
  for (const auto& c : citizens)
    if (c.id == id) return &c;
  return nullptr;
}

CitizenState* ModelState::find_citizen(std::string_view id) {
  for (auto& c : citizens)
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<Override> resolve_overrides(const Scenario& scenario, std::span<const Scenario> catalog) {
  std::vector<const Scenario*> chain{&scenario};
  std::set<std::string> seen{scenario.id};
  while (chain.back()->extends) {
    const std::string& parent = *chain.back()->extends;
    auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Scenario& s) { return s.id == parent; });
    if (it == catalog.end()) {
      throw Error(ErrorCode::UnresolvableScenario,
                  "scenario '" + chain.back()->id + "' extends unknown scenario '" + parent + "'",
                  "scenarios." + chain.back()->id + ".extends");
    }
    if (!seen.insert(it->id).second) {
      throw Error(ErrorCode::UnresolvableScenario, "cyclic extends chain at '" + it->id + "'",
                  "scenarios." + it->id + ".extends");
    }
    chain.push_back(&*it);
  }
  std::vector<Override> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    out.insert(out.end(), (*it)->overrides.begin(), (*it)->overrides.end());
  }
  return out;
}

Scenario compose(const Scenario& first, const Scenario& second) {
  Scenario out;
  out.id = first.id + "+" + second.id;
  out.label = first.label + " + " + second.label;
  out.overrides = first.overrides;
  out.overrides.insert(out.overrides.end(), second.overrides.begin(), second.overrides.end());
  return out;
}

std::string describe(const OverrideTarget& target) {
  struct Visitor {
    std::string operator()(const CommonCapacity& t) const { return "capacity(" + t.common_id + ")"; }
    std::string operator()(const CommonDelta& t) const { return "delta(" + t.common_id + ")"; }
    std::string operator()(const ResourceQuantity& t) const {
      return "resource(" + t.citizen_id + "," + t.resource_id + ")";
    }
    std::string operator()(const ConversionEntry& t) const {
      return "conversion(" + t.citizen_id + "," + t.action_id + "," + t.column_id + ")";
    }
    std::string operator()(const TransformationEntry& t) const {
      return "transformation(" + t.citizen_id + "," + t.action_id + "," + t.dimension_id + ")";
    }
    std::string operator()(const ForbidAction& t) const {
      return "forbid(" + t.citizen_id + "," + t.action_id + ")";
    }
  };
  return std::visit(Visitor{}, target);
}

std::string canonical_text(std::span<const Override> overrides) {
  std::string out;
  for (const auto& o : overrides) {
    out += describe(o.target);
    if (!std::holds_alternative<ForbidAction>(o.target)) out += "=" + to_string(o.value);
    out += ";";
  }
  return out;
}

namespace {

[[noreturn]] void unresolvable(const Override& o, const std::string& why) {
  throw Error(ErrorCode::UnresolvableScenario, describe(o.target) + ": " + why, describe(o.target));
}

CommonEntry& common_or_throw(ModelState& state, const Override& o, const std::string& id) {
  CommonEntry* c = state.commons.find(id);
  if (!c) unresolvable(o, "unknown common '" + id + "'");
  return *c;
}

void check_common(const CommonEntry& c, const Override& o) {
  if (c.capacity < 0 || c.delta < 0) {
    throw Error(ErrorCode::InvariantViolated, "negative capacity or delta for '" + c.id + "'",
                describe(o.target));
  }
  if (c.kind == CommonKind::Utilised && c.capacity != 0 && c.capacity != 1) {
    throw Error(ErrorCode::InvariantViolated, "utilised common '" + c.id + "' accepts capacity 0 or 1",
                describe(o.target));
  }
  if (c.kind == CommonKind::Consumable && c.delta > c.capacity) {
    throw Error(ErrorCode::InvariantViolated, "delta exceeds capacity for '" + c.id + "'",
                describe(o.target));
  }
}

class Applier {
 public:
  Applier(ModelState& state, ApplyOptions options) : state_(state), options_(options) {}

  void apply(const Override& o) {
    current_ = &o;
    std::visit(*this, o.target);
  }

  void operator()(const CommonCapacity& t) {
    CommonEntry& c = common_or_throw(state_, *current_, t.common_id);
    c.capacity = current_->value;
    check_common(c, *current_);
  }
  void operator()(const CommonDelta& t) {
    CommonEntry& c = common_or_throw(state_, *current_, t.common_id);
    if (c.kind != CommonKind::Consumable) unresolvable(*current_, "delta applies to consumable commons only");
    c.delta = current_->value;
    check_common(c, *current_);
  }
  void operator()(const ResourceQuantity& t) {
    CitizenState* c = citizen(t.citizen_id);
    if (!c) return;
    ResourceEntry* r = c->resources.find(t.resource_id);
    if (!r) unresolvable(*current_, "unknown resource '" + t.resource_id + "'");
    r->quantity = current_->value;
  }
  void operator()(const ConversionEntry& t) {
    CitizenState* c = citizen(t.citizen_id);
    if (!c) return;
    if (!c->conversion.set(t.action_id, t.column_id, current_->value)) {
      unresolvable(*current_, "unknown conversion cell");
    }
  }
  void operator()(const TransformationEntry& t) {
    CitizenState* c = citizen(t.citizen_id);
    if (!c) return;
    if (!c->transformation.set(t.action_id, t.dimension_id, current_->value)) {
      unresolvable(*current_, "unknown transformation cell");
    }
  }
  void operator()(const ForbidAction& t) {
    CitizenState* c = citizen(t.citizen_id);
    if (!c) return;
    if (!c->conversion.row_index(t.action_id)) unresolvable(*current_, "unknown action '" + t.action_id + "'");
    auto& f = c->forbidden_actions;
    if (std::find(f.begin(), f.end(), t.action_id) == f.end()) f.push_back(t.action_id);
  }

 private:
  CitizenState* citizen(const std::string& id) {
    CitizenState* c = state_.find_citizen(id);
    if (!c && !options_.skip_absent_citizens) unresolvable(*current_, "unknown citizen '" + id + "'");
    return c;
  }

  ModelState& state_;
  ApplyOptions options_;
  const Override* current_ = nullptr;
};

}  // namespace

ModelState apply_scenario(const ModelState& base, const Scenario& scenario,
                          std::span<const Scenario> catalog, ApplyOptions options) {
  auto overrides = resolve_overrides(scenario, catalog);
  ModelState out = base;
  Applier applier(out, options);
  for (const auto& o : overrides) applier.apply(o);
  return out;
}

}  // namespace capscope
