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

// Scenarios are named lists of parameter overrides applied to the present
// state. Damage to a Commons, a tax, a toll or a closed facility are all
// expressed as overrides of capacities, deltas, resources or matrix entries.

#ifndef CAPSCOPE_SCENARIO_HPP_
#define CAPSCOPE_SCENARIO_HPP_

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "capscope/model.hpp"

namespace capscope {

struct CommonCapacity {
  std::string common_id;
  bool operator==(const CommonCapacity&) const = default;
};
struct CommonDelta {
  std::string common_id;
  bool operator==(const CommonDelta&) const = default;
};
struct ResourceQuantity {
  std::string citizen_id;
  std::string resource_id;
  bool operator==(const ResourceQuantity&) const = default;
};
struct ConversionEntry {
  std::string citizen_id;
  std::string action_id;
  std::string column_id;
  bool operator==(const ConversionEntry&) const = default;
};
struct TransformationEntry {
  std::string citizen_id;
  std::string action_id;
  std::string dimension_id;
  bool operator==(const TransformationEntry&) const = default;
};
struct ForbidAction {
  std::string citizen_id;
  std::string action_id;
  bool operator==(const ForbidAction&) const = default;
};

using OverrideTarget = std::variant<CommonCapacity, CommonDelta, ResourceQuantity, ConversionEntry,
                                    TransformationEntry, ForbidAction>;

struct Override {
  OverrideTarget target;
  Rational value;  // unused by ForbidAction
  bool operator==(const Override&) const = default;
};

struct Scenario {
  std::string id;
  std::string label;
  std::optional<std::string> extends;
  std::vector<Override> overrides;
  bool operator==(const Scenario&) const = default;
};

/// City, Commons and every citizen: the present state the scenarios edit.
struct ModelState {
  CityModel city;
  CommonsState commons;
  std::vector<CitizenState> citizens;

  const CitizenState* find_citizen(std::string_view id) const;
  CitizenState* find_citizen(std::string_view id);
  bool operator==(const ModelState&) const = default;
};

/// Flattens the `extends` chain (ancestors first). Throws
/// Error(UnresolvableScenario) on an unknown parent or a cycle.
std::vector<Override> resolve_overrides(const Scenario& scenario, std::span<const Scenario> catalog);

/// s1 then s2.
Scenario compose(const Scenario& first, const Scenario& second);

struct ApplyOptions {
  // Citizen-targeted overrides naming a citizen absent from the state are
  // skipped instead of rejected (used when compiling a single citizen).
  bool skip_absent_citizens = false;
};

/// Applies overrides in declaration order to a copy of `base`. Throws
/// Error(UnresolvableScenario) for unknown targets and
/// Error(InvariantViolated) when the result breaks a Commons invariant.
ModelState apply_scenario(const ModelState& base, const Scenario& scenario,
                          std::span<const Scenario> catalog = {}, ApplyOptions options = {});

/// Stable text form of an override list; equal texts mean equal content.
std::string canonical_text(std::span<const Override> overrides);

std::string describe(const OverrideTarget& target);

}  // namespace capscope

#endif  // CAPSCOPE_SCENARIO_HPP_
