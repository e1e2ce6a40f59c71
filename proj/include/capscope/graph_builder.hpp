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

#ifndef CAPSCOPE_GRAPH_BUILDER_HPP_
#define CAPSCOPE_GRAPH_BUILDER_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "capscope/ilp.hpp"
#include "capscope/model.hpp"
#include "capscope/scenario.hpp"

namespace capscope {

/// Per-action count bound: the tightest floor(budget / consumption) over
/// resources no action of this citizen earns. Variable kind is not applied
/// here. Throws Error(UnboundedVariable) for an action consuming no such
/// resource and Error(InfeasibleBounds) when a bound would be negative.
std::map<std::string, std::int64_t> upper_bounds(const CitizenState& citizen, const CityModel& city);

/// Compiles an already-scenario-applied state. Constraint tags:
///   fix:<action>             forbidden action, x = 0
///   resource:<id>            sum A[a,r] x_a <= R_r
///   common:<id>:<action>     utilised common, x_a <= u_a * capacity
///   common:<id>              consumable common, sum A[a,k] x_a <= capacity - delta
///   flow:<vertex>            inbound - outbound = 0, both modes together
///   gate:<vertex>            activities <= M_v * inbound, non-home vertices only
IlpInstance compile_ilp(const CitizenState& citizen, const CityModel& city, const CommonsState& commons);

/// Applies `scenario` (resolving `extends` against `catalog`) and compiles.
IlpInstance build_ilp(const CitizenState& citizen, const CityModel& city, const CommonsState& commons,
                      const Scenario& scenario = {}, std::span<const Scenario> catalog = {});

}  // namespace capscope

#endif  // CAPSCOPE_GRAPH_BUILDER_HPP_
