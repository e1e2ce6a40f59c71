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

#include "capscope/compare.hpp"

#include <algorithm>
#include <optional>

#include "capscope/error.hpp"

namespace capscope {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::StrictlyBetter: return "StrictlyBetter";
    case Relation::StrictlyWorse: return "StrictlyWorse";
    case Relation::Equivalent: return "Equivalent";
    case Relation::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

Relation inverse(Relation relation) {
  switch (relation) {
    case Relation::StrictlyBetter: return Relation::StrictlyWorse;
    case Relation::StrictlyWorse: return Relation::StrictlyBetter;
    default: return relation;
  }
}

bool dominates_point(const BeingsPoint& b1, const BeingsPoint& b2) {
  if (b1.values.size() != b2.values.size()) {
    throw Error(ErrorCode::DimensionMismatch, "points " + to_string(b1) + " and " + to_string(b2) +
                                                  " have different dimensions");
  }
  bool strict = false;
  for (std::size_t k = 0; k < b1.values.size(); ++k) {
    if (b1.values[k] < b2.values[k]) return false;
    if (b1.values[k] > b2.values[k]) strict = true;
  }
  return strict;
}

namespace {

const BeingsPoint* dominator_of(const BeingsPoint& target, std::span<const BeingsPoint> pool) {
  for (const auto& p : pool)
    if (dominates_point(p, target)) return &p;
  return nullptr;
}

void check_dimensions(std::span<const BeingsPoint> a, std::span<const BeingsPoint> b) {
  std::optional<std::size_t> dims;
  for (auto set : {a, b}) {
    for (const auto& p : set) {
      if (!dims) dims = p.values.size();
      if (p.values.size() != *dims) throw Error(ErrorCode::DimensionMismatch, "mixed dimensions in point sets");
    }
  }
}

bool same_set(std::span<const BeingsPoint> a, std::span<const BeingsPoint> b) {
  auto contains = [](std::span<const BeingsPoint> s, const BeingsPoint& p) {
    return std::find(s.begin(), s.end(), p) != s.end();
  };
  return std::all_of(a.begin(), a.end(), [&](const auto& p) { return contains(b, p); }) &&
         std::all_of(b.begin(), b.end(), [&](const auto& p) { return contains(a, p); });
}

std::vector<std::pair<BeingsPoint, BeingsPoint>> certify(std::span<const BeingsPoint> winner,
                                                         std::span<const BeingsPoint> loser) {
  std::vector<std::pair<BeingsPoint, BeingsPoint>> out;
  for (const auto& p : loser) out.emplace_back(p, *dominator_of(p, winner));
  return out;
}

}  // namespace

bool set_succeeds(std::span<const BeingsPoint> qi, std::span<const BeingsPoint> qj) {
  check_dimensions(qi, qj);
  return std::all_of(qj.begin(), qj.end(), [&](const BeingsPoint& bj) { return dominator_of(bj, qi) != nullptr; });
}

bool set_succeeds(const WelfareRepresentation& qi, const WelfareRepresentation& qj) {
  auto a = qi.beings();
  auto b = qj.beings();
  return set_succeeds(a, b);
}

ComparisonOutcome classify(std::span<const BeingsPoint> qi, std::span<const BeingsPoint> qj) {
  check_dimensions(qi, qj);
  ComparisonOutcome out;
  if (same_set(qi, qj)) {
    out.relation = Relation::Equivalent;
    return out;
  }
  const bool forward = set_succeeds(qi, qj);
  const bool backward = set_succeeds(qj, qi);
  if (forward && !backward) {
    out.relation = Relation::StrictlyBetter;
    out.certificates = certify(qi, qj);
  } else if (backward && !forward) {
    out.relation = Relation::StrictlyWorse;
    out.certificates = certify(qj, qi);
  } else {
    out.relation = Relation::Incomparable;
  }
  return out;
}

ComparisonOutcome classify(const WelfareRepresentation& qi, const WelfareRepresentation& qj) {
  auto a = qi.beings();
  auto b = qj.beings();
  return classify(a, b);
}

}  // namespace capscope
