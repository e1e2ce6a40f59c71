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

// Ordinal comparison of capability sets. Q_i succeeds Q_j when every point
// of Q_j is strictly Pareto dominated by some point of Q_i.

#ifndef CAPSCOPE_COMPARE_HPP_
#define CAPSCOPE_COMPARE_HPP_

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "capscope/model.hpp"

namespace capscope {

enum class Relation { StrictlyBetter, StrictlyWorse, Equivalent, Incomparable };

std::string_view to_string(Relation relation);
Relation inverse(Relation relation);

struct ComparisonOutcome {
  Relation relation = Relation::Incomparable;
  // (dominated point, dominating witness); empty unless Strictly{Better,Worse}.
  std::vector<std::pair<BeingsPoint, BeingsPoint>> certificates;
};

/// b1 >= b2 componentwise and b1 != b2. Throws Error(DimensionMismatch).
bool dominates_point(const BeingsPoint& b1, const BeingsPoint& b2);

bool set_succeeds(std::span<const BeingsPoint> qi, std::span<const BeingsPoint> qj);
bool set_succeeds(const WelfareRepresentation& qi, const WelfareRepresentation& qj);

/// Equivalent iff the point sets are identical; otherwise Better/Worse when
/// exactly one direction of set_succeeds holds, else Incomparable.
ComparisonOutcome classify(std::span<const BeingsPoint> qi, std::span<const BeingsPoint> qj);
ComparisonOutcome classify(const WelfareRepresentation& qi, const WelfareRepresentation& qj);

}  // namespace capscope

#endif  // CAPSCOPE_COMPARE_HPP_
