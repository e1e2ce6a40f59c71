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

#ifndef CAPSCOPE_LP_HPP_
#define CAPSCOPE_LP_HPP_

#include <vector>

#include "capscope/ilp.hpp"
#include "capscope/rational.hpp"

namespace capscope {

struct LpRow {
  Terms terms;
  ConstraintSense sense = ConstraintSense::LessEqual;
  Rational rhs;
};

/// max objective.x  s.t.  rows,  lower <= x <= upper (all finite).
struct LpProblem {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  std::vector<LpRow> rows;
  std::vector<Rational> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Exact two-phase bounded-variable primal simplex with Bland's rule.
LpResult solve_lp(const LpProblem& problem);

}  // namespace capscope

#endif  // CAPSCOPE_LP_HPP_
