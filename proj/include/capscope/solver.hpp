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

// Exact multi-objective integer solver: an LP-based branch and bound for one
// objective, epsilon-constraint enumeration of bi-objective frontiers, and
// an exhaustive enumeration oracle.

#ifndef CAPSCOPE_SOLVER_HPP_
#define CAPSCOPE_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "capscope/error.hpp"
#include "capscope/ilp.hpp"
#include "capscope/model.hpp"

namespace capscope {

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  Rational objective_value;
  Doings witness;
  std::vector<std::int64_t> assignment;
  std::uint64_t nodes = 0;
};

enum class FrontierMethod { EpsilonConstraint, Exhaustive };

inline constexpr std::uint64_t kDefaultNodeLimit = 200'000;
inline constexpr std::uint64_t kDefaultSearchCap = 20'000'000;

struct FrontierOptions {
  FrontierMethod method = FrontierMethod::EpsilonConstraint;
  std::uint64_t node_limit = kDefaultNodeLimit;  // per single-objective solve
  bool dedupe = true;
  std::uint64_t search_cap = kDefaultSearchCap;  // exhaustive method only
  bool parallel = true;                          // exhaustive method only
};

/// Raised when branch and bound exhausts its node budget. Carries the best
/// incumbent (solve_single) or the frontier points found so far.
class NodeLimitError : public Error {
 public:
  NodeLimitError(std::string message, std::optional<SolveResult> incumbent,
                 WelfareRepresentation partial = {})
      : Error(ErrorCode::NodeLimitExceeded, std::move(message)),
        incumbent_(std::move(incumbent)),
        partial_(std::move(partial)) {}

  const std::optional<SolveResult>& incumbent() const { return incumbent_; }
  const WelfareRepresentation& partial() const { return partial_; }

 private:
  std::optional<SolveResult> incumbent_;
  WelfareRepresentation partial_;
};

/// Maximizes one objective exactly. Branches on the first fractional
/// variable in declaration order, up branch first.
SolveResult solve_single(const IlpInstance& ilp, std::size_t objective_index,
                         std::span<const IlpConstraint> extra = {},
                         std::uint64_t node_limit = kDefaultNodeLimit);

/// Lexicographically smallest feasible assignment (declaration order) under
/// the extra constraints, or nullopt if none exists.
std::optional<std::vector<std::int64_t>> lexmin_assignment(const IlpInstance& ilp,
                                                           std::span<const IlpConstraint> extra,
                                                           std::uint64_t node_limit = kDefaultNodeLimit);

/// Exact Pareto frontier (maximization). EpsilonConstraint requires exactly
/// two objectives and reports alternates_count = 1 (a lower bound).
WelfareRepresentation pareto_frontier(const IlpInstance& ilp, const FrontierOptions& options = {});

/// Every distinct feasible objective vector with its lexicographically
/// smallest witness and the number of assignments attaining it.
WelfareRepresentation enumerate_beings(const IlpInstance& ilp, const FrontierOptions& options = {});

/// Oracle: enumerate_beings followed by the non-dominated filter.
WelfareRepresentation exhaustive_frontier(const IlpInstance& ilp, const FrontierOptions& options = {});

/// Keeps exactly the points no other point weakly dominates with a
/// difference; duplicates collapse; lexicographically decreasing output.
/// Throws Error(DimensionMismatch).
std::vector<BeingsPoint> filter_nondominated(std::span<const BeingsPoint> points);

}  // namespace capscope

#endif  // CAPSCOPE_SOLVER_HPP_
