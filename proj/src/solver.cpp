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

#include "capscope/solver.hpp"

#include <algorithm>

#include "capscope/kernels.hpp"
#include "capscope/lp.hpp"

namespace capscope {
namespace {

// Bounds after folding single-variable rows, plus the remaining rows.
struct Relaxation {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  std::vector<LpRow> rows;
  bool infeasible = false;
};

void absorb(Relaxation& r, const IlpConstraint& c) {
  if (c.terms.empty()) {
    bool holds = c.sense == ConstraintSense::Equal ? c.rhs == 0 : c.rhs >= 0;
    r.infeasible |= !holds;
    return;
  }
  if (c.terms.size() == 1) {
    const auto& [var, a] = c.terms.front();
    Rational limit = c.rhs / a;
    if (c.sense == ConstraintSense::Equal) {
      if (!is_integer(limit)) {
        r.infeasible = true;
        return;
      }
      r.lower[var] = max(r.lower[var], limit);
      r.upper[var] = min(r.upper[var], limit);
    } else if (a > 0) {
      r.upper[var] = min(r.upper[var], Rational(floor_of(limit)));
    } else {
      r.lower[var] = max(r.lower[var], Rational(ceil_of(limit)));
    }
    r.infeasible |= r.lower[var] > r.upper[var];
    return;
  }
  r.rows.push_back({c.terms, c.sense, c.rhs});
}

Relaxation relax(const IlpInstance& ilp, std::span<const IlpConstraint> extra) {
  Relaxation r;
  for (const auto& v : ilp.variables) {
    r.lower.emplace_back(0);
    r.upper.emplace_back(static_cast<long>(v.upper));
  }
  for (const auto& c : ilp.constraints) absorb(r, c);
  for (const auto& c : extra) absorb(r, c);
  return r;
}

std::vector<Rational> dense(const Terms& terms, std::size_t n) {
  std::vector<Rational> out(n);
  for (const auto& [var, c] : terms) out[var] = c;
  return out;
}

Terms scaled_terms(const Terms& terms, const Rational& factor) {
  Terms out;
  for (const auto& [var, c] : terms) out.emplace_back(var, c * factor);
  return out;
}

Integer terms_denominator(const Terms& terms) {
  std::vector<Rational> values;
  for (const auto& t : terms) values.push_back(t.second);
  return common_denominator(values);
}

std::vector<std::int64_t> to_assignment(const std::vector<Rational>& x) {
  std::vector<std::int64_t> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(to_int64(v.get_num()));
  return out;
}

// Activity-based bound propagation over integer variables. For a row
// sum a_j x_j <= b, each term is limited by b minus the least activity of
// the others. Returns false when the box contains no feasible point.
bool propagate_row(const Terms& terms, const Rational& rhs, std::vector<Rational>& lower,
                   std::vector<Rational>& upper, bool& changed) {
  Rational least;
  for (const auto& [var, a] : terms) least += a * (a > 0 ? lower[var] : upper[var]);
  if (least > rhs) return false;
  for (const auto& [var, a] : terms) {
    const Rational others = least - a * (a > 0 ? lower[var] : upper[var]);
    const Rational limit = (rhs - others) / a;
    if (a > 0) {
      Rational u(floor_of(limit));
      if (u < upper[var]) {
        upper[var] = u;
        changed = true;
      }
    } else {
      Rational l(ceil_of(limit));
      if (l > lower[var]) {
        lower[var] = l;
        changed = true;
      }
    }
    if (lower[var] > upper[var]) return false;
  }
  return true;
}

bool propagate(const std::vector<LpRow>& rows, std::vector<Rational>& lower, std::vector<Rational>& upper) {
  constexpr int kMaxPasses = 16;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (const auto& row : rows) {
      if (!propagate_row(row.terms, row.rhs, lower, upper, changed)) return false;
      if (row.sense == ConstraintSense::Equal &&
          !propagate_row(scaled_terms(row.terms, Rational(-1)), -row.rhs, lower, upper, changed)) {
        return false;
      }
    }
    if (!changed) break;
  }
  return true;
}

struct Incumbent {
  std::vector<std::int64_t> assignment;
  Integer value;
};

struct BnbOutcome {
  std::optional<Incumbent> best;
  std::uint64_t nodes = 0;
  bool exhausted = false;  // node limit reached
};

// Depth-first LP-based branch and bound maximizing an integral objective
// over the box [lower, upper] and `rows`. Branches on the first fractional
// variable in declaration order, up branch first.
BnbOutcome branch_and_bound(const std::vector<LpRow>& rows, std::vector<Rational> lower, std::vector<Rational> upper,
                            const std::vector<Rational>& objective, std::optional<Incumbent> incumbent,
                            std::uint64_t node_limit) {
  BnbOutcome out;
  out.best = std::move(incumbent);
  struct Node {
    std::vector<Rational> lower, upper;
  };
  std::vector<Node> stack;
  stack.push_back({std::move(lower), std::move(upper)});
  while (!stack.empty()) {
    if (out.nodes >= node_limit) {
      out.exhausted = true;
      return out;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++out.nodes;
    if (!propagate(rows, node.lower, node.upper)) continue;

    LpResult lp = solve_lp({node.lower, node.upper, rows, objective});
    if (lp.status != LpStatus::Optimal) continue;
    Integer bound = floor_of(lp.value);
    if (out.best && bound <= out.best->value) continue;

    auto fractional = std::find_if(lp.x.begin(), lp.x.end(), [](const Rational& v) { return !is_integer(v); });
    if (fractional == lp.x.end()) {
      out.best = Incumbent{to_assignment(lp.x), bound};
      continue;
    }
    auto j = static_cast<std::size_t>(fractional - lp.x.begin());
    Node down = node;
    down.upper[j] = floor_of(*fractional);
    Node up = std::move(node);
    up.lower[j] = ceil_of(*fractional);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }
  return out;
}

SolveResult make_result(const IlpInstance& ilp, std::vector<std::int64_t> assignment, Rational value,
                        std::uint64_t nodes) {
  SolveResult r;
  r.status = SolveStatus::Optimal;
  r.objective_value = std::move(value);
  r.witness = ilp.to_doings(assignment);
  r.assignment = std::move(assignment);
  r.nodes = nodes;
  return r;
}

void sort_decreasing(std::vector<FrontierPoint>& points) {
  std::sort(points.begin(), points.end(),
            [](const FrontierPoint& a, const FrontierPoint& b) { return lex_less(b.point, a.point); });
}

std::vector<std::string> dimension_ids(const IlpInstance& ilp) {
  std::vector<std::string> out;
  for (const auto& o : ilp.objectives) out.push_back(o.dimension_id);
  return out;
}

}  // namespace

SolveResult solve_single(const IlpInstance& ilp, std::size_t objective_index,
                         std::span<const IlpConstraint> extra, std::uint64_t node_limit) {
  if (objective_index >= ilp.objectives.size()) {
    throw Error(ErrorCode::IndexMismatch, "objective index out of range");
  }
  const std::size_t n = ilp.variables.size();
  const Terms& terms = ilp.objectives[objective_index].terms;
  // Integral objective coefficients make every integer solution's value an
  // integer, so a node is pruned once floor(bound) cannot beat the incumbent.
  const Integer scale = terms_denominator(terms);
  const std::vector<Rational> objective = dense(scaled_terms(terms, Rational(scale)), n);

  Relaxation root = relax(ilp, extra);
  SolveResult infeasible;
  if (root.infeasible) return infeasible;

  BnbOutcome outcome = branch_and_bound(root.rows, root.lower, root.upper, objective, std::nullopt, node_limit);
  if (outcome.exhausted) {
    std::optional<SolveResult> incumbent;
    if (outcome.best) {
      incumbent = make_result(ilp, outcome.best->assignment, Rational(outcome.best->value) / scale, outcome.nodes);
    }
    throw NodeLimitError("branch and bound exceeded " + std::to_string(node_limit) + " nodes", std::move(incumbent));
  }
  if (!outcome.best) {
    infeasible.nodes = outcome.nodes;
    return infeasible;
  }
  return make_result(ilp, outcome.best->assignment, Rational(outcome.best->value) / scale, outcome.nodes);
}

namespace {

// Fixes variables in declaration order to their least feasible value, each
// found by minimizing that variable with `seed` as the starting incumbent.
// A variable already at its propagated lower bound in the incumbent needs
// no search.
std::vector<std::int64_t> lexmin_from(const Relaxation& root, std::vector<std::int64_t> seed,
                                      std::uint64_t node_limit) {
  const std::size_t n = seed.size();
  std::vector<Rational> lower = root.lower;
  std::vector<Rational> upper = root.upper;
  std::uint64_t nodes = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!propagate(root.rows, lower, upper)) {
      throw Error(ErrorCode::InvariantViolated, "lexicographic search lost its incumbent");
    }
    if (Rational(static_cast<long>(seed[j])) != lower[j]) {
      std::vector<Rational> objective(n);
      objective[j] = -1;
      BnbOutcome outcome = branch_and_bound(root.rows, lower, upper, objective,
                                            Incumbent{seed, -Integer(static_cast<long>(seed[j]))},
                                            node_limit - std::min(nodes, node_limit));
      nodes += outcome.nodes;
      if (outcome.exhausted) {
        throw NodeLimitError("lexicographic witness search exceeded " + std::to_string(node_limit) + " nodes",
                             std::nullopt);
      }
      seed = outcome.best->assignment;
    }
    lower[j] = upper[j] = Rational(static_cast<long>(seed[j]));
  }
  return seed;
}

}  // namespace

std::optional<std::vector<std::int64_t>> lexmin_assignment(const IlpInstance& ilp,
                                                           std::span<const IlpConstraint> extra,
                                                           std::uint64_t node_limit) {
  Relaxation root = relax(ilp, extra);
  if (root.infeasible) return std::nullopt;
  const std::size_t n = ilp.variables.size();
  // Any feasible point seeds the search: maximize the zero objective.
  BnbOutcome first = branch_and_bound(root.rows, root.lower, root.upper, std::vector<Rational>(n), std::nullopt,
                                      node_limit);
  if (first.exhausted) {
    throw NodeLimitError("lexicographic witness search exceeded " + std::to_string(node_limit) + " nodes",
                         std::nullopt);
  }
  if (!first.best) return std::nullopt;
  return lexmin_from(root, first.best->assignment, node_limit);
}

WelfareRepresentation pareto_frontier(const IlpInstance& ilp, const FrontierOptions& options) {
  if (options.method == FrontierMethod::Exhaustive) return exhaustive_frontier(ilp, options);
  if (ilp.objectives.size() != 2) {
    throw Error(ErrorCode::TooManyObjectives, "epsilon-constraint needs exactly two objectives, got " +
                                                  std::to_string(ilp.objectives.size()));
  }

  // Work on integer-scaled objectives so the epsilon step is exactly 1.
  IlpInstance work = ilp;
  std::vector<Integer> scale;
  for (auto& o : work.objectives) {
    scale.push_back(terms_denominator(o.terms));
    o.terms = scaled_terms(o.terms, Rational(scale.back()));
  }
  const Terms& first = work.objectives[0].terms;
  const Terms& second = work.objectives[1].terms;
  const Terms neg_second = scaled_terms(second, Rational(-1));

  WelfareRepresentation out;
  out.dimensions = dimension_ids(ilp);
  std::optional<Rational> floor_second;
  try {
    while (true) {
      std::vector<IlpConstraint> extra;
      if (floor_second) extra.push_back({neg_second, ConstraintSense::LessEqual, -*floor_second, "eps"});
      SolveResult r1 = solve_single(work, 0, extra, options.node_limit);
      if (r1.status != SolveStatus::Optimal) break;

      // Second stage: best obj2 among solutions tied on obj1.
      extra.push_back({first, ConstraintSense::Equal, r1.objective_value, "lex"});
      SolveResult r2 = solve_single(work, 1, extra, options.node_limit);
      if (r2.status != SolveStatus::Optimal) {
        throw Error(ErrorCode::InvariantViolated, "second stage infeasible after a feasible first stage");
      }

      std::vector<IlpConstraint> pin{{first, ConstraintSense::Equal, r1.objective_value, "pin1"},
                                     {second, ConstraintSense::Equal, r2.objective_value, "pin2"}};
      Relaxation pinned = relax(work, pin);
      std::vector<std::int64_t> witness = lexmin_from(pinned, r2.assignment, options.node_limit);

      FrontierPoint p;
      p.point.values = {r1.objective_value / Rational(scale[0]), r2.objective_value / Rational(scale[1])};
      p.witness = ilp.to_doings(witness);
      out.points.push_back(std::move(p));
      floor_second = r2.objective_value + 1;
    }
  } catch (const NodeLimitError& e) {
    throw NodeLimitError(e.what(), e.incumbent(), out);
  }

  auto kept = filter_nondominated(out.beings());
  std::erase_if(out.points, [&](const FrontierPoint& p) {
    return std::find(kept.begin(), kept.end(), p.point) == kept.end();
  });
  sort_decreasing(out.points);
  return out;
}

WelfareRepresentation enumerate_beings(const IlpInstance& ilp, const FrontierOptions& options) {
  kernels::ScaledProgram program = kernels::scale_program(ilp);
  const std::uint64_t size = program.space_size();
  if (size > options.search_cap) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "search space of " + (size == UINT64_MAX ? std::string("more than 2^64") : std::to_string(size)) +
                    " assignments exceeds the cap of " + std::to_string(options.search_cap));
  }
  auto points = options.parallel ? kernels::enumerate_parallel(program) : kernels::enumerate_serial(program);

  WelfareRepresentation out;
  out.dimensions = dimension_ids(ilp);
  for (const auto& e : points) {
    FrontierPoint p;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
      p.point.values.push_back(make_rational(Integer(static_cast<long>(e.values[k])), program.objective_scale[k]));
    }
    p.witness = ilp.to_doings(kernels::decode_assignment(program, e.first_index));
    p.alternates_count = e.count;
    out.points.push_back(std::move(p));
  }
  sort_decreasing(out.points);
  return out;
}

WelfareRepresentation exhaustive_frontier(const IlpInstance& ilp, const FrontierOptions& options) {
  WelfareRepresentation all = enumerate_beings(ilp, options);
  auto beings = all.beings();
  std::span<const BeingsPoint> view(beings);
  auto keep = options.parallel ? kernels::nondominated_mask_parallel(view) : kernels::nondominated_mask_serial(view);
  WelfareRepresentation out;
  out.dimensions = std::move(all.dimensions);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) out.points.push_back(std::move(all.points[i]));
  }
  return out;
}

std::vector<BeingsPoint> filter_nondominated(std::span<const BeingsPoint> points) {
  for (const auto& p : points) {
    if (p.values.size() != points.front().values.size()) {
      throw Error(ErrorCode::DimensionMismatch, "points have differing dimension counts");
    }
  }
  auto keep = kernels::nondominated_mask_serial(points);
  std::vector<BeingsPoint> out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) out.push_back(points[i]);
  }
  std::sort(out.begin(), out.end(), [](const BeingsPoint& a, const BeingsPoint& b) { return lex_less(b, a); });
  return out;
}

}  // namespace capscope
