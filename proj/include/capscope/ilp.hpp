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

#ifndef CAPSCOPE_ILP_HPP_
#define CAPSCOPE_ILP_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "capscope/model.hpp"
#include "capscope/rational.hpp"

namespace capscope {

/// Sparse (variable index, coefficient) pairs, sorted by index, no zeros.
using Terms = std::vector<std::pair<std::size_t, Rational>>;

/// Accumulating linear expression; keeps canonical form on every update.
class LinExpr {
 public:
  LinExpr& add(std::size_t var, const Rational& coefficient);
  LinExpr& add_constant(const Rational& value);
  LinExpr& operator+=(const LinExpr& other);
  LinExpr scaled(const Rational& factor) const;

  const std::map<std::size_t, Rational>& coefficients() const { return coefficients_; }
  const Rational& constant() const { return constant_; }
  bool empty() const { return coefficients_.empty(); }
  Terms terms() const;

  bool operator==(const LinExpr&) const = default;

 private:
  std::map<std::size_t, Rational> coefficients_;
  Rational constant_;
};

enum class ConstraintSense { LessEqual, Equal };

struct IlpVariable {
  std::string id;
  VariableKind kind = VariableKind::BoundedInteger;
  std::int64_t upper = 0;  // lower bound is always 0
  bool operator==(const IlpVariable&) const = default;
};

struct IlpConstraint {
  Terms terms;
  ConstraintSense sense = ConstraintSense::LessEqual;
  Rational rhs;
  std::string tag;
  bool operator==(const IlpConstraint&) const = default;
};

struct IlpObjective {
  std::string dimension_id;
  Terms terms;  // maximized
  bool operator==(const IlpObjective&) const = default;
};

/// One citizen under one scenario, compiled to integer variables, linear
/// constraints and one maximized objective per welfare dimension.
struct IlpInstance {
  std::vector<IlpVariable> variables;
  std::vector<IlpConstraint> constraints;
  std::vector<IlpObjective> objectives;

  std::optional<std::size_t> variable_index(std::string_view id) const;
  const IlpConstraint* find_constraint(std::string_view tag) const;

  bool satisfies(std::span<const std::int64_t> assignment) const;
  std::vector<Rational> objective_values(std::span<const std::int64_t> assignment) const;
  Doings to_doings(std::span<const std::int64_t> assignment) const;

  /// Line-oriented canonical text: one variable, constraint or objective per
  /// line, in declaration order.
  std::string dump() const;

  bool operator==(const IlpInstance&) const = default;
};

Rational evaluate_terms(const Terms& terms, std::span<const std::int64_t> assignment);

}  // namespace capscope

#endif  // CAPSCOPE_ILP_HPP_
