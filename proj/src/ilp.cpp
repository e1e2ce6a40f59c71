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

#include "capscope/ilp.hpp"

#include <sstream>

namespace capscope {

LinExpr& LinExpr::add(std::size_t var, const Rational& coefficient) {
  if (coefficient == 0) return *this;
  auto [it, inserted] = coefficients_.try_emplace(var, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) coefficients_.erase(it);
  }
  return *this;
}

LinExpr& LinExpr::add_constant(const Rational& value) {
  constant_ += value;
  return *this;
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  for (const auto& [var, c] : other.coefficients_) add(var, c);
  constant_ += other.constant_;
  return *this;
}

LinExpr LinExpr::scaled(const Rational& factor) const {
  LinExpr out;
  if (factor == 0) return out;
  for (const auto& [var, c] : coefficients_) out.coefficients_.emplace(var, c * factor);
  out.constant_ = constant_ * factor;
  return out;
}

Terms LinExpr::terms() const {
  return Terms(coefficients_.begin(), coefficients_.end());
}

std::optional<std::size_t> IlpInstance::variable_index(std::string_view id) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].id == id) return i;
  return std::nullopt;
}

const IlpConstraint* IlpInstance::find_constraint(std::string_view tag) const {
  for (const auto& c : constraints)
    if (c.tag == tag) return &c;
  return nullptr;
}

Rational evaluate_terms(const Terms& terms, std::span<const std::int64_t> assignment) {
  Rational sum;
  for (const auto& [var, c] : terms) {
    if (assignment[var] != 0) sum += c * Rational(static_cast<long>(assignment[var]));
  }
  return sum;
}

bool IlpInstance::satisfies(std::span<const std::int64_t> assignment) const {
  if (assignment.size() != variables.size()) return false;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (assignment[i] < 0 || assignment[i] > variables[i].upper) return false;
  }
  for (const auto& c : constraints) {
    Rational lhs = evaluate_terms(c.terms, assignment);
    if (c.sense == ConstraintSense::Equal ? lhs != c.rhs : lhs > c.rhs) return false;
  }
  return true;
}

std::vector<Rational> IlpInstance::objective_values(std::span<const std::int64_t> assignment) const {
  std::vector<Rational> out;
  out.reserve(objectives.size());
  for (const auto& o : objectives) out.push_back(evaluate_terms(o.terms, assignment));
  return out;
}

Doings IlpInstance::to_doings(std::span<const std::int64_t> assignment) const {
  Doings d;
  for (std::size_t i = 0; i < variables.size() && i < assignment.size(); ++i) {
    if (assignment[i] != 0) d.counts[variables[i].id] = assignment[i];
  }
  return d;
}

namespace {

void write_terms(std::ostream& os, const IlpInstance& ilp, const Terms& terms) {
  if (terms.empty()) {
    os << "0";
    return;
  }
  bool first = true;
  for (const auto& [var, c] : terms) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    if (mag != 1) os << to_string(mag) << " ";
    os << ilp.variables[var].id;
  }
}

}  // namespace

std::string IlpInstance::dump() const {
  std::ostringstream os;
  for (const auto& v : variables) {
    os << "var " << v.id << " " << (v.kind == VariableKind::Binary ? "bin" : "int") << " [0," << v.upper
       << "]\n";
  }
  for (const auto& c : constraints) {
    os << "con " << c.tag << ": ";
    write_terms(os, *this, c.terms);
    os << (c.sense == ConstraintSense::Equal ? " = " : " <= ") << to_string(c.rhs) << "\n";
  }
  for (const auto& o : objectives) {
    os << "max " << o.dimension_id << ": ";
    write_terms(os, *this, o.terms);
    os << "\n";
  }
  return os.str();
}

}  // namespace capscope
