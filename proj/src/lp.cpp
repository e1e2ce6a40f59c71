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

#include "capscope/lp.hpp"

#include <optional>
#include <stdexcept>

namespace capscope {
namespace {

constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);
constexpr std::size_t kMaxIterations = 1'000'000;

// Dense tableau B^-1 A over structural, slack and artificial columns. Every
// nonbasic column sits exactly at one of its bounds.
class Tableau {
 public:
  explicit Tableau(const LpProblem& p) : n_(p.lower.size()), m_(p.rows.size()) {
    std::size_t slacks = 0;
    for (const auto& row : p.rows) slacks += row.sense == ConstraintSense::LessEqual;

    std::vector<Rational> residual(m_);
    std::vector<bool> needs_artificial(m_);
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      residual[i] = p.rows[i].rhs;
      for (const auto& [j, a] : p.rows[i].terms) residual[i] -= a * p.lower[j];
      needs_artificial[i] = p.rows[i].sense == ConstraintSense::Equal || residual[i] < 0;
      artificials += needs_artificial[i];
    }

    cols_ = n_ + slacks + artificials;
    first_artificial_ = n_ + slacks;
    t_.assign(m_ * cols_, Rational(0));
    lo_.assign(cols_, Rational(0));
    up_.assign(cols_, Rational(0));
    has_up_.assign(cols_, false);
    x_.assign(cols_, Rational(0));
    basis_.assign(m_, 0);
    row_of_.assign(cols_, kNoRow);

    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = p.lower[j];
      up_[j] = p.upper[j];
      has_up_[j] = true;
      x_[j] = p.lower[j];
    }

    std::size_t slack = n_;
    std::size_t art = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = residual[i] < 0;
      for (const auto& [j, a] : p.rows[i].terms) at(i, j) = flip ? Rational(-a) : a;
      std::optional<std::size_t> slack_col;
      if (p.rows[i].sense == ConstraintSense::LessEqual) {
        slack_col = slack++;
        at(i, *slack_col) = flip ? -1 : 1;
      }
      std::size_t basic;
      if (needs_artificial[i]) {
        basic = art++;
        at(i, basic) = 1;
      } else {
        basic = *slack_col;
      }
      basis_[i] = basic;
      row_of_[basic] = i;
      x_[basic] = flip ? Rational(-residual[i]) : residual[i];
    }
  }

  bool has_artificials() const { return first_artificial_ < cols_; }
  std::size_t first_artificial() const { return first_artificial_; }

  Rational artificial_sum() const {
    Rational s;
    for (std::size_t j = first_artificial_; j < cols_; ++j) s += x_[j];
    return s;
  }

  void fix_artificials() {
    for (std::size_t j = first_artificial_; j < cols_; ++j) {
      has_up_[j] = true;
      up_[j] = 0;
    }
  }

  // Minimizes cost.x; returns false when unbounded.
  bool minimize(const std::vector<Rational>& cost) {
    std::vector<Rational> reduced(cols_);
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (row_of_[j] != kNoRow) continue;
        Rational r = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
          const Rational& a = at(i, j);
          if (a != 0 && cost[basis_[i]] != 0) r -= cost[basis_[i]] * a;
        }
        reduced[j] = std::move(r);
      }

      std::size_t enter = cols_;
      int dir = 0;
      for (std::size_t j = 0; j < cols_ && enter == cols_; ++j) {
        if (row_of_[j] != kNoRow) continue;
        if (has_up_[j] && up_[j] == lo_[j]) continue;
        if (x_[j] == lo_[j] && reduced[j] < 0) {
          enter = j;
          dir = 1;
        } else if (has_up_[j] && x_[j] == up_[j] && reduced[j] > 0) {
          enter = j;
          dir = -1;
        }
      }
      if (enter == cols_) return true;

      // Ratio test; kNoRow as the leaving row means a bound flip.
      std::optional<Rational> step;
      std::size_t leave = kNoRow;
      bool leave_to_upper = false;
      if (has_up_[enter]) step = up_[enter] - lo_[enter];
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = at(i, enter);
        if (a == 0) continue;
        Rational rate = dir > 0 ? Rational(-a) : a;  // d x_basic / d step
        std::size_t b = basis_[i];
        Rational t;
        bool to_upper;
        if (rate < 0) {
          t = (x_[b] - lo_[b]) / -rate;
          to_upper = false;
        } else if (has_up_[b]) {
          t = (up_[b] - x_[b]) / rate;
          to_upper = true;
        } else {
          continue;
        }
        bool better = !step || t < *step ||
                      (t == *step && leave != kNoRow && b < basis_[leave]);
        if (better) {
          step = t;
          leave = i;
          leave_to_upper = to_upper;
        }
      }
      if (!step) return false;

      const Rational& t = *step;
      if (t != 0) {
        for (std::size_t i = 0; i < m_; ++i) {
          const Rational& a = at(i, enter);
          if (a == 0) continue;
          x_[basis_[i]] -= (dir > 0 ? a : Rational(-a)) * t;
        }
        x_[enter] += dir > 0 ? t : Rational(-t);
      }
      if (leave == kNoRow) {
        x_[enter] = dir > 0 ? up_[enter] : lo_[enter];
        continue;
      }
      std::size_t out = basis_[leave];
      x_[out] = leave_to_upper ? up_[out] : lo_[out];
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

  std::size_t columns() const { return cols_; }
  const Rational& value(std::size_t j) const { return x_[j]; }

 private:
  Rational& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }

  void pivot(std::size_t r, std::size_t enter) {
    Rational inv = 1 / at(r, enter);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(r, j) != 0) at(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      Rational f = at(i, enter);
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        const Rational& pr = at(r, j);
        if (pr != 0) at(i, j) -= f * pr;
      }
    }
    row_of_[basis_[r]] = kNoRow;
    basis_[r] = enter;
    row_of_[enter] = r;
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<Rational> t_;
  std::vector<Rational> lo_, up_;
  std::vector<bool> has_up_;
  std::vector<Rational> x_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> row_of_;
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const std::size_t n = problem.lower.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (problem.lower[j] > problem.upper[j]) return {};
  }

  Tableau tab(problem);
  if (tab.has_artificials()) {
    std::vector<Rational> phase1(tab.columns());
    for (std::size_t j = tab.first_artificial(); j < tab.columns(); ++j) phase1[j] = 1;
    tab.minimize(phase1);
    if (tab.artificial_sum() != 0) return {};
    tab.fix_artificials();
  }

  std::vector<Rational> cost(tab.columns());
  for (std::size_t j = 0; j < n; ++j) cost[j] = -problem.objective[j];
  LpResult result;
  if (!tab.minimize(cost)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.x.push_back(tab.value(j));
    if (problem.objective[j] != 0) result.value += problem.objective[j] * tab.value(j);
  }
  return result;
}

}  // namespace capscope
