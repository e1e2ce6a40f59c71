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

#include "capscope/kernels.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace capscope::kernels {

std::uint64_t ScaledProgram::space_size() const {
  std::uint64_t size = 1;
  for (auto u : upper) {
    auto radix = static_cast<std::uint64_t>(u) + 1;
    if (size > std::numeric_limits<std::uint64_t>::max() / radix) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= radix;
  }
  return size;
}

namespace {

// Scales terms (and rhs) by the lcm of their denominators.
std::vector<std::int64_t> dense_integer_row(const Terms& terms, std::size_t n, const Integer& scale) {
  std::vector<std::int64_t> out(n, 0);
  for (const auto& [var, c] : terms) {
    Rational s = c * scale;
    out[var] = to_int64(s.get_num());
  }
  return out;
}

void check_range(const std::vector<std::int64_t>& coefficients, const std::vector<std::int64_t>& upper,
                 std::int64_t rhs) {
  Integer magnitude = abs(Integer(static_cast<long>(rhs)));
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    magnitude += abs(Integer(static_cast<long>(coefficients[j]))) * Integer(static_cast<long>(upper[j]));
  }
  if (!mpz_fits_slong_p(magnitude.get_mpz_t())) {
    throw std::overflow_error("scaled activity exceeds 64 bits");
  }
}

}  // namespace

namespace {

// Activity-based bound tightening: for a row sum a_j x_j <= b over
// 0 <= x <= u, a_j > 0 implies x_j <= floor((b - L_j) / a_j) where L_j is
// the least activity of the other terms. Exact; only removes infeasible
// assignments, so enumeration results are unchanged.
bool tighten_once(const std::vector<std::int64_t>& coefficients, std::int64_t rhs, std::vector<std::int64_t>& upper) {
  __int128 least = 0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (coefficients[j] < 0) least += static_cast<__int128>(coefficients[j]) * upper[j];
  }
  bool changed = false;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (coefficients[j] <= 0) continue;
    const __int128 slack = static_cast<__int128>(rhs) - least;
    const __int128 bound = slack < 0 ? 0 : slack / coefficients[j];
    if (bound < upper[j]) {
      upper[j] = static_cast<std::int64_t>(bound);
      changed = true;
    }
  }
  return changed;
}

void tighten_bounds(const std::vector<ScaledProgram::Row>& rows, std::vector<std::int64_t>& upper) {
  constexpr int kMaxPasses = 8;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool changed = false;
    for (const auto& row : rows) {
      changed |= tighten_once(row.coefficients, row.rhs, upper);
      if (row.equality) {
        std::vector<std::int64_t> negated(row.coefficients.size());
        std::transform(row.coefficients.begin(), row.coefficients.end(), negated.begin(),
                       [](std::int64_t c) { return -c; });
        changed |= tighten_once(negated, -row.rhs, upper);
      }
    }
    if (!changed) return;
  }
}

}  // namespace

ScaledProgram scale_program(const IlpInstance& ilp) {
  ScaledProgram p;
  const std::size_t n = ilp.variables.size();
  for (const auto& v : ilp.variables) p.upper.push_back(v.upper);
  for (const auto& c : ilp.constraints) {
    std::vector<Rational> values{c.rhs};
    for (const auto& t : c.terms) values.push_back(t.second);
    Integer scale = common_denominator(values);
    ScaledProgram::Row row;
    row.coefficients = dense_integer_row(c.terms, n, scale);
    row.equality = c.sense == ConstraintSense::Equal;
    row.rhs = to_int64(Rational(c.rhs * scale).get_num());
    check_range(row.coefficients, p.upper, row.rhs);
    p.rows.push_back(std::move(row));
  }
  tighten_bounds(p.rows, p.upper);
  for (const auto& o : ilp.objectives) {
    std::vector<Rational> values;
    for (const auto& t : o.terms) values.push_back(t.second);
    Integer scale = common_denominator(values);
    p.objectives.push_back(dense_integer_row(o.terms, n, scale));
    check_range(p.objectives.back(), p.upper, 0);
    p.objective_scale.push_back(scale);
  }
  return p;
}

std::vector<std::int64_t> decode_assignment(const ScaledProgram& program, std::uint64_t index) {
  std::vector<std::int64_t> a(program.upper.size(), 0);
  for (std::size_t j = a.size(); j-- > 0;) {
    auto radix = static_cast<std::uint64_t>(program.upper[j]) + 1;
    a[j] = static_cast<std::int64_t>(index % radix);
    index /= radix;
  }
  return a;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Tally {
  std::uint64_t first_index;
  std::uint64_t count;
};

using PointTable = std::unordered_map<std::vector<std::int64_t>, Tally, VectorHash>;

// Walks assignments [begin, end) with incremental row and objective sums.
void enumerate_range(const ScaledProgram& p, std::uint64_t begin, std::uint64_t end, PointTable& table) {
  if (begin >= end) return;
  const std::size_t n = p.upper.size();
  const std::size_t m = p.rows.size();
  const std::size_t k = p.objectives.size();
  std::vector<std::int64_t> a = decode_assignment(p, begin);
  std::vector<std::int64_t> activity(m, 0);
  std::vector<std::int64_t> objective(k, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < m; ++r) activity[r] += p.rows[r].coefficients[j] * a[j];
    for (std::size_t o = 0; o < k; ++o) objective[o] += p.objectives[o][j] * a[j];
  }

  for (std::uint64_t index = begin;;) {
    bool feasible = true;
    for (std::size_t r = 0; r < m && feasible; ++r) {
      const auto& row = p.rows[r];
      feasible = row.equality ? activity[r] == row.rhs : activity[r] <= row.rhs;
    }
    if (feasible) {
      auto it = table.find(objective);
      if (it == table.end()) {
        table.emplace(objective, Tally{index, 1});
      } else {
        ++it->second.count;
      }
    }
    if (++index == end) break;
    for (std::size_t j = n; j-- > 0;) {
      if (a[j] < p.upper[j]) {
        ++a[j];
        for (std::size_t r = 0; r < m; ++r) activity[r] += p.rows[r].coefficients[j];
        for (std::size_t o = 0; o < k; ++o) objective[o] += p.objectives[o][j];
        break;
      }
      for (std::size_t r = 0; r < m; ++r) activity[r] -= p.rows[r].coefficients[j] * a[j];
      for (std::size_t o = 0; o < k; ++o) objective[o] -= p.objectives[o][j] * a[j];
      a[j] = 0;
    }
  }
}

std::vector<EnumeratedPoint> merge_tables(std::span<const PointTable> tables) {
  std::map<std::vector<std::int64_t>, Tally> merged;
  for (const auto& table : tables) {
    for (const auto& [values, tally] : table) {
      auto [it, inserted] = merged.try_emplace(values, tally);
      if (!inserted) {
        it->second.first_index = std::min(it->second.first_index, tally.first_index);
        it->second.count += tally.count;
      }
    }
  }
  std::vector<EnumeratedPoint> out;
  out.reserve(merged.size());
  for (auto& [values, tally] : merged) out.push_back({values, tally.first_index, tally.count});
  return out;
}

}  // namespace

std::vector<EnumeratedPoint> enumerate_serial(const ScaledProgram& program) {
  PointTable table;
  enumerate_range(program, 0, program.space_size(), table);
  return merge_tables(std::span<const PointTable>(&table, 1));
}

std::vector<EnumeratedPoint> enumerate_parallel(const ScaledProgram& program) {
  const std::uint64_t total = program.space_size();
#ifdef _OPENMP
  std::vector<PointTable> tables(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    const auto threads = static_cast<std::uint64_t>(omp_get_num_threads());
    const auto tid = static_cast<std::uint64_t>(omp_get_thread_num());
    const std::uint64_t chunk = total / threads;
    const std::uint64_t extra = total % threads;
    const std::uint64_t begin = tid * chunk + std::min(tid, extra);
    const std::uint64_t end = begin + chunk + (tid < extra ? 1 : 0);
    enumerate_range(program, begin, end, tables[tid]);
  }
  return merge_tables(tables);
#else
  return enumerate_serial(program);
#endif
}

}  // namespace capscope::kernels
