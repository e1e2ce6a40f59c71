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

// Data-parallel kernels behind the exhaustive oracle and the dominance
// filter. Each kernel has an OpenMP version and a serial reference; both
// must return identical results for identical input.

#ifndef CAPSCOPE_KERNELS_HPP_
#define CAPSCOPE_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "capscope/ilp.hpp"
#include "capscope/model.hpp"

namespace capscope::kernels {

/// IlpInstance with every row and objective multiplied to integers, dense.
struct ScaledProgram {
  struct Row {
    std::vector<std::int64_t> coefficients;
    bool equality = false;
    std::int64_t rhs = 0;
  };

  // Variable upper bounds, tightened by row activity (lower bounds are 0).
  std::vector<std::int64_t> upper;
  std::vector<Row> rows;
  std::vector<std::vector<std::int64_t>> objectives;
  std::vector<Integer> objective_scale;  // original = scaled / scale

  /// Product of (upper + 1), saturating at UINT64_MAX.
  std::uint64_t space_size() const;
};

/// Throws std::overflow_error if scaled activities could leave 64 bits.
ScaledProgram scale_program(const IlpInstance& ilp);

struct EnumeratedPoint {
  std::vector<std::int64_t> values;  // scaled objective vector
  std::uint64_t first_index = 0;     // mixed-radix index, variable 0 most significant
  std::uint64_t count = 0;
  bool operator==(const EnumeratedPoint&) const = default;
};

/// Index order equals lexicographic order of assignments.
std::vector<std::int64_t> decode_assignment(const ScaledProgram& program, std::uint64_t index);

/// All distinct feasible objective vectors, sorted ascending.
std::vector<EnumeratedPoint> enumerate_serial(const ScaledProgram& program);
std::vector<EnumeratedPoint> enumerate_parallel(const ScaledProgram& program);

namespace detail {

inline const std::vector<Rational>& coords(const BeingsPoint& p) { return p.values; }
template <typename T>
const std::vector<T>& coords(const std::vector<T>& p) { return p; }

// a >= b componentwise and a != b.
template <typename V>
bool dominates(const V& a, const V& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return false;
    if (b[k] < a[k]) strict = true;
  }
  return strict;
}

template <typename P>
bool survives(std::span<const P> points, std::size_t i) {
  const auto& pi = coords(points[i]);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == i) continue;
    const auto& pj = coords(points[j]);
    if (dominates(pj, pi)) return false;
    if (j < i && pj == pi) return false;  // first copy of a duplicate wins
  }
  return true;
}

}  // namespace detail

/// keep[i] = 1 iff point i is non-dominated and the first of its duplicates.
template <typename P>
std::vector<char> nondominated_mask_serial(std::span<const P> points) {
  std::vector<char> keep(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) keep[i] = detail::survives(points, i);
  return keep;
}

template <typename P>
std::vector<char> nondominated_mask_parallel(std::span<const P> points) {
  std::vector<char> keep(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    keep[static_cast<std::size_t>(i)] = detail::survives(points, static_cast<std::size_t>(i));
  }
  return keep;
}

}  // namespace capscope::kernels

#endif  // CAPSCOPE_KERNELS_HPP_
