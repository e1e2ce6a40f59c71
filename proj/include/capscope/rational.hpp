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

#ifndef CAPSCOPE_RATIONAL_HPP_
#define CAPSCOPE_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace capscope {

/// Exact rational used for every model quantity. Always kept canonical.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "12", "-3", "0.125", "1/2" or "-7/4". Throws std::invalid_argument
/// on anything else (exponents and whitespace are not accepted).
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

/// num/den in canonical form. mpq_class's two-argument constructor does not
/// reduce, so every runtime fraction goes through here.
Rational make_rational(const Integer& numerator, const Integer& denominator);

bool is_integer(const Rational& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Least common multiple of the denominators; 1 for an empty range.
Integer common_denominator(std::span<const Rational> values);

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_int64(const Integer& value);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace capscope

#endif  // CAPSCOPE_RATIONAL_HPP_
