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

#include "capscope/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace capscope {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Integer parse_integer(std::string_view digits) {
  return Integer(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(parse_integer(num), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits = parse_integer(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    result = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    result = Rational(parse_integer(body));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  return value.get_str(10);
}

Rational make_rational(const Integer& numerator, const Integer& denominator) {
  Rational out(numerator, denominator);
  out.canonicalize();
  return out;
}

bool is_integer(const Rational& value) {
  return value.get_den() == 1;
}

Integer floor_of(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer common_denominator(std::span<const Rational> values) {
  Integer acc = 1;
  for (const auto& v : values) {
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_den_mpz_t());
  }
  return acc;
}

std::int64_t to_int64(const Integer& value) {
  if (!mpz_fits_slong_p(value.get_mpz_t())) {
    throw std::overflow_error("integer " + value.get_str() + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(mpz_get_si(value.get_mpz_t()));
}

}  // namespace capscope
