/*
Copyright 2026 The BLADE Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string_view>

#include "errors.hpp"

namespace blade {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 decimal digits; used wherever a binary64 source parameter feeds a sum.
using Real = boost::multiprecision::cpp_bin_float_50;

inline Real to_real(const Rational& r) {
  return Real(boost::multiprecision::numerator(r)) /
         Real(boost::multiprecision::denominator(r));
}

// x^e by repeated squaring; Boost provides no pow for rationals.
inline Rational rational_pow(Rational x, unsigned e) {
  Rational r = 1;
  while (e) {
    if (e & 1u) r *= x;
    e >>= 1;
    if (e) x *= x;
  }
  return r;
}

inline Real log2_real(const Real& x) {
  return boost::multiprecision::log(x) / boost::multiprecision::log(Real(2));
}

inline Real log2_rational(const Rational& r) {
  return log2_real(to_real(r));
}

// Conversion factor applied to correction terms that come from natural-log
// expansions when all rates are reported in bits.
inline Real log2e() {
  static const Real v = 1 / boost::multiprecision::log(Real(2));
  return v;
}

inline Real pi_real() {
  return boost::multiprecision::default_ops::get_constant_pi<Real::backend_type>();
}

// Exact value of a binary64.
inline Rational exact_rational(double x) {
  if (!(x == x)) throw DomainError("NaN has no rational value");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  if (exp >= 0) {
    r *= Rational(BigInt(1) << exp);
  } else {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

// Parses a decimal literal such as "0.9" or "1e-3" into an exact rational.
inline Rational parse_decimal(std::string_view text) {
  if (text.empty()) throw ContractViolation("empty decimal literal");
  BigInt digits = 0;
  long long scale = 0;
  bool negative = false, seen_digit = false, seen_point = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ContractViolation("malformed decimal literal");
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E')
      throw ContractViolation("malformed decimal literal");
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    if (i == text.size()) throw ContractViolation("malformed decimal exponent");
    long long e = 0;
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9' || e > 100000)
        throw ContractViolation("malformed decimal exponent");
      e = e * 10 + (text[i] - '0');
    }
    scale += eneg ? -e : e;
  }
  Rational r(digits);
  BigInt ten = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    r *= Rational(ten);
  } else {
    r /= Rational(ten);
  }
  return negative ? Rational(-r) : r;
}

}  // namespace blade
