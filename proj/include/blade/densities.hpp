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

// Per-word probabilities over weight classes. Every density used by the
// coder assigns the same probability to all words of a given weight, so a
// distribution over n-bit words is n+1 numbers.

#include <cmath>
#include <deque>
#include <mutex>
#include <vector>

#include "enumeration.hpp"
#include "numeric.hpp"

namespace blade {

namespace detail {

// m! for m up to a few thousand, grown on demand.
inline const BigInt& factorial(unsigned m) {
  static std::mutex mu;
  static std::deque<BigInt> table{BigInt(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= m) table.push_back(table.back() * static_cast<unsigned>(table.size()));
  return table[m];
}

// (2m)! / m!, the integer part of Gamma(m + 1/2) up to sqrt(pi) / 4^m.
inline BigInt half_gamma_numerator(unsigned m) {
  return factorial(2 * m) / factorial(m);
}

inline BigInt big_binomial(unsigned r, unsigned c) {
  if (c > r) return 0;
  return factorial(r) / (factorial(c) * factorial(r - c));
}

inline void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("probability must lie in (0, 1)");
}

inline void check_probability(const Rational& p) {
  if (!(p > 0 && p < 1)) throw DomainError("probability must lie in (0, 1)");
}

}  // namespace detail

// p^k (1-p)^(n-k)
inline Rational bernoulli_word_prob(int n, int k, const Rational& p) {
  detail::check_probability(p);
  detail::require(k >= 0 && k <= n, "bernoulli_word_prob: k out of range");
  return rational_pow(p, k) * rational_pow(Rational(1 - p), n - k);
}

inline double bernoulli_word_prob(int n, int k, double p) {
  detail::check_probability(p);
  detail::require(k >= 0 && k <= n, "bernoulli_word_prob: k out of range");
  return std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Krichevsky-Trofimov estimate of any weight-k word of length n:
//   Gamma(k+1/2) Gamma(n-k+1/2) / (pi Gamma(n+1))
//   = (2k)! (2(n-k))! / (4^n k! (n-k)! n!)
inline Rational kt_prob(int n, int k) {
  detail::require(n >= 0 && k >= 0 && k <= n, "kt_prob: need 0 <= k <= n");
  BigInt num = detail::half_gamma_numerator(k) * detail::half_gamma_numerator(n - k);
  BigInt den = (BigInt(1) << (2 * n)) * detail::factorial(n);
  return Rational(num, den);
}

// Conditional estimate given a sample of length t and weight s:
//   P_KT(u w) / P_KT(u).
inline Rational kt_cond_prob(int n, int k, int t, int s) {
  detail::require(k >= 0 && k <= n, "kt_cond_prob: need 0 <= k <= n");
  detail::require(s >= 0 && s <= t, "kt_cond_prob: need 0 <= s <= t");
  return kt_prob(n + t, k + s) / kt_prob(t, s);
}

inline double entropy(double p) {
  detail::check_probability(p);
  double q = 1.0 - p;
  return -p * std::log2(p) - q * std::log2(q);
}

inline Real entropy(const Real& p) {
  if (!(p > 0 && p < 1)) throw DomainError("probability must lie in (0, 1)");
  Real q = 1 - p;
  return -p * log2_real(p) - q * log2_real(q);
}

enum class DensityFamily { bernoulli, kt_universal, kt_conditional };

struct DensityKind {
  DensityFamily family = DensityFamily::kt_universal;
  Rational p = 0;  // bernoulli only
  int t = 0;       // kt_conditional only
  int s = 0;

  static DensityKind bernoulli(Rational p) { return {DensityFamily::bernoulli, std::move(p), 0, 0}; }
  static DensityKind kt_universal() { return {}; }
  static DensityKind kt_conditional(int t, int s) {
    return {DensityFamily::kt_conditional, 0, t, s};
  }
};

// probs[k] is the probability of any single word of weight k.
struct WeightDistribution {
  int n = 0;
  std::vector<Rational> probs;
  DensityKind kind;

  // sum_k C(n,k) probs[k]
  Rational total() const {
    Rational sum = 0;
    for (int k = 0; k <= n; ++k) sum += probs[k] * Rational(detail::big_binomial(n, k));
    return sum;
  }
};

inline WeightDistribution weight_distribution(const DensityKind& kind, int n) {
  detail::require(n >= 1, "weight_distribution: n must be positive");
  WeightDistribution d{n, {}, kind};
  d.probs.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    switch (kind.family) {
      case DensityFamily::bernoulli:
        d.probs.push_back(bernoulli_word_prob(n, k, kind.p));
        break;
      case DensityFamily::kt_universal:
        d.probs.push_back(kt_prob(n, k));
        break;
      case DensityFamily::kt_conditional:
        d.probs.push_back(kt_cond_prob(n, k, kind.t, kind.s));
        break;
    }
  }
  return d;
}

// The distribution scaled by the least common denominator: integer weights
// proportional to probs[k], used where only ratios matter.
inline std::vector<BigInt> integer_weights(const WeightDistribution& d) {
  BigInt lcm = 1;
  for (const auto& p : d.probs) {
    BigInt den = boost::multiprecision::denominator(p);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::vector<BigInt> w;
  w.reserve(d.probs.size());
  for (const auto& p : d.probs)
    w.push_back(boost::multiprecision::numerator(p) * (lcm / boost::multiprecision::denominator(p)));
  return w;
}

}  // namespace blade
