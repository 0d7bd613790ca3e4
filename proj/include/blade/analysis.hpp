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

// Redundancy of block codes and of the sample-based adaptive scheme: exact
// sums over weight classes, and their asymptotic expansions.
//
// Units: every rate is in bits per source symbol and every logarithm is base
// 2. Correction terms that come out of Stirling or Taylor expansions in the
// natural logarithm (1/(12n), the (1-4pq)/(24pq) factor, the "-1" next to
// log(pi/2), ...) are multiplied by log2(e).

#include <cstdint>
#include <vector>

#include "codebook.hpp"
#include "densities.hpp"
#include "numeric.hpp"

namespace blade {

namespace detail {

inline Real real_param(double p) {
  check_probability(p);
  return Real(p);
}

// C(n,k) p^k (1-p)^(n-k)
inline Real binomial_pmf(int n, int k, const Real& p) {
  return Real(big_binomial(n, k)) * boost::multiprecision::pow(p, k) *
         boost::multiprecision::pow(Real(1 - p), n - k);
}

inline Real word_prob(int n, int k, const Real& p) {
  return boost::multiprecision::pow(p, k) * boost::multiprecision::pow(Real(1 - p), n - k);
}

// log2 P_KT for a weight-k word of length n.
inline Real log2_kt_prob(int n, int k) {
  BigInt num = half_gamma_numerator(k) * half_gamma_numerator(n - k);
  BigInt den = (BigInt(1) << (2 * n)) * factorial(n);
  return log2_real(Real(num)) - log2_real(Real(den));
}

inline Real log2_kt_cond_prob(int n, int k, int t, int s) {
  return log2_kt_prob(n + t, k + s) - log2_kt_prob(t, s);
}

}  // namespace detail

// Average codeword length in bits per block.
inline Rational avg_code_length_exact(const GroupLengths& code, const WeightDistribution& dist) {
  if (code.n != dist.n) throw ContractViolation("avg_code_length_exact: block lengths differ");
  Rational sum = 0;
  for (int k = 0; k <= dist.n; ++k) sum += dist.probs[k] * Rational(code.class_bits(k));
  return sum;
}

inline Rational avg_code_length_exact(const CodeTable& table, const WeightDistribution& dist) {
  return avg_code_length_exact(table.group_lengths(), dist);
}

// avg / n - H(p)
inline Real redundancy_exact(const CodeTable& table, const WeightDistribution& dist, double p) {
  return to_real(avg_code_length_exact(table, dist)) / dist.n - entropy(detail::real_param(p));
}

// Code lengths of a family of sample-based codes for samples of length t.
// Only samples of weight s <= t/2 are stored; heavier samples use the table
// of t - s on the complemented block.
struct SampleCodes {
  int n = 0;
  int t = 0;
  std::vector<GroupLengths> by_sample;

  // Total bits over all words of weight k when the sample has weight s.
  std::uint64_t class_bits(int s, int k) const {
    if (2 * s > t) return by_sample.at(t - s).class_bits(n - k);
    return by_sample.at(s).class_bits(k);
  }

  void check(int n_, int t_) const {
    if (n != n_ || t != t_ || by_sample.size() != static_cast<std::size_t>(t / 2 + 1))
      throw ContractViolation("sample codes do not match (n, t)");
  }
};

// Huffman lengths for every folded sample weight. Lengths are not capped, so
// this also covers long samples whose codes could not be stored for decoding.
inline SampleCodes build_sample_codes(int n, int t) {
  if (n < 1 || n > kMaxTableBits || t < 0) throw ContractViolation("build_sample_codes: bad (n, t)");
  SampleCodes codes{n, t, {}};
  for (int s = 0; s <= t / 2; ++s) {
    auto kind = t == 0 ? DensityKind::kt_universal() : DensityKind::kt_conditional(t, s);
    codes.by_sample.push_back(huffman_group_lengths(weight_distribution(kind, n)));
  }
  return codes;
}

// Lengths of the context set's tables for t in {0, n, 2n}.
inline SampleCodes sample_codes(const ContextSet& set, int t) {
  SampleCodes codes{set.n, t, {}};
  if (t == 0) {
    codes.by_sample.push_back(set.tables[0].group_lengths());
  } else if (t == set.n) {
    for (int s = 0; s <= t / 2; ++s) codes.by_sample.push_back(set.tables[set.single_slot(s)].group_lengths());
  } else if (t == 2 * set.n) {
    for (int s = 0; s <= t / 2; ++s) codes.by_sample.push_back(set.tables[set.double_slot(s)].group_lengths());
  } else {
    throw ContractViolation("sample_codes: context sets hold t = 0, n, 2n only");
  }
  return codes;
}

// Expected code length in bits of one block coded with a sample of length t
// drawn from the same source.
inline Real expected_block_bits(const SampleCodes& codes, double p) {
  Real pr = detail::real_param(p);
  Real sum = 0;
  for (int s = 0; s <= codes.t; ++s) {
    Real ps = detail::binomial_pmf(codes.t, s, pr);
    Real inner = 0;
    for (int k = 0; k <= codes.n; ++k) inner += detail::word_prob(codes.n, k, pr) * Real(codes.class_bits(s, k));
    sum += ps * inner;
  }
  return sum;
}

// Average redundancy rate of the sample-based code: exact double sum over
// sample and block weights.
inline Real adaptive_redundancy_exact(int n, int t, double p, const SampleCodes& codes) {
  codes.check(n, t);
  return expected_block_bits(codes, p) / n - entropy(detail::real_param(p));
}

// Expected (code length + log2 P_KT(w|u)) in bits per block.
inline Real delta_exact(int n, int t, double p, const SampleCodes& codes) {
  codes.check(n, t);
  Real pr = detail::real_param(p);
  Real sum = 0;
  for (int s = 0; s <= t; ++s) {
    Real ps = detail::binomial_pmf(t, s, pr);
    Real inner = 0;
    for (int k = 0; k <= n; ++k) {
      Real ideal = Real(detail::big_binomial(n, k)) * detail::log2_kt_cond_prob(n, k, t, s);
      inner += detail::word_prob(n, k, pr) * (Real(codes.class_bits(s, k)) + ideal);
    }
    sum += ps * inner;
  }
  if (abs(sum) > 1) throw ValidationError("delta_exact: |delta| exceeds one bit");
  return sum;
}

// -sum_u sum_w Pr(u) Pr(w) log2 P_KT(w|u), in bits per block.
inline Real kt_cross_entropy(int n, int t, double p) {
  Real pr = detail::real_param(p);
  Real sum = 0;
  for (int s = 0; s <= t; ++s) {
    Real ps = detail::binomial_pmf(t, s, pr);
    for (int k = 0; k <= n; ++k)
      sum -= ps * detail::binomial_pmf(n, k, pr) * detail::log2_kt_cond_prob(n, k, t, s);
  }
  return sum;
}

// Average rate of the KT estimator on n-symbol words.
inline Real c_kt_exact(int n, double p) {
  detail::require(n >= 1, "c_kt_exact: n must be positive");
  Real pr = detail::real_param(p);
  Real sum = 0;
  for (int k = 0; k <= n; ++k) sum -= detail::binomial_pmf(n, k, pr) * detail::log2_kt_prob(n, k);
  return sum / n;
}

inline Real c_kt_asymptotic(int n, double p) {
  detail::require(n >= 1, "c_kt_asymptotic: n must be positive");
  Real pr = detail::real_param(p);
  Real pq = pr * (1 - pr);
  Real c = log2e();
  Real nn = n;
  Real brace = log2_real(nn) + log2_real(pi_real() / 2) - c - (1 - 4 * pq) / (12 * pq * nn) * c +
               (1 - 3 * pq) / (12 * pq * pq * nn * nn) * c;
  return entropy(pr) + brace / (2 * nn);
}

// Terms of the asymptotic redundancy of the adaptive code, each already
// divided by n (bits per symbol).
struct Theorem1Terms {
  Real leading;     // log2((t+n)/t) / (2n)
  Real delta_term;  // delta / n
  Real second;      // (1-4pq)/(24pq) * n/(t(t+n)) / n
  Real third;       // -(1-3pq)/(24p^2q^2) * (n+2t)n/(t^2(t+n)^2) / n
  Real total;
};

inline Theorem1Terms theorem1_eval(int n, int t, double p, const Real& delta) {
  detail::require(n >= 1 && t >= 1, "theorem1_eval: need n, t >= 1");
  Real pr = detail::real_param(p);
  Real pq = pr * (1 - pr);
  Real c = log2e();
  Real nn = n, tt = t;
  Theorem1Terms r;
  r.leading = log2_real((tt + nn) / tt) / (2 * nn);
  r.delta_term = delta / nn;
  r.second = (1 - 4 * pq) / (24 * pq) * nn / (tt * (tt + nn)) * c / nn;
  r.third = -(1 - 3 * pq) / (24 * pq * pq) * (nn + 2 * tt) * nn / (tt * tt * (tt + nn) * (tt + nn)) * c / nn;
  r.total = r.leading + r.delta_term + r.second + r.third;
  return r;
}

struct RedundancyReport {
  int n = 0;
  int t = 0;
  double p = 0;
  Real exact_rate;
  Real asymptotic_rate;
  Real delta_exact;
  Real leading_term;
  Real second_term;
  Real third_term;

  Real residual() const { return exact_rate - asymptotic_rate; }
};

inline RedundancyReport redundancy_report(int n, int t, double p, const SampleCodes& codes) {
  RedundancyReport r;
  r.n = n;
  r.t = t;
  r.p = p;
  r.exact_rate = adaptive_redundancy_exact(n, t, p, codes);
  r.delta_exact = delta_exact(n, t, p, codes);
  auto th = theorem1_eval(n, t, p, r.delta_exact);
  r.asymptotic_rate = th.total;
  r.leading_term = th.leading;
  r.second_term = th.second;
  r.third_term = th.third;
  return r;
}

// sum over words of Pr(w) F(w), F the empirical entropy of the word.
inline Real empirical_entropy_avg_exact(int n, double p) {
  detail::require(n >= 2, "empirical_entropy_avg_exact: n must be at least 2");
  Real pr = detail::real_param(p);
  Real sum = 0;
  for (int k = 1; k < n; ++k) {
    Real a = Real(k) / n;
    Real f = -a * log2_real(a) - (1 - a) * log2_real(1 - a);
    sum += detail::binomial_pmf(n, k, pr) * f;
  }
  return sum;
}

inline Real empirical_entropy_avg_asymptotic(int n, double p) {
  detail::require(n >= 2, "empirical_entropy_avg_asymptotic: n must be at least 2");
  Real pr = detail::real_param(p);
  Real pq = pr * (1 - pr);
  Real nn = n;
  return entropy(pr) - log2e() / (2 * nn) + (pq - 1) / (12 * pq * nn * nn) * log2e();
}

namespace detail {

inline void check_theta(const Rational& theta) {
  if (!(theta > 0 && theta < 1)) throw DomainError("theta must lie in (0, 1)");
}

inline Rational binomial_term(int n, int k, const Rational& theta) {
  return Rational(big_binomial(n, k)) * rational_pow(theta, k) * rational_pow(Rational(1 - theta), n - k);
}

// Closed forms, valid as polynomial identities on [0, 1] except theta = 0.
inline Rational s1_closed_unchecked(int n, const Rational& theta) {
  Rational qn = rational_pow(Rational(1 - theta), n);
  return (1 - qn - theta * n * qn) / (theta * (n + 1));
}

inline Rational s2_closed_unchecked(int n, const Rational& theta) {
  Rational qn = rational_pow(Rational(1 - theta), n);
  return (1 - qn - theta * n * qn - theta * theta * n * (n + 1) / 2 * qn) /
         (theta * theta * (n + 1) * (n + 2));
}

}  // namespace detail

// sum_{k=1}^n C(n,k) theta^k (1-theta)^(n-k) / (k+1)
inline Rational s1_exact(int n, const Rational& theta) {
  detail::check_theta(theta);
  Rational sum = 0;
  for (int k = 1; k <= n; ++k) sum += detail::binomial_term(n, k, theta) / (k + 1);
  return sum;
}

inline Rational s1_closed(int n, const Rational& theta) {
  detail::check_theta(theta);
  return detail::s1_closed_unchecked(n, theta);
}

// sum_{k=1}^n C(n,k) theta^k (1-theta)^(n-k) / ((k+1)(k+2))
inline Rational s2_exact(int n, const Rational& theta) {
  detail::check_theta(theta);
  Rational sum = 0;
  for (int k = 1; k <= n; ++k) sum += detail::binomial_term(n, k, theta) / ((k + 1) * (k + 2));
  return sum;
}

inline Rational s2_closed(int n, const Rational& theta) {
  detail::check_theta(theta);
  return detail::s2_closed_unchecked(n, theta);
}

// sum_k C(n,k) theta^k (1-theta)^(n-k) log2(1+k)
inline Real f_sum_exact(int n, double theta) {
  Real th = detail::real_param(theta);
  Real sum = 0;
  for (int k = 1; k <= n; ++k) sum += detail::binomial_pmf(n, k, th) * log2_real(Real(1 + k));
  return sum;
}

inline Real f_sum_asymptotic(int n, double theta) {
  Real th = detail::real_param(theta);
  Real nn = n;
  return log2_real(th * nn) +
         ((1 + th) / (2 * th * nn) - (th * th + 6 * th - 1) / (12 * th * th * nn * nn)) * log2e();
}

// -log2 P_KT(w) minus its Stirling expansion for a word of weight k.
inline Real log_kt_expansion_residual(int n, int k) {
  if (k <= 0 || k >= n) throw DomainError("log_kt_expansion_residual: need 0 < k < n");
  Real a = Real(k) / n;
  Real f = -a * log2_real(a) - (1 - a) * log2_real(1 - a);
  Real nn = n;
  Real expansion = nn * f + log2_real(nn) / 2 + log2_real(pi_real() / 2) / 2 +
                   (1 / (12 * nn) + 1 / (24 * Real(k)) + 1 / (24 * Real(n - k))) * log2e();
  return -detail::log2_kt_prob(n, k) - expansion;
}

// Expected total code length of an m-block sequence from the adaptive coder.
// Blocks are independent, so block 0 costs the universal expectation, block
// 1 the t = n expectation, and each later block the t = 2n expectation.
inline Real expected_sequence_bits(const ContextSet& set, double p, int m) {
  detail::require(m >= 1, "expected_sequence_bits: m must be positive");
  Real total = expected_block_bits(sample_codes(set, 0), p);
  if (m >= 2) total += expected_block_bits(sample_codes(set, set.n), p);
  if (m >= 3) total += Real(m - 2) * expected_block_bits(sample_codes(set, 2 * set.n), p);
  return total;
}

}  // namespace blade
