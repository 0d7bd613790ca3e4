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

// Seeded Bernoulli source, Monte Carlo benchmark of the adaptive coder, RAW
// block packing and CSV output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "bitio.hpp"
#include "codec.hpp"
#include "codebook.hpp"
#include "densities.hpp"

namespace blade {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

class BernoulliSource {
 public:
  BernoulliSource(double p, std::uint64_t seed) : p_(p), rng_(seed) { detail::check_probability(p); }

  bool next_bit() noexcept { return rng_.next_unit() < p_; }

  // n bits, first drawn bit in the most significant position.
  std::uint64_t next_block(int n) noexcept {
    std::uint64_t w = 0;
    for (int i = 0; i < n; ++i) w = (w << 1) | static_cast<std::uint64_t>(next_bit());
    return w;
  }

 private:
  double p_;
  SplitMix64 rng_;
};

inline std::vector<bool> bernoulli_bits(double p, std::size_t count, std::uint64_t seed) {
  BernoulliSource src(p, seed);
  std::vector<bool> bits(count);
  for (std::size_t i = 0; i < count; ++i) bits[i] = src.next_bit();
  return bits;
}

// RAW files hold n-bit blocks packed MSB-first with no header. The block count
// is floor(8 * size / n); any trailing bits (fewer than 8) must be zero.
inline std::vector<std::uint64_t> unpack_blocks(std::span<const std::uint8_t> raw, int n) {
  detail::require(n >= 1 && n <= kMaxBlockBits, "unpack_blocks: bad block length");
  const std::uint64_t total = raw.size() * 8ull;
  const std::uint64_t count = total / n;
  BitStream bs = BitStream::from_bytes({raw.begin(), raw.end()}, total);
  std::vector<std::uint64_t> blocks;
  blocks.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) blocks.push_back(bs.read_bits(n));
  const std::uint64_t tail = total - count * n;
  if (tail > 0 && bs.read_bits(static_cast<unsigned>(tail)) != 0)
    throw CorruptInput("RAW input has nonzero bits after the last whole block");
  return blocks;
}

inline std::vector<std::uint8_t> pack_blocks(std::span<const std::uint64_t> blocks, int n) {
  detail::require(n >= 1 && n <= kMaxBlockBits, "pack_blocks: bad block length");
  BitStream bs;
  for (auto b : blocks) {
    if (n < 64 && (b >> n) != 0) throw ContractViolation("pack_blocks: block does not fit in n bits");
    bs.write_bits(b, static_cast<unsigned>(n));
  }
  return {bs.bytes().begin(), bs.bytes().end()};
}

struct BenchConfig {
  int n = 16;
  double p = 0.5;
  std::vector<int> m{1, 2, 4, 10, 64};
  std::uint64_t Q = 10000;
  std::uint64_t seed = 1;
  std::string output;

  void validate() const {
    check_context_block_length(n);
    detail::check_probability(p);
    if (m.empty()) throw ContractViolation("bench: at least one m is required");
    for (int x : m)
      if (x < 1) throw ContractViolation("bench: m must be at least 1");
    if (Q < 1) throw ContractViolation("bench: Q must be at least 1");
  }
};

struct BenchRecord {
  int n = 0;
  double p = 0;
  int m = 0;
  double total_bits_avg = 0;
  double rate = 0;
  // Standard error of rate, from the sample spread of per-sequence totals.
  double rate_sigma = 0;
};

// Rate = (bits per symbol - H) / H
inline double relative_rate(double bits_per_symbol, double p) {
  double h = entropy(p);
  return (bits_per_symbol - h) / h;
}

// One record per m. Sequence i of every m draws from SplitMix64(seed ^ i);
// each sequence is decoded and compared before its length is counted.
inline std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg, std::shared_ptr<const ContextSet> set) {
  cfg.validate();
  if (!set || set->n != cfg.n) throw ContractViolation("bench: context set does not match n");
  auto en = std::make_shared<const BlockEnumerator>(cfg.n);
  const double h = entropy(cfg.p);
  std::vector<BenchRecord> out;
  std::vector<std::uint64_t> blocks;
  for (int m : cfg.m) {
    double sum = 0, sum_sq = 0;
    for (std::uint64_t i = 0; i < cfg.Q; ++i) {
      BernoulliSource src(cfg.p, cfg.seed ^ i);
      blocks.resize(m);
      for (auto& b : blocks) b = src.next_block(cfg.n);
      BitStream bs;
      AdaptiveEncoder enc(set, en);
      for (auto b : blocks) enc.encode(b, bs);
      bs.rewind();
      AdaptiveDecoder dec(set, en);
      for (int j = 0; j < m; ++j) {
        if (dec.decode(bs) != blocks[j])
          throw Error("bench: round-trip mismatch at sequence " + std::to_string(i) + ", block " +
                      std::to_string(j));
      }
      if (bs.remaining() != 0) throw Error("bench: decoder stopped short at sequence " + std::to_string(i));
      const double bits = static_cast<double>(bs.bit_length());
      sum += bits;
      sum_sq += bits * bits;
    }
    const double q = static_cast<double>(cfg.Q);
    const double mean = sum / q;
    const double var = cfg.Q > 1 ? std::max(0.0, (sum_sq - q * mean * mean) / (q - 1)) : 0.0;
    const double symbols = static_cast<double>(m) * cfg.n;
    BenchRecord r;
    r.n = cfg.n;
    r.p = cfg.p;
    r.m = m;
    r.total_bits_avg = mean;
    r.rate = relative_rate(mean / symbols, cfg.p);
    r.rate_sigma = std::sqrt(var / q) / symbols / h;
    out.push_back(r);
  }
  return out;
}

inline std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  return run_benchmark(cfg, std::make_shared<const ContextSet>(build_context_set(cfg.n)));
}

// Rate the benchmark converges to, from exact per-block expectations.
inline double expected_rate(const ContextSet& set, double p, int m) {
  Real bits = expected_sequence_bits(set, p, m);
  return relative_rate(static_cast<double>(bits) / (static_cast<double>(m) * set.n), p);
}

namespace detail {

inline std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << "n,p,m,total_bits_avg,rate\n";
  for (const auto& r : records)
    os << r.n << ',' << detail::csv_number(r.p) << ',' << r.m << ',' << detail::csv_number(r.total_bits_avg)
       << ',' << detail::csv_number(r.rate) << '\n';
}

inline void write_analysis_csv(std::ostream& os, std::span<const RedundancyReport> reports) {
  os << "n,t,p,exact,asymptotic,delta,term1,term2,term3,residual\n";
  for (const auto& r : reports) {
    os << r.n << ',' << r.t << ',' << detail::csv_number(r.p) << ','
       << detail::csv_number(static_cast<double>(r.exact_rate)) << ','
       << detail::csv_number(static_cast<double>(r.asymptotic_rate)) << ','
       << detail::csv_number(static_cast<double>(r.delta_exact)) << ','
       << detail::csv_number(static_cast<double>(r.leading_term)) << ','
       << detail::csv_number(static_cast<double>(r.second_term)) << ','
       << detail::csv_number(static_cast<double>(r.third_term)) << ','
       << detail::csv_number(static_cast<double>(r.residual())) << '\n';
  }
}

}  // namespace blade
