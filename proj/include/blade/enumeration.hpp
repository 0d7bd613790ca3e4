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

// Weight classes of n-bit words: popcount, lexicographic rank within a
// class, and the inverse map. Bit w_1 of a word is its most significant bit,
// i.e. the first bit read from a stream by an n-bit read.

#include <bit>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace blade {

inline constexpr int kMaxBinomialRow = 64;
inline constexpr int kMaxBlockBits = 64;
inline constexpr int kLookupMaxBits = 16;

// Pascal's triangle up to row n_max, with C(r, c) = 0 for c > r.
class BinomialTable {
 public:
  explicit BinomialTable(int n_max) : n_max_(n_max) {
    detail::require(n_max >= 0 && n_max <= kMaxBinomialRow,
                    "BinomialTable: rows beyond 64 overflow 64 bits");
    rows_.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), 0);
    for (int r = 0; r <= n_max; ++r) {
      at_mut(r, 0) = 1;
      for (int c = 1; c <= r; ++c) at_mut(r, c) = at(r - 1, c - 1) + at(r - 1, c);
    }
  }

  int n_max() const noexcept { return n_max_; }

  std::uint64_t at(int r, int c) const noexcept {
    if (c < 0 || r < 0 || c > r || r > n_max_) return 0;
    return rows_[static_cast<std::size_t>(r) * (n_max_ + 1) + c];
  }

 private:
  std::uint64_t& at_mut(int r, int c) {
    return rows_[static_cast<std::size_t>(r) * (n_max_ + 1) + c];
  }

  int n_max_;
  std::vector<std::uint64_t> rows_;
};

inline const BinomialTable& pascal() {
  static const BinomialTable table(kMaxBinomialRow);
  return table;
}

// Exact C(r, c) from the precomputed triangle.
inline std::uint64_t binomial(int r, int c) {
  if (r < 0 || c < 0) throw ContractViolation("binomial: negative argument");
  if (r > kMaxBinomialRow) throw ContractViolation("binomial: row above 64 is not representable");
  return pascal().at(r, c);
}

// Exact C(r, c) by the multiplicative recurrence; needs no table.
inline std::uint64_t binomial_dynamic(int r, int c) {
  if (r < 0 || c < 0) throw ContractViolation("binomial: negative argument");
  if (r > kMaxBinomialRow) throw ContractViolation("binomial: row above 64 is not representable");
  if (c > r) return 0;
  if (c > r - c) c = r - c;
  unsigned __int128 v = 1;
  for (int i = 0; i < c; ++i) v = v * static_cast<unsigned>(r - i) / static_cast<unsigned>(i + 1);
  return static_cast<std::uint64_t>(v);
}

struct BlockWord {
  std::uint64_t value = 0;
  int n = 0;

  friend bool operator==(const BlockWord&, const BlockWord&) = default;
};

inline BlockWord make_word(std::uint64_t value, int n) {
  if (n < 1 || n > kMaxBlockBits) throw ContractViolation("block length must be in 1..64");
  if (n < 64 && (value >> n) != 0) throw ContractViolation("word value does not fit in n bits");
  return {value, n};
}

inline std::uint64_t all_ones(int n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

inline int weight(BlockWord w) { return std::popcount(w.value); }

// Lexicographic rank of w among the n-bit words of its weight:
// sum over set bits w_j of C(n - j, ones in positions j..n).
inline std::uint64_t index(BlockWord w) {
  const auto& tab = pascal();
  std::uint64_t rank = 0;
  int ones = weight(w);
  for (int j = 1; j <= w.n; ++j) {
    if ((w.value >> (w.n - j)) & 1) {
      rank += tab.at(w.n - j, ones);
      --ones;
    }
  }
  return rank;
}

// Same rank with C(m-1, r) = (m-r)/m * C(m, r) and C(m-1, r-1) = r/m * C(m, r)
// tracked in a single register, starting from C(n, k).
inline std::uint64_t index_dynamic(BlockWord w) {
  int ones = weight(w);
  unsigned __int128 b = binomial_dynamic(w.n, ones);
  std::uint64_t rank = 0;
  for (int m = w.n; m >= 1; --m) {
    bool bit = (w.value >> (m - 1)) & 1;
    unsigned __int128 below = b * static_cast<unsigned>(m - ones) / static_cast<unsigned>(m);
    if (bit) {
      rank += static_cast<std::uint64_t>(below);
      b = b * static_cast<unsigned>(ones) / static_cast<unsigned>(m);
      --ones;
    } else {
      b = below;
    }
  }
  return rank;
}

// Word of weight k with lexicographic rank i (greedy unranking).
inline BlockWord word(int n, int k, std::uint64_t i) {
  if (n < 1 || n > kMaxBlockBits) throw ContractViolation("block length must be in 1..64");
  if (k < 0 || k > n) throw ContractViolation("word: weight out of range");
  const auto& tab = pascal();
  if (i >= tab.at(n, k)) throw ContractViolation("word: rank out of range");
  std::uint64_t v = 0;
  int ones = k;
  for (int j = 1; j <= n && ones > 0; ++j) {
    std::uint64_t zero_branch = tab.at(n - j, ones);
    if (i >= zero_branch) {
      v |= 1ull << (n - j);
      i -= zero_branch;
      --ones;
    }
  }
  return {v, n};
}

inline BlockWord word_dynamic(int n, int k, std::uint64_t i) {
  if (n < 1 || n > kMaxBlockBits) throw ContractViolation("block length must be in 1..64");
  if (k < 0 || k > n) throw ContractViolation("word: weight out of range");
  unsigned __int128 b = binomial_dynamic(n, k);
  if (i >= b) throw ContractViolation("word: rank out of range");
  std::uint64_t v = 0;
  int ones = k;
  for (int m = n; m >= 1 && ones > 0; --m) {
    unsigned __int128 zero_branch = b * static_cast<unsigned>(m - ones) / static_cast<unsigned>(m);
    if (i >= zero_branch) {
      v |= 1ull << (m - 1);
      i -= static_cast<std::uint64_t>(zero_branch);
      b = b * static_cast<unsigned>(ones) / static_cast<unsigned>(m);
      --ones;
    } else {
      b = zero_branch;
    }
  }
  return {v, n};
}

// (weight, rank) <-> word for a fixed block length. Up to 16 bits both
// directions are single lookups; longer blocks fall back to the formulas.
class BlockEnumerator {
 public:
  struct Rank {
    int k;
    std::uint64_t i;
  };

  explicit BlockEnumerator(int n) : n_(n) {
    if (n < 1 || n > kMaxBlockBits) throw ContractViolation("block length must be in 1..64");
    if (n > kLookupMaxBits) return;
    std::size_t size = std::size_t{1} << n;
    rank_.resize(size);
    offset_.assign(n + 2, 0);
    for (int k = 0; k <= n; ++k) offset_[k + 1] = offset_[k] + pascal().at(n, k);
    words_.resize(size);
    std::vector<std::uint32_t> next(n + 1, 0);
    for (std::uint32_t w = 0; w < size; ++w) {
      int k = std::popcount(w);
      rank_[w] = {static_cast<std::uint8_t>(k), next[k]};
      words_[offset_[k] + next[k]] = w;
      ++next[k];
    }
  }

  int n() const noexcept { return n_; }

  Rank rank(std::uint64_t w) const {
    if (!rank_.empty()) {
      const auto& e = rank_[w];
      return {e.k, e.i};
    }
    BlockWord bw{w, n_};
    return {weight(bw), index(bw)};
  }

  std::uint64_t unrank(int k, std::uint64_t i) const {
    if (!words_.empty()) return words_[offset_[k] + i];
    return word(n_, k, i).value;
  }

 private:
  struct Entry {
    std::uint8_t k;
    std::uint32_t i;
  };

  int n_;
  std::vector<Entry> rank_;
  std::vector<std::uint64_t> offset_;
  std::vector<std::uint32_t> words_;
};

}  // namespace blade
