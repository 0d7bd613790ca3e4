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

// Minimum-redundancy block codes over weight classes.
//
// All words of weight k are equiprobable, so an optimal code gives them at
// most two adjacent lengths. The words of the class are kept in lexicographic
// order and split at nk: ranks below nk get the shorter length. Each
// non-empty (k, j) subgroup stores one base codeword; the code of the word of
// rank i is base + i (or base + i - nk in the longer subgroup).

#include <algorithm>
#include <array>
#include <memory>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitio.hpp"
#include "densities.hpp"
#include "enumeration.hpp"
#include "numeric.hpp"

namespace blade {

inline constexpr int kMaxCodeLength = 64;
inline constexpr int kMaxTableBits = 24;

// Words of weight k with rank < nk[k] get len[k] bits, the rest len[k] + 1.
struct GroupLengths {
  int n = 0;
  std::vector<int> len;
  std::vector<std::uint64_t> nk;

  std::uint64_t long_count(int k) const { return binomial(n, k) - nk[k]; }

  int max_length() const {
    int m = 0;
    for (int k = 0; k <= n; ++k) m = std::max(m, len[k] + (long_count(k) ? 1 : 0));
    return m;
  }

  int subgroup_count() const {
    int s = 0;
    for (int k = 0; k <= n; ++k) s += long_count(k) ? 2 : 1;
    return s;
  }

  // Code length of the word of weight k and rank i.
  int length_of(int k, std::uint64_t i) const { return i < nk[k] ? len[k] : len[k] + 1; }

  // Sum over the class of the code lengths, C(n,k) * average.
  std::uint64_t class_bits(int k) const {
    return nk[k] * static_cast<std::uint64_t>(len[k]) +
           long_count(k) * static_cast<std::uint64_t>(len[k] + 1);
  }

  friend bool operator==(const GroupLengths&, const GroupLengths&) = default;
};

namespace detail {

struct DepthCount {
  int k;
  int depth;
  std::uint64_t count;
};

// Leaves below one node, by (class, depth), sorted.
using Profile = std::vector<DepthCount>;

inline std::shared_ptr<const Profile> merge_profiles(const Profile& a, std::uint64_t ma,
                                                     const Profile& b, std::uint64_t mb) {
  auto out = std::make_shared<Profile>();
  out->reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto less = [](const DepthCount& x, const DepthCount& y) {
    return x.k != y.k ? x.k < y.k : x.depth < y.depth;
  };
  while (i < a.size() || j < b.size()) {
    DepthCount next;
    if (j == b.size() || (i < a.size() && less(a[i], b[j]))) {
      next = {a[i].k, a[i].depth + 1, a[i].count * ma};
      ++i;
    } else if (i == a.size() || less(b[j], a[i])) {
      next = {b[j].k, b[j].depth + 1, b[j].count * mb};
      ++j;
    } else {
      next = {a[i].k, a[i].depth + 1, a[i].count * ma + b[j].count * mb};
      ++i;
      ++j;
    }
    out->push_back(next);
  }
  return out;
}

// `count` identical subtrees of total weight `weight` each.
struct Run {
  BigInt weight;
  std::pair<int, int> key;  // smallest (min(k, n-k), k) of any class inside
  std::uint64_t seq;
  std::uint64_t count;
  std::shared_ptr<const Profile> profile;
};

// Pops lighter runs first. Among equal weights the run holding the larger
// key is merged first, so classes near k = 0 and k = n stay shallower.
struct RunAfter {
  bool operator()(const Run& a, const Run& b) const {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.key != b.key) return a.key < b.key;
    return a.seq > b.seq;
  }
};

}  // namespace detail

// Huffman code lengths for the multiset in which class k holds C(n,k) items
// of weight class_weights[k]. Equal items are merged in bulk, so the work is
// polynomial in n. Lengths are not capped.
inline GroupLengths huffman_group_lengths(std::span<const BigInt> class_weights) {
  if (class_weights.size() < 2) throw ContractViolation("huffman: need at least two classes");
  const int n = static_cast<int>(class_weights.size()) - 1;
  if (n > kMaxTableBits) throw UnsupportedConfiguration("huffman: block length above 24");
  for (const auto& w : class_weights)
    if (w <= 0) throw ContractViolation("huffman: weights must be positive");

  std::priority_queue<detail::Run, std::vector<detail::Run>, detail::RunAfter> queue;
  std::uint64_t seq = 0;
  for (int k = 0; k <= n; ++k) {
    auto leaf = std::make_shared<detail::Profile>(detail::Profile{{k, 0, 1}});
    queue.push({class_weights[k], {std::min(k, n - k), k}, seq++, binomial(n, k), leaf});
  }

  std::shared_ptr<const detail::Profile> root;
  while (true) {
    detail::Run a = queue.top();
    queue.pop();
    if (a.count == 1 && queue.empty()) {
      root = a.profile;
      break;
    }
    if (a.count >= 2) {
      queue.push({a.weight * 2, a.key, seq++, a.count / 2,
                  detail::merge_profiles(*a.profile, 2, {}, 0)});
      if (a.count % 2) {
        a.count = 1;
        queue.push(std::move(a));
      }
      continue;
    }
    detail::Run b = queue.top();
    queue.pop();
    if (b.count > 1) {
      detail::Run rest = b;
      rest.count -= 1;
      queue.push(std::move(rest));
    }
    queue.push({a.weight + b.weight, std::min(a.key, b.key), seq++, 1,
                detail::merge_profiles(*a.profile, 1, *b.profile, 1)});
  }

  GroupLengths g{n, std::vector<int>(n + 1, -1), std::vector<std::uint64_t>(n + 1, 0)};
  std::vector<std::uint64_t> seen(n + 1, 0);
  for (const auto& dc : *root) {
    if (g.len[dc.k] < 0) {
      g.len[dc.k] = dc.depth;
      g.nk[dc.k] = dc.count;
    } else if (dc.depth != g.len[dc.k] + 1 || seen[dc.k] != g.nk[dc.k]) {
      throw ValidationError("huffman: a weight class spans non-adjacent lengths");
    }
    seen[dc.k] += dc.count;
  }
  for (int k = 0; k <= n; ++k)
    if (seen[k] != binomial(n, k)) throw ValidationError("huffman: leaf count mismatch");
  return g;
}

inline GroupLengths huffman_group_lengths(const WeightDistribution& dist) {
  auto w = integer_weights(dist);
  return huffman_group_lengths(std::span<const BigInt>(w));
}

enum class TableKind { universal, conditional, bernoulli };

inline const char* to_string(TableKind kind) {
  switch (kind) {
    case TableKind::universal: return "universal";
    case TableKind::conditional: return "cond";
    case TableKind::bernoulli: return "bernoulli";
  }
  return "?";
}

// Which density a table was built for.
struct TableTag {
  TableKind kind = TableKind::universal;
  int t = 0;
  int s = 0;

  friend bool operator==(const TableTag&, const TableTag&) = default;
};

inline TableTag tag_of(const DensityKind& kind) {
  switch (kind.family) {
    case DensityFamily::bernoulli: return {TableKind::bernoulli, 0, 0};
    case DensityFamily::kt_universal: return {TableKind::universal, 0, 0};
    case DensityFamily::kt_conditional: return {TableKind::conditional, kind.t, kind.s};
  }
  return {};
}

struct Subgroup {
  int k = 0;
  int j = 0;  // 0: shorter codewords of the class, 1: one bit longer
  int len = 0;
  std::uint64_t base = 0;
  std::uint64_t count = 0;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

// Encoder-side table. Subgroups are listed in decreasing codeword order,
// which is also the decoder's scan order.
struct CodeTable {
  int n = 0;
  TableTag tag;
  std::vector<std::uint64_t> nk;
  std::vector<std::array<int, 2>> sg;  // (k, j) -> position in subgroups, -1 if empty
  std::vector<Subgroup> subgroups;

  std::size_t subgroup_count() const noexcept { return subgroups.size(); }

  const Subgroup& subgroup(int k, int j) const {
    int s = sg.at(k)[j];
    if (s < 0) throw ContractViolation("subgroup: (k, j) is empty");
    return subgroups[s];
  }

  GroupLengths group_lengths() const {
    GroupLengths g{n, std::vector<int>(n + 1), nk};
    for (int k = 0; k <= n; ++k) g.len[k] = subgroup(k, 0).len;
    return g;
  }

  friend bool operator==(const CodeTable&, const CodeTable&) = default;
};

namespace detail {

inline void rebuild_subgroup_map(CodeTable& table) {
  table.sg.assign(table.n + 1, {-1, -1});
  for (std::size_t s = 0; s < table.subgroups.size(); ++s) {
    const auto& g = table.subgroups[s];
    if (g.k < 0 || g.k > table.n || (g.j != 0 && g.j != 1))
      throw ValidationError("subgroup (k, j) out of range");
    if (table.sg[g.k][g.j] >= 0) throw ValidationError("duplicate subgroup (k, j)");
    table.sg[g.k][g.j] = static_cast<int>(s);
  }
}

}  // namespace detail

// Re-checks every structural invariant; throws ValidationError.
inline void validate(const CodeTable& table) {
  const int n = table.n;
  if (n < 1 || n > kMaxTableBits) throw ValidationError("table block length out of range");
  if (table.nk.size() != static_cast<std::size_t>(n + 1)) throw ValidationError("nk has wrong size");
  const auto S = table.subgroups.size();
  if (S < static_cast<std::size_t>(n + 1) || S > static_cast<std::size_t>(2 * n))
    throw ValidationError("subgroup count outside [n+1, 2n]");

  CodeTable copy = table;
  detail::rebuild_subgroup_map(copy);
  if (copy.sg != table.sg) throw ValidationError("subgroup map inconsistent with subgroups");

  for (int k = 0; k <= n; ++k) {
    std::uint64_t size = binomial(n, k);
    if (table.nk[k] < 1 || table.nk[k] > size) throw ValidationError("nk out of range");
    if (table.sg[k][0] < 0) throw ValidationError("weight class without a first subgroup");
    bool split = table.nk[k] < size;
    if (split != (table.sg[k][1] >= 0)) throw ValidationError("second subgroup presence disagrees with nk");
    if (split && table.subgroups[table.sg[k][1]].len != table.subgroups[table.sg[k][0]].len + 1)
      throw ValidationError("subgroup lengths of a class are not adjacent");
  }

  // The subgroups must tile [0, 2^64) from the top down when left-justified:
  // this is Kraft equality plus threshold decodability.
  unsigned __int128 end = static_cast<unsigned __int128>(1) << 64;
  for (const auto& g : table.subgroups) {
    if (g.len < 1 || g.len > kMaxCodeLength) throw ValidationError("code length out of range");
    std::uint64_t expect = g.j == 0 ? table.nk[g.k] : binomial(n, g.k) - table.nk[g.k];
    if (g.count != expect) throw ValidationError("subgroup count disagrees with nk");
    unsigned __int128 span = static_cast<unsigned __int128>(g.count) << (64 - g.len);
    unsigned __int128 lj = static_cast<unsigned __int128>(g.base) << (64 - g.len);
    if (g.len < 64 && (static_cast<unsigned __int128>(g.base) + g.count) >
                          (static_cast<unsigned __int128>(1) << g.len))
      throw ValidationError("codewords overflow their length");
    if (lj + span != end) throw ValidationError("codewords do not tile the code space (Kraft violation)");
    end = lj;
  }
  if (end != 0) throw ValidationError("codewords do not tile the code space (Kraft violation)");
}

// sum over all codewords of 2^-len
inline Rational kraft_sum(const CodeTable& table) {
  Rational sum = 0;
  for (const auto& g : table.subgroups)
    sum += Rational(BigInt(g.count), BigInt(1) << g.len);
  return sum;
}

// Canonical bases for a length structure. Codes are handed out in increasing
// value from the longest length up; within one length, higher weights get
// the smaller values. When the length drops the running value is rounded up
// to the next multiple of the length difference.
inline CodeTable make_code_table(const GroupLengths& lengths, TableTag tag = {}) {
  const int n = lengths.n;
  if (lengths.max_length() > kMaxCodeLength)
    throw UnsupportedConfiguration("code length exceeds the 64-bit decoder window");
  CodeTable table;
  table.n = n;
  table.tag = tag;
  table.nk = lengths.nk;
  std::vector<Subgroup> order;
  for (int k = 0; k <= n; ++k) {
    order.push_back({k, 0, lengths.len[k], 0, lengths.nk[k]});
    if (lengths.long_count(k)) order.push_back({k, 1, lengths.len[k] + 1, 0, lengths.long_count(k)});
  }
  std::sort(order.begin(), order.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.len != b.len) return a.len > b.len;
    if (a.k != b.k) return a.k > b.k;
    return a.j > b.j;
  });
  unsigned __int128 value = 0;
  int cur = order.front().len;
  for (auto& g : order) {
    if (g.len < cur) {
      unsigned shift = static_cast<unsigned>(cur - g.len);
      value = (value + ((static_cast<unsigned __int128>(1) << shift) - 1)) >> shift;
      cur = g.len;
    }
    g.base = static_cast<std::uint64_t>(value);
    value += g.count;
  }
  if (value != (static_cast<unsigned __int128>(1) << cur))
    throw ValidationError("code lengths do not form a complete prefix code");
  table.subgroups.assign(order.rbegin(), order.rend());
  detail::rebuild_subgroup_map(table);
  return table;
}

// Optimal code for the distribution, in canonical form.
inline CodeTable build_code(const WeightDistribution& dist) {
  if (dist.probs.size() != static_cast<std::size_t>(dist.n + 1))
    throw ContractViolation("build_code: distribution has wrong size");
  for (const auto& p : dist.probs)
    if (p <= 0) throw ContractViolation("build_code: probabilities must be positive");
  if (dist.total() != 1) throw ContractViolation("build_code: distribution is not normalized");
  return make_code_table(huffman_group_lengths(dist), tag_of(dist.kind));
}

struct DecoderEntry {
  std::uint64_t lj_base = 0;  // base << (64 - len)
  int len = 0;
  int k = 0;
  int j = 0;

  friend bool operator==(const DecoderEntry&, const DecoderEntry&) = default;
};

// Decoder-side table: entries sorted by strictly decreasing lj_base, the
// last one being 0.
struct DecoderTable {
  int n = 0;
  std::vector<std::uint64_t> nk;
  std::vector<DecoderEntry> entries;

  friend bool operator==(const DecoderTable&, const DecoderTable&) = default;
};

inline DecoderTable to_decoder_table(const CodeTable& code) {
  DecoderTable dec{code.n, code.nk, {}};
  dec.entries.reserve(code.subgroups.size());
  for (const auto& g : code.subgroups) {
    std::uint64_t lj = g.base << (kWindowBits - g.len);
    if (!dec.entries.empty() && dec.entries.back().lj_base <= lj)
      throw ValidationError("left-justified bases are not strictly decreasing");
    dec.entries.push_back({lj, g.len, g.k, g.j});
  }
  if (dec.entries.empty() || dec.entries.back().lj_base != 0)
    throw ValidationError("last left-justified base is not zero");
  return dec;
}

// Encoder bases recovered from a decoder table, in entry order.
inline std::vector<std::uint64_t> recover_bases(const DecoderTable& dec) {
  std::vector<std::uint64_t> bases;
  bases.reserve(dec.entries.size());
  for (const auto& e : dec.entries) bases.push_back(e.lj_base >> (kWindowBits - e.len));
  return bases;
}

// The tables of the adaptive coder for one block length:
//   [0]                  universal (no sample)
//   [1 + s]              sample of one block,  t = n,  s = 0..n/2
//   [2 + n/2 + s]        sample of two blocks, t = 2n, s = 0..n
// Samples heavier than half their length are served by the table of t - s
// with the block complemented.
struct ContextSet {
  int n = 0;
  std::vector<CodeTable> tables;
  std::vector<DecoderTable> decoders;

  static std::size_t table_count(int n) {
    return 1 + static_cast<std::size_t>(n / 2 + 1) + static_cast<std::size_t>(n + 1);
  }
  std::size_t single_slot(int s) const { return 1 + static_cast<std::size_t>(s); }
  std::size_t double_slot(int s) const {
    return 2 + static_cast<std::size_t>(n / 2) + static_cast<std::size_t>(s);
  }

  // Expected tag of every slot.
  static std::vector<TableTag> layout(int n) {
    std::vector<TableTag> tags{{TableKind::universal, 0, 0}};
    for (int s = 0; s <= n / 2; ++s) tags.push_back({TableKind::conditional, n, s});
    for (int s = 0; s <= n; ++s) tags.push_back({TableKind::conditional, 2 * n, s});
    return tags;
  }
};

inline void check_context_block_length(int n) {
  if (n < 4 || n > 20 || n % 2 != 0)
    throw UnsupportedConfiguration("context sets need an even block length in 4..20");
}

// Validates the tables against the layout and derives decoder tables.
inline ContextSet assemble_context_set(int n, std::vector<CodeTable> tables) {
  check_context_block_length(n);
  auto tags = ContextSet::layout(n);
  if (tables.size() != tags.size()) throw ValidationError("context set has the wrong number of tables");
  ContextSet set{n, std::move(tables), {}};
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto& t = set.tables[i];
    if (t.n != n) throw ValidationError("context table block length mismatch");
    if (t.tag != tags[i]) throw ValidationError("context table out of order");
    validate(t);
    set.decoders.push_back(to_decoder_table(t));
  }
  return set;
}

inline ContextSet build_context_set(int n) {
  check_context_block_length(n);
  std::vector<CodeTable> tables;
  for (const auto& tag : ContextSet::layout(n)) {
    auto kind = tag.kind == TableKind::universal ? DensityKind::kt_universal()
                                                 : DensityKind::kt_conditional(tag.t, tag.s);
    tables.push_back(build_code(weight_distribution(kind, n)));
  }
  return assemble_context_set(n, std::move(tables));
}

}  // namespace blade
