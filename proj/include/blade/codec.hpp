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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bitio.hpp"
#include "codebook.hpp"
#include "enumeration.hpp"

namespace blade {

namespace detail {

inline void put_ranked(int k, std::uint64_t i, const CodeTable& table, BitStream& out) {
  int s = table.sg[k][0];
  if (i >= table.nk[k]) {
    i -= table.nk[k];
    s = table.sg[k][1];
  }
  const Subgroup& g = table.subgroups[s];
  out.write_bits(g.base + i, static_cast<unsigned>(g.len));
}

}  // namespace detail

// Writes the codeword of w; returns its weight.
inline int encode_block(std::uint64_t w, const CodeTable& table, const BlockEnumerator& en,
                        BitStream& out) {
  auto [k, i] = en.rank(w);
  detail::put_ranked(k, i, table, out);
  return k;
}

// Same, ranking w on the fly.
inline int encode_block(BlockWord w, const CodeTable& table, BitStream& out) {
  if (w.n != table.n) throw ContractViolation("encode_block: word and table lengths differ");
  int k = weight(w);
  detail::put_ranked(k, index(w), table, out);
  return k;
}

struct DecodedBlock {
  std::uint64_t word;
  int k;
};

namespace detail {

struct UnrankOnTheFly {
  int n;
  std::uint64_t unrank(int k, std::uint64_t i) const { return word(n, k, i).value; }
};

// Threshold scan over left-justified bases, then unranking.
template <typename Unranker>
DecodedBlock decode_with(const DecoderTable& table, const Unranker& en, BitStream& in) {
  std::uint64_t window = in.peek_window();
  std::size_t s = 0;
  while (table.entries[s].lj_base > window) ++s;  // last lj_base is 0
  const DecoderEntry& e = table.entries[s];
  in.consume(static_cast<unsigned>(e.len));
  std::uint64_t i = (window - e.lj_base) >> (kWindowBits - e.len);
  if (e.j) i += table.nk[e.k];
  return {en.unrank(e.k, i), e.k};
}

}  // namespace detail

inline DecodedBlock decode_block(const DecoderTable& table, const BlockEnumerator& en, BitStream& in) {
  return detail::decode_with(table, en, in);
}

inline std::pair<BlockWord, int> decode_block(const DecoderTable& table, BitStream& in) {
  auto d = detail::decode_with(table, detail::UnrankOnTheFly{table.n}, in);
  return {BlockWord{d.word, table.n}, d.k};
}

// Context bookkeeping shared by both directions. Block 0 has no context,
// block 1 uses the weight of block 0 (t = n), later blocks use the summed
// weights of the two previous blocks (t = 2n).
class AdaptiveCoderState {
 public:
  explicit AdaptiveCoderState(int n) : n_(n) {}

  struct Selection {
    std::size_t slot;
    bool flip;
  };

  Selection select(const ContextSet& set) const {
    if (block_counter_ == 0) return {0, false};
    if (block_counter_ == 1) {
      int cx = *cx1_;
      if (cx > n_ / 2) return {set.single_slot(n_ - cx), true};
      return {set.single_slot(cx), false};
    }
    int cx = *cx1_ + *cx2_;
    if (cx > n_) return {set.double_slot(2 * n_ - cx), true};
    return {set.double_slot(cx), false};
  }

  void advance(int k) {
    if (block_counter_ == 0) {
      cx1_ = k;
    } else if (block_counter_ == 1) {
      cx2_ = k;
    } else {
      cx1_ = cx2_;
      cx2_ = k;
    }
    ++block_counter_;
  }

  int n() const noexcept { return n_; }
  std::optional<int> cx1() const noexcept { return cx1_; }
  std::optional<int> cx2() const noexcept { return cx2_; }
  std::uint64_t block_counter() const noexcept { return block_counter_; }

  friend bool operator==(const AdaptiveCoderState&, const AdaptiveCoderState&) = default;

 private:
  int n_;
  std::optional<int> cx1_, cx2_;
  std::uint64_t block_counter_ = 0;
};

class AdaptiveEncoder {
 public:
  AdaptiveEncoder(std::shared_ptr<const ContextSet> set, std::shared_ptr<const BlockEnumerator> en)
      : set_(std::move(set)), en_(std::move(en)), state_(set_->n) {
    if (en_->n() != set_->n) throw ContractViolation("enumerator and context set lengths differ");
  }
  explicit AdaptiveEncoder(std::shared_ptr<const ContextSet> set)
      : AdaptiveEncoder(set, std::make_shared<BlockEnumerator>(set->n)) {}

  // Returns the block's weight.
  int encode(std::uint64_t block, BitStream& out) {
    const int n = set_->n;
    if ((block >> n) != 0) throw ContractViolation("block does not fit in n bits");
    auto sel = state_.select(*set_);
    int k = encode_block(sel.flip ? block ^ all_ones(n) : block, set_->tables[sel.slot], *en_, out);
    if (sel.flip) k = n - k;
    state_.advance(k);
    return k;
  }

  const AdaptiveCoderState& state() const noexcept { return state_; }

 private:
  std::shared_ptr<const ContextSet> set_;
  std::shared_ptr<const BlockEnumerator> en_;
  AdaptiveCoderState state_;
};

class AdaptiveDecoder {
 public:
  AdaptiveDecoder(std::shared_ptr<const ContextSet> set, std::shared_ptr<const BlockEnumerator> en)
      : set_(std::move(set)), en_(std::move(en)), state_(set_->n) {
    if (en_->n() != set_->n) throw ContractViolation("enumerator and context set lengths differ");
  }
  explicit AdaptiveDecoder(std::shared_ptr<const ContextSet> set)
      : AdaptiveDecoder(set, std::make_shared<BlockEnumerator>(set->n)) {}

  std::uint64_t decode(BitStream& in) {
    const int n = set_->n;
    auto sel = state_.select(*set_);
    auto d = decode_block(set_->decoders[sel.slot], *en_, in);
    if (sel.flip) {
      d.word ^= all_ones(n);
      d.k = n - d.k;
    }
    state_.advance(d.k);
    return d.word;
  }

  const AdaptiveCoderState& state() const noexcept { return state_; }

 private:
  std::shared_ptr<const ContextSet> set_;
  std::shared_ptr<const BlockEnumerator> en_;
  AdaptiveCoderState state_;
};

inline void encode_adaptive(std::span<const std::uint64_t> blocks,
                            std::shared_ptr<const ContextSet> set, BitStream& out) {
  AdaptiveEncoder enc(std::move(set));
  for (auto b : blocks) enc.encode(b, out);
}

// Decodes exactly `count` blocks; the stream must end where the last block
// ends.
inline std::vector<std::uint64_t> decode_adaptive(BitStream& in, std::shared_ptr<const ContextSet> set,
                                                  std::size_t count) {
  AdaptiveDecoder dec(std::move(set));
  std::vector<std::uint64_t> blocks;
  blocks.reserve(count);
  for (std::size_t i = 0; i < count; ++i) blocks.push_back(dec.decode(in));
  if (in.remaining() != 0) throw CorruptInput("bits left over after the expected number of blocks");
  return blocks;
}

}  // namespace blade
