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

#include <random>

#include <gtest/gtest.h>

#include <blade/codec.hpp>
#include <blade/harness.hpp>

namespace blade {
namespace {

// The example table lists p^k q^(n-k) at p = 1/10: block 0000 is the likeliest.
CodeTable table1() { return build_code(weight_distribution(DensityKind::bernoulli(Rational(1, 10)), 4)); }

BitStream from_string(const std::string& bits) {
  BitStream bs;
  for (char c : bits) bs.write_bits(c == '1', 1);
  return bs;
}

TEST(Codec, EncodesExampleRows) {
  auto t = table1();
  BitStream a;
  EXPECT_EQ(encode_block(make_word(0b0110, 4), t, a), 2);
  EXPECT_EQ(a.to_string(), "0000010");
  BitStream b;
  EXPECT_EQ(encode_block(make_word(0, 4), t, b), 0);
  EXPECT_EQ(b.to_string(), "1");

  auto u = build_code(weight_distribution(DensityKind::kt_universal(), 12));
  BitStream c;
  EXPECT_EQ(encode_block(make_word(0, 12), u, c), 0);
  EXPECT_EQ(c.to_string(), "111");
}

TEST(Codec, DecodesExampleRows) {
  auto d = to_decoder_table(table1());
  auto s1 = from_string("0000010101");
  auto [w1, k1] = decode_block(d, s1);
  EXPECT_EQ(w1.value, 0b0110u);
  EXPECT_EQ(k1, 2);
  EXPECT_EQ(s1.cursor(), 7u);
  auto s2 = from_string("1");
  auto [w2, k2] = decode_block(d, s2);
  EXPECT_EQ(w2.value, 0u);
  EXPECT_EQ(k2, 0);
}

TEST(Codec, EveryTableRoundTripsEveryBlock) {
  for (int n : {4, 8, 12}) {
    auto set = build_context_set(n);
    BlockEnumerator en(n);
    for (std::size_t i = 0; i < set.tables.size(); ++i) {
      BitStream bs;
      for (std::uint64_t w = 0; w < (1ull << n); ++w) encode_block(w, set.tables[i], en, bs);
      bs.rewind();
      for (std::uint64_t w = 0; w < (1ull << n); ++w) {
        auto d = decode_block(set.decoders[i], en, bs);
        ASSERT_EQ(d.word, w);
        ASSERT_EQ(d.k, std::popcount(w));
      }
      ASSERT_EQ(bs.remaining(), 0u);
    }
  }
}

TEST(Codec, OnTheFlyPathMatchesLookupPath) {
  auto set = build_context_set(12);
  BlockEnumerator en(12);
  for (std::size_t i = 0; i < set.tables.size(); i += 4) {
    for (std::uint64_t w = 0; w < 4096; w += 7) {
      BitStream a, b;
      encode_block(w, set.tables[i], en, a);
      encode_block(make_word(w, 12), set.tables[i], b);
      ASSERT_EQ(a.to_string(), b.to_string());
      auto [bw, k] = decode_block(set.decoders[i], b);
      ASSERT_EQ(bw.value, w);
    }
  }
}

TEST(Codec, TruncatedStreamIsCorruptInput) {
  auto d = to_decoder_table(table1());
  auto s = from_string("000000");
  EXPECT_THROW(decode_block(d, s), CorruptInput);
}

TEST(Adaptive, FirstBlockUsesUniversalTable) {
  auto set = std::make_shared<const ContextSet>(build_context_set(8));
  BlockEnumerator en(8);
  for (std::uint64_t w = 0; w < 256; ++w) {
    BitStream a, b;
    AdaptiveEncoder enc(set);
    enc.encode(w, a);
    encode_block(w, set->tables[0], en, b);
    ASSERT_EQ(a.to_string(), b.to_string());
  }
}

TEST(Adaptive, AllTwoBlockSequencesAtFour) {
  auto set = std::make_shared<const ContextSet>(build_context_set(4));
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) {
      std::vector<std::uint64_t> blocks{a, b};
      BitStream bs;
      encode_adaptive(blocks, set, bs);
      bs.rewind();
      ASSERT_EQ(decode_adaptive(bs, set, 2), blocks);
    }
}

TEST(Adaptive, ContextsSelectExpectedSlots) {
  auto set = build_context_set(8);
  AdaptiveCoderState st(8);
  auto s0 = st.select(set);
  EXPECT_EQ(s0.slot, 0u);
  st.advance(6);
  auto s1 = st.select(set);
  EXPECT_TRUE(s1.flip);
  EXPECT_EQ(s1.slot, set.single_slot(2));
  st.advance(7);
  auto s2 = st.select(set);
  EXPECT_TRUE(s2.flip);
  EXPECT_EQ(s2.slot, set.double_slot(3));
  st.advance(1);
  auto s3 = st.select(set);
  EXPECT_FALSE(s3.flip);
  EXPECT_EQ(s3.slot, set.double_slot(8));
}

TEST(Adaptive, RandomLongSequencesStayInStep) {
  auto set = std::make_shared<const ContextSet>(build_context_set(16));
  auto en = std::make_shared<const BlockEnumerator>(16);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    double p = 0.02 + 0.96 * (rng() % 1000) / 1000.0;
    BernoulliSource src(p, rng());
    std::vector<std::uint64_t> blocks(64);
    for (auto& b : blocks) b = src.next_block(16);
    BitStream bs;
    AdaptiveEncoder enc(set, en);
    AdaptiveDecoder dec(set, en);
    for (auto b : blocks) enc.encode(b, bs);
    bs.rewind();
    AdaptiveCoderState replay(16);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      ASSERT_EQ(dec.decode(bs), blocks[j]);
      replay.advance(std::popcount(blocks[j]));
      ASSERT_EQ(dec.state(), replay);
    }
    ASSERT_EQ(enc.state(), dec.state());
    ASSERT_EQ(bs.remaining(), 0u);
  }
}

TEST(Adaptive, ComplementedSequencesCostTheSame) {
  auto set = std::make_shared<const ContextSet>(build_context_set(8));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint64_t> blocks(1 + rng() % 12), flipped;
    for (auto& b : blocks) {
      b = rng() & 0xFF;
      flipped.push_back(b ^ 0xFF);
    }
    BitStream a, b;
    encode_adaptive(blocks, set, a);
    encode_adaptive(flipped, set, b);
    ASSERT_EQ(a.bit_length(), b.bit_length());
  }
}

TEST(Adaptive, LeftoverBitsAreRejected) {
  auto set = std::make_shared<const ContextSet>(build_context_set(4));
  std::vector<std::uint64_t> blocks{3, 5, 9};
  BitStream bs;
  encode_adaptive(blocks, set, bs);
  bs.rewind();
  EXPECT_THROW(decode_adaptive(bs, set, 2), CorruptInput);
  bs.rewind();
  EXPECT_THROW(decode_adaptive(bs, set, 4), CorruptInput);
}

}  // namespace
}  // namespace blade
