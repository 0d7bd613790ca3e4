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

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace blade {

// Width of the decoder's look-ahead window.
inline constexpr unsigned kWindowBits = 64;

// MSB-first bit buffer. The first bit written is the most significant bit of
// the first octet; a trailing partial octet is zero padded and bit_length()
// is authoritative. Writing appends at the end, reading uses an independent
// cursor that starts at bit 0.
class BitStream {
 public:
  BitStream() = default;

  // Adopts a packed buffer. Bits past bit_length are cleared.
  static BitStream from_bytes(std::vector<std::uint8_t> bytes,
                              std::uint64_t bit_length) {
    if (bit_length > bytes.size() * 8ull)
      throw CorruptInput("bit length exceeds buffer size");
    bytes.resize((bit_length + 7) / 8);
    if (bit_length % 8 != 0) {
      unsigned keep = bit_length % 8;
      bytes.back() &= static_cast<std::uint8_t>(0xFFu << (8 - keep));
    }
    BitStream bs;
    bs.bytes_ = std::move(bytes);
    bs.bit_length_ = bit_length;
    return bs;
  }

  // Appends the len low-order bits of code, most significant first.
  void write_bits(std::uint64_t code, unsigned len) {
    if (len < 1 || len > 64) throw ContractViolation("write_bits: len must be in 1..64");
    if (len < 64 && (code >> len) != 0)
      throw ContractViolation("write_bits: code does not fit in len bits");
    while (len > 0) {
      unsigned used = static_cast<unsigned>(bit_length_ % 8);
      if (used == 0) bytes_.push_back(0);
      unsigned free = 8 - used;
      unsigned take = std::min(free, len);
      auto chunk = static_cast<std::uint8_t>((code >> (len - take)) & ((1u << take) - 1));
      bytes_.back() |= static_cast<std::uint8_t>(chunk << (free - take));
      bit_length_ += take;
      len -= take;
    }
  }

  // Next 64 unread bits, left-justified; bits past the end read as zero.
  std::uint64_t peek_window() const {
    std::size_t byte = cursor_ / 8;
    unsigned offset = static_cast<unsigned>(cursor_ % 8);
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < 9; ++i) {
      acc <<= 8;
      if (byte + i < bytes_.size()) acc |= bytes_[byte + i];
    }
    // acc holds 72 bits; drop the offset bits already consumed.
    auto window = static_cast<std::uint64_t>(acc >> (8 - offset));
    std::uint64_t left = bit_length_ - cursor_;
    if (left < 64) window &= left == 0 ? 0 : ~0ull << (64 - left);
    return window;
  }

  void consume(unsigned len) {
    if (len > bit_length_ - cursor_)
      throw CorruptInput("truncated bitstream: consume past end");
    cursor_ += len;
  }

  std::uint64_t read_bits(unsigned len) {
    if (len < 1 || len > 64) throw ContractViolation("read_bits: len must be in 1..64");
    std::uint64_t v = peek_window() >> (64 - len);
    consume(len);
    return v;
  }

  void rewind() noexcept { cursor_ = 0; }

  std::uint64_t bit_length() const noexcept { return bit_length_; }
  std::uint64_t cursor() const noexcept { return cursor_; }
  std::uint64_t remaining() const noexcept { return bit_length_ - cursor_; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  // "0101..." rendering of the written bits; test helper.
  std::string to_string() const {
    std::string s;
    s.reserve(bit_length_);
    for (std::uint64_t i = 0; i < bit_length_; ++i)
      s.push_back((bytes_[i / 8] >> (7 - i % 8)) & 1 ? '1' : '0');
    return s;
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_length_ = 0;
  std::uint64_t cursor_ = 0;
};

// Encoded payload file: 8-byte little-endian bit count, then packed octets.
inline std::vector<std::uint8_t> encode_payload(const BitStream& bs) {
  auto body = bs.bytes();
  std::vector<std::uint8_t> out(8 + body.size());
  std::uint64_t bits = bs.bit_length();
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(bits >> (8 * i));
  for (std::size_t i = 0; i < body.size(); ++i) out[8 + i] = body[i];
  return out;
}

inline BitStream decode_payload(std::span<const std::uint8_t> file) {
  if (file.size() < 8) throw CorruptInput("payload shorter than its header");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(file[i]) << (8 * i);
  std::uint64_t body = file.size() - 8;
  if (bits > body * 8 || (bits + 7) / 8 != body)
    throw CorruptInput("payload size does not match header bit length");
  return BitStream::from_bytes({file.begin() + 8, file.end()}, bits);
}

}  // namespace blade
