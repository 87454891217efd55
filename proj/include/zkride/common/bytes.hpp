// Copyright 2026 The zkride Authors.
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

#ifndef ZKRIDE_COMMON_BYTES_HPP_
#define ZKRIDE_COMMON_BYTES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zkride {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

std::string to_hex(ByteSpan bytes);

// Accepts upper or lower case; throws DecodeError on odd length or bad digits.
Bytes from_hex(std::string_view hex);

inline ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
  auto b = as_bytes(s);
  return {b.begin(), b.end()};
}

// True iff `needle` occurs contiguously inside `haystack`. Empty needles never match.
bool contains_subsequence(ByteSpan haystack, ByteSpan needle);

// Escapes tab, newline, carriage return and backslash for tab-separated lines.
std::string escape_field(std::string_view s);

// Big-endian, length-prefixed writer used by every canonical encoding in the project.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void raw(ByteSpan b) { out_.insert(out_.end(), b.begin(), b.end()); }
  // 4-byte big-endian length followed by the bytes.
  void str(std::string_view s);
  void blob(ByteSpan b);

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(ByteSpan in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  ByteSpan raw(std::size_t n);
  std::string str();
  Bytes blob();

  template <std::size_t N>
  std::array<std::uint8_t, N> fixed() {
    std::array<std::uint8_t, N> out{};
    auto b = raw(N);
    std::copy(b.begin(), b.end(), out.begin());
    return out;
  }

  std::size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }
  // Throws DecodeError when trailing bytes remain.
  void expect_done() const;

 private:
  ByteSpan in_;
  std::size_t pos_ = 0;
};

}  // namespace zkride

#endif  // ZKRIDE_COMMON_BYTES_HPP_
