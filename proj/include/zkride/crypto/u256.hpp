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

#ifndef ZKRIDE_CRYPTO_U256_HPP_
#define ZKRIDE_CRYPTO_U256_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace zkride::crypto {

// Unsigned 256-bit integer, little-endian 64-bit limbs. Only what the curve
// code needs: comparisons, add/sub with carry, bit access, byte codecs.
struct U256 {
  std::array<std::uint64_t, 4> limb{};

  constexpr U256() = default;
  constexpr explicit U256(std::uint64_t v) : limb{v, 0, 0, 0} {}
  constexpr U256(std::uint64_t l0, std::uint64_t l1, std::uint64_t l2, std::uint64_t l3)
      : limb{l0, l1, l2, l3} {}

  // Compile-time literal parsing; malformed literals fail to compile.
  static consteval U256 from_hex(std::string_view hex);
  static U256 from_be_bytes(std::span<const std::uint8_t, 32> bytes);
  std::array<std::uint8_t, 32> to_be_bytes() const;

  constexpr bool is_zero() const { return (limb[0] | limb[1] | limb[2] | limb[3]) == 0; }
  constexpr bool bit(unsigned i) const { return (limb[i / 64] >> (i % 64)) & 1u; }
  constexpr unsigned bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (limb[i] != 0) return static_cast<unsigned>(i * 64 + 64 - __builtin_clzll(limb[i]));
    }
    return 0;
  }

  friend constexpr bool operator==(const U256&, const U256&) = default;
  friend constexpr bool operator<(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i];
    }
    return false;
  }
  friend constexpr bool operator>=(const U256& a, const U256& b) { return !(a < b); }
};

// out = a + b, returns the carry out.
constexpr std::uint64_t add_with_carry(const U256& a, const U256& b, U256& out) {
  unsigned __int128 carry = 0;
  for (int i = 0; i < 4; ++i) {
    carry += static_cast<unsigned __int128>(a.limb[i]) + b.limb[i];
    out.limb[i] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
  return static_cast<std::uint64_t>(carry);
}

// out = a - b, returns the borrow out.
constexpr std::uint64_t sub_with_borrow(const U256& a, const U256& b, U256& out) {
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    unsigned __int128 d = static_cast<unsigned __int128>(a.limb[i]) - b.limb[i] - borrow;
    out.limb[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1u;
  }
  return borrow;
}

consteval U256 U256::from_hex(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  U256 out;
  unsigned shift = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, shift += 4) {
    char c = *it;
    std::uint64_t v = (c >= '0' && c <= '9')   ? static_cast<std::uint64_t>(c - '0')
                      : (c >= 'a' && c <= 'f') ? static_cast<std::uint64_t>(c - 'a' + 10)
                      : (c >= 'A' && c <= 'F') ? static_cast<std::uint64_t>(c - 'A' + 10)
                                               : throw "invalid hex digit";  // not a constant expression
    if (shift >= 256) throw "hex literal wider than 256 bits";
    out.limb[shift / 64] |= v << (shift % 64);
  }
  return out;
}

}  // namespace zkride::crypto

#endif  // ZKRIDE_CRYPTO_U256_HPP_
