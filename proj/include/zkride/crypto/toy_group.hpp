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

#ifndef ZKRIDE_CRYPTO_TOY_GROUP_HPP_
#define ZKRIDE_CRYPTO_TOY_GROUP_HPP_

// A deliberately tiny "pairing" used as an algebraic oracle: G1 = G2 = GT is
// the order-`order` subgroup of Z_modulus^* generated by `generator`, and
// e(g^x, g^y) = g^(xy). Elements are carried as their exponent, so every
// value in the backend can be confirmed by brute force.

#include <array>
#include <cstdint>

#include "zkride/common/bytes.hpp"

namespace zkride::crypto::toy {

inline constexpr std::size_t kEncodedSize = 4;

bool is_prime(std::uint64_t n);

struct ToyGroup {
  std::uint32_t order = 23;
  std::uint32_t modulus = 47;
  std::uint32_t generator = 2;

  // Throws ValidationError unless order and modulus are prime, order divides
  // modulus - 1 and generator has multiplicative order exactly `order`.
  void validate() const;

  // generator^exponent mod modulus.
  std::uint32_t element_value(std::uint64_t exponent) const;
  // Inverse of element_value by exhaustive search; throws ValidationError
  // for values outside the subgroup.
  std::uint32_t discrete_log(std::uint32_t value) const;
  // Big-endian unsigned integer reduced modulo `order`.
  std::uint32_t reduce(ByteSpan big_endian) const;

  friend bool operator==(const ToyGroup&, const ToyGroup&) = default;
};

// 4-byte big-endian exponent.
std::array<std::uint8_t, kEncodedSize> encode_exponent(std::uint32_t e);
// Throws DecodeError on a wrong length or an exponent >= order.
std::uint32_t decode_exponent(ByteSpan bytes, const ToyGroup& group);

}  // namespace zkride::crypto::toy

#endif  // ZKRIDE_CRYPTO_TOY_GROUP_HPP_
