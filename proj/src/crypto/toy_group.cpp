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

#include "zkride/crypto/toy_group.hpp"

#include <string>

#include "zkride/common/errors.hpp"

namespace zkride::crypto::toy {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  std::uint64_t acc = 1;
  base %= modulus;
  while (exponent != 0) {
    if (exponent & 1u) acc = acc * base % modulus;
    base = base * base % modulus;
    exponent >>= 1;
  }
  return acc;
}

}  // namespace

void ToyGroup::validate() const {
  if (!is_prime(order)) throw ValidationError("toy group order " + std::to_string(order) + " is not prime");
  if (!is_prime(modulus)) throw ValidationError("toy modulus " + std::to_string(modulus) + " is not prime");
  if ((modulus - 1) % order != 0) throw ValidationError("toy group order must divide modulus - 1");
  if (generator <= 1 || generator >= modulus) throw ValidationError("toy generator out of range");
  // Prime order: g != 1 and g^order == 1 pin the order exactly.
  if (pow_mod(generator, order, modulus) != 1) throw ValidationError("toy generator does not have the requested order");
}

std::uint32_t ToyGroup::element_value(std::uint64_t exponent) const {
  return static_cast<std::uint32_t>(pow_mod(generator, exponent % order, modulus));
}

std::uint32_t ToyGroup::discrete_log(std::uint32_t value) const {
  std::uint64_t acc = 1;
  for (std::uint32_t e = 0; e < order; ++e) {
    if (acc == value) return e;
    acc = acc * generator % modulus;
  }
  throw ValidationError("value " + std::to_string(value) + " is not in the toy subgroup");
}

std::uint32_t ToyGroup::reduce(ByteSpan big_endian) const {
  std::uint64_t acc = 0;
  for (std::uint8_t b : big_endian) acc = ((acc << 8) | b) % order;
  return static_cast<std::uint32_t>(acc);
}

std::array<std::uint8_t, kEncodedSize> encode_exponent(std::uint32_t e) {
  return {static_cast<std::uint8_t>(e >> 24), static_cast<std::uint8_t>(e >> 16),
          static_cast<std::uint8_t>(e >> 8), static_cast<std::uint8_t>(e)};
}

std::uint32_t decode_exponent(ByteSpan bytes, const ToyGroup& group) {
  if (bytes.size() != kEncodedSize) {
    throw DecodeError("toy element must be 4 bytes, got " + std::to_string(bytes.size()));
  }
  std::uint32_t e = (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
                    (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
  if (e >= group.order) throw DecodeError("toy exponent " + std::to_string(e) + " is not reduced");
  return e;
}

}  // namespace zkride::crypto::toy
