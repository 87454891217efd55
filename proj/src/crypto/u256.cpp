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

#include "zkride/crypto/u256.hpp"

namespace zkride::crypto {

U256 U256::from_be_bytes(std::span<const std::uint8_t, 32> bytes) {
  U256 out;
  for (int i = 0; i < 32; ++i) {
    out.limb[3 - i / 8] = (out.limb[3 - i / 8] << 8) | bytes[i];
  }
  return out;
}

std::array<std::uint8_t, 32> U256::to_be_bytes() const {
  std::array<std::uint8_t, 32> out{};
  for (int i = 0; i < 32; ++i) {
    out[i] = static_cast<std::uint8_t>(limb[3 - i / 8] >> (56 - 8 * (i % 8)));
  }
  return out;
}

}  // namespace zkride::crypto
