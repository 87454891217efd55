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

#include "zkride/common/drbg.hpp"

#include <openssl/rand.h>

#include "zkride/common/bytes.hpp"
#include "zkride/common/errors.hpp"

namespace zkride {

Drbg Drbg::from_u64(std::uint64_t seed) {
  ByteWriter w;
  w.str("zkride/seed/u64");
  w.u64(seed);
  return Drbg(sha256(w.bytes()));
}

Drbg Drbg::from_entropy() {
  Seed seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    throw Error("drbg: OS entropy unavailable");
  }
  return Drbg(seed);
}

void Drbg::refill() {
  ByteWriter w;
  w.u64(counter_++);
  block_ = sha256_concat({seed_, w.bytes()});
  used_ = 0;
}

void Drbg::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (used_ == block_.size()) refill();
    b = block_[used_++];
  }
}

std::uint64_t Drbg::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

Seed Drbg::next_seed() {
  Seed s{};
  fill(s);
  return s;
}

Drbg Drbg::fork(std::string_view label) const {
  return Drbg(sha256_concat({as_bytes("zkride/fork/"), seed_, as_bytes(label)}));
}

}  // namespace zkride
