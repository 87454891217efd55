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

#ifndef ZKRIDE_COMMON_DRBG_HPP_
#define ZKRIDE_COMMON_DRBG_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "zkride/common/sha256.hpp"

namespace zkride {

using Seed = std::array<std::uint8_t, 32>;

// SHA-256 in counter mode over a 32-byte seed. Every random value in the
// project (keys, nonces, jitter, generated licences) is drawn from one of
// these, so a single configured seed reproduces a whole run.
//
// Satisfies UniformRandomBitGenerator. Not thread-safe; fork() one per owner.
class Drbg {
 public:
  using result_type = std::uint64_t;

  explicit Drbg(const Seed& seed) : seed_(seed) {}
  static Drbg from_u64(std::uint64_t seed);
  // Seeded from the OS entropy source.
  static Drbg from_entropy();

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  Seed next_seed();

  // Independent child stream; derivation depends only on this stream's seed
  // and `label`, not on how many values were drawn so far.
  Drbg fork(std::string_view label) const;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  Seed seed_;
  std::uint64_t counter_ = 0;
  Hash32 block_{};
  std::size_t used_ = block_.size();
};

}  // namespace zkride

#endif  // ZKRIDE_COMMON_DRBG_HPP_
