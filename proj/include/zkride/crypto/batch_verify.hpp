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

#ifndef ZKRIDE_CRYPTO_BATCH_VERIFY_HPP_
#define ZKRIDE_CRYPTO_BATCH_VERIFY_HPP_

// Independent verifications of many proofs. The OpenMP kernel and the serial
// reference must agree element for element; the serial one is the oracle in
// tests and the baseline in the benchmark.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zkride/crypto/crypto_core.hpp"

namespace zkride::crypto {

struct VerifyJob {
  const Proof* proof = nullptr;
  Digest digest;
  std::optional<Nonce> nonce;
  const VerifierKey* vkey = nullptr;
};

// 1 = accepted, 0 = rejected. Backend mismatches throw as in verify_proof.
std::vector<std::uint8_t> verify_batch_serial(std::span<const VerifyJob> jobs, const CryptoParams& params);
std::vector<std::uint8_t> verify_batch(std::span<const VerifyJob> jobs, const CryptoParams& params);

// Threads the parallel kernel will use (1 when built without OpenMP).
int batch_verify_threads();

}  // namespace zkride::crypto

#endif  // ZKRIDE_CRYPTO_BATCH_VERIFY_HPP_
