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

// Batch proof verification: OpenMP kernel vs. the serial reference.

#include <benchmark/benchmark.h>

#include <vector>

#include "zkride/crypto/batch_verify.hpp"
#include "zkride/crypto/crypto_core.hpp"

namespace {

using namespace zkride;
using namespace zkride::crypto;

struct Fixture {
  explicit Fixture(std::size_t n) : params(CryptoParams::production()) {
    Drbg rng = Drbg::from_u64(42);
    for (std::size_t i = 0; i < n; ++i) {
      auto [sk, vk] = generate_keypair(params, rng);
      Nonce nonce{};
      rng.fill(nonce);
      Digest d = digest_message("licence-" + std::to_string(i));
      keys.push_back(vk);
      proofs.push_back(generate_proof(sk, d, nonce, params));
      digests.push_back(d);
      nonces.push_back(nonce);
    }
    for (std::size_t i = 0; i < n; ++i) jobs.push_back({&proofs[i], digests[i], nonces[i], &keys[i]});
  }

  CryptoParams params;
  std::vector<VerifierKey> keys;
  std::vector<Proof> proofs;
  std::vector<Digest> digests;
  std::vector<Nonce> nonces;
  std::vector<VerifyJob> jobs;
};

const Fixture& fixture() {
  static const Fixture f(64);
  return f;
}

void BM_VerifySerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(verify_batch_serial(f.jobs, f.params));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.jobs.size()));
}

void BM_VerifyParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(verify_batch(f.jobs, f.params));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.jobs.size()));
  state.counters["threads"] = batch_verify_threads();
}

void BM_Prove(benchmark::State& state) {
  CryptoParams params = CryptoParams::production();
  auto [sk, vk] = generate_keypair(params, Seed{});
  Digest d = digest_message("9907184");
  Nonce nonce{};
  for (auto _ : state) benchmark::DoNotOptimize(generate_proof(sk, d, nonce, params));
}

}  // namespace

BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Prove)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
