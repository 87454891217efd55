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

#ifndef ZKRIDE_PROTOCOL_RUN_CONFIG_HPP_
#define ZKRIDE_PROTOCOL_RUN_CONFIG_HPP_

// Run configuration: a "key = value" text file, one setting per line, '#'
// starts a comment. Unknown keys and malformed values are errors. See
// config/zkride.conf for the documented example.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zkride/common/drbg.hpp"
#include "zkride/crypto/crypto_core.hpp"
#include "zkride/protocol/network_sim.hpp"

namespace zkride {

struct RunConfig {
  crypto::BackendId backend = crypto::BackendId::production_curve;
  Engine engine = Engine::virtual_clock;
  std::uint32_t peer_count = 3;
  // One value for every peer, or one per peer.
  std::vector<double> peer_delay_ms{50.0};
  double peer_jitter_ms = 0;
  std::uint32_t batch_size = 10;
  std::uint32_t block_timeout_ms = 500;
  std::uint32_t commit_latency_ms = 300;
  std::uint32_t policy_k = 1;
  std::uint32_t policy_n = 3;
  bool nonce_binding = true;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir = "out";

  std::uint32_t drivers = 5;
  std::uint32_t riders = 5;
  std::uint32_t rides = 5;

  std::vector<double> bench_rates{5, 10, 15, 20, 25, 30, 35, 40};
  std::vector<std::uint32_t> bench_policies{1, 2, 3};
  double bench_duration_s = 15;
  double bench_ramp_s = 1;
  std::uint32_t timing_warmup = 5;
  std::uint32_t timing_iterations = 30;

  // Sets one key from its textual value. Throws ValidationError.
  void set(std::string_view key, std::string_view value);
  // Throws ValidationError describing the first violated rule.
  void validate() const;
  std::string to_text() const;

  crypto::CryptoParams params() const;
  NetworkConfig network_config() const;
  Population population() const;
  EndorsementPolicy policy() const { return {policy_k, policy_n}; }
  // Seeded from `seed` when set, otherwise from OS entropy.
  Drbg master_rng() const;
};

RunConfig parse_run_config(std::string_view text, RunConfig base = {});
// Throws IoError if the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_RUN_CONFIG_HPP_
