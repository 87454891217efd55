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

#ifndef ZKRIDE_PROTOCOL_NETWORK_SIM_HPP_
#define ZKRIDE_PROTOCOL_NETWORK_SIM_HPP_

// Simulated permissioned network. Every transaction is fanned out to all n
// peers; each peer is a single FIFO server that verifies the proof and
// answers after a sampled service delay. A transaction is decided when k
// positive verdicts have arrived (or all n have), handed to the ledger, and
// cut into a block by the single orderer (batch size or timeout). A fixed
// commit latency models validation and commit after the cut.
//
// Two engines run the same model: a deterministic discrete-event scheduler
// on a virtual clock, and real threads on the wall clock.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zkride/common/drbg.hpp"
#include "zkride/common/time_source.hpp"
#include "zkride/crypto/crypto_core.hpp"
#include "zkride/protocol/identity_registry.hpp"
#include "zkride/protocol/ledger.hpp"

namespace zkride {

// Uniform on [mean - jitter, mean + jitter], clamped at zero.
struct DelayModel {
  double mean_ms = 0;
  double jitter_ms = 0;

  void validate() const;
  Micros sample(Drbg& rng) const;
};

struct PeerConfig {
  std::string peer_id;
  DelayModel service_delay;
};

struct EndorsementRequest {
  std::string tx_id;
  std::string driver_id;
  std::string proof_hex;
  std::optional<crypto::Nonce> nonce;  // the session nonce the peer checks against
};

// A peer that endorses by running verify_proof against registry material.
// Thread-safe; the verifier cache is filled on first use per driver.
class PeerNode {
 public:
  PeerNode(PeerConfig config, const Registry& registry);

  const std::string& peer_id() const { return config_.peer_id; }
  const DelayModel& service_delay() const { return config_.service_delay; }

  // Verdict without any delay (at = 0). Unresolvable drivers and malformed
  // proofs give a negative verdict with the cause filled in.
  Endorsement evaluate(const EndorsementRequest& req) const;
  // Cached registry lookup; nullopt (with `cause`) if the id is unusable.
  std::optional<VerifierMaterial> resolve(const std::string& driver_id, std::string* cause = nullptr) const;

 private:
  PeerConfig config_;
  const Registry& registry_;
  mutable std::mutex mu_;
  mutable std::map<std::string, VerifierMaterial> cache_;
};

// evaluate() stamped at submitted_at + one service-delay sample.
Endorsement peer_endorse(const PeerNode& peer, const EndorsementRequest& req, Micros submitted_at, Drbg& rng);

enum class EventType { submit, endorse, commit, reject };

std::string_view to_string(EventType t);

struct Event {
  EventType type = EventType::submit;
  std::string tx_id;
  Micros timestamp = 0;
  std::optional<std::string> peer_id;
  std::optional<bool> verdict;

  friend bool operator==(const Event&, const Event&) = default;
};

// Append-only, thread-safe event sink.
class EventLog {
 public:
  EventLog() = default;
  EventLog(const EventLog& other);
  EventLog& operator=(const EventLog& other);

  void append(Event e);
  // Snapshot ordered by (timestamp, insertion order).
  std::vector<Event> events() const;
  std::size_t size() const;

  // One record per line, tab separated:
  //   event_type  tx_id  timestamp_micros  peer_id|-  verdict(1|0|-)
  std::string to_text() const;
  static EventLog from_text(std::string_view text);

 private:
  mutable std::mutex mu_;
  std::vector<Event> events_;
};

struct LoadProfile {
  double send_rate = 20;  // tx/s
  double duration_s = 10;
  EndorsementPolicy policy{1, 3};
  std::uint32_t client_count = 5;  // drivers submitting in round robin

  void validate() const;
};

enum class Engine { virtual_clock, wall_clock };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view s);

struct NetworkConfig {
  std::vector<PeerConfig> peers;
  LedgerConfig ledger;
  Micros commit_latency = 300'000;
  bool nonce_binding = true;

  void validate() const;
};

struct Population {
  std::uint32_t drivers = 5;
  std::uint32_t riders = 5;
};

// Client-side view of a registered driver.
struct DriverClient {
  std::string driver_id;
  crypto::ProverKey key;
  Bytes secret;
};

// Registry, peers, ledger and the client population for one run.
class World {
 public:
  World(crypto::CryptoParams params, NetworkConfig config, Population population, Drbg rng);
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  const crypto::CryptoParams& params() const { return params_; }
  const NetworkConfig& config() const { return config_; }
  Registry& registry() { return registry_; }
  const Registry& registry() const { return registry_; }
  Ledger& ledger() { return ledger_; }
  const Ledger& ledger() const { return ledger_; }
  const std::vector<std::unique_ptr<PeerNode>>& peers() const { return peers_; }
  const std::vector<DriverClient>& drivers() const { return drivers_; }
  const std::vector<std::string>& riders() const { return riders_; }
  Drbg& rng() { return rng_; }

 private:
  crypto::CryptoParams params_;
  NetworkConfig config_;
  Drbg rng_;
  Registry registry_;
  Ledger ledger_;
  std::vector<std::unique_ptr<PeerNode>> peers_;
  std::vector<DriverClient> drivers_;
  std::vector<std::string> riders_;
};

struct LoadResult {
  EventLog log;
  std::size_t submitted = 0;
  std::size_t committed = 0;
  std::size_t rejected = 0;
  Micros load_end = 0;  // time of the last submission slot (profile duration)
  Micros drained_at = 0;  // time of the last event
};

// Drives `profile` against `world`: open-loop arrivals every 1/send_rate
// seconds starting at t = 0 for duration_s, then drains until every
// transaction is committed or rejected.
LoadResult run_load(const LoadProfile& profile, World& world, Engine engine = Engine::virtual_clock);

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_NETWORK_SIM_HPP_
