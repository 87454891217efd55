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

#ifndef ZKRIDE_PROTOCOL_RIDE_WORKFLOW_HPP_
#define ZKRIDE_PROTOCOL_RIDE_WORKFLOW_HPP_

// One verified ride, end to end: the rider asks the matched driver for a
// proof bound to a fresh session nonce, the driver answers with a proof, the
// peers verify it, both parties are notified and the trip is recorded on the
// ledger. Every message exchanged is captured in the session transcript.

#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zkride/common/bytes.hpp"
#include "zkride/common/drbg.hpp"
#include "zkride/common/time_source.hpp"
#include "zkride/crypto/crypto_core.hpp"
#include "zkride/protocol/identity_registry.hpp"
#include "zkride/protocol/ledger.hpp"
#include "zkride/protocol/network_sim.hpp"

namespace zkride {

enum class SessionState { requested, proved, verified, recorded, rejected };

std::string_view to_string(SessionState s);

// requested -> proved -> verified -> recorded | rejected.
bool transition_allowed(SessionState from, SessionState to);

struct TranscriptEntry {
  std::string actor;  // "rider", "driver", "peer:<id>", "network"
  Bytes message;
  Micros at = 0;
};

// Trip metadata, supplied with the rider's request.
struct TripDetails {
  std::string origin = "origin";
  std::string destination = "destination";
  std::uint64_t price_cents = 0;
};

class VerificationSession {
 public:
  VerificationSession(std::string session_id, std::string driver_id, std::string rider_id,
                      std::optional<crypto::Nonce> nonce, TripDetails trip);

  const std::string& session_id() const { return session_id_; }
  const std::string& driver_id() const { return driver_id_; }
  const std::string& rider_id() const { return rider_id_; }
  // Absent in paper-exact mode.
  const std::optional<crypto::Nonce>& nonce() const { return nonce_; }
  const TripDetails& trip() const { return trip_; }
  SessionState state() const { return state_; }
  const std::optional<crypto::Proof>& proof() const { return proof_; }
  const std::optional<bool>& verdict() const { return verdict_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::vector<Endorsement>& endorsements() const { return endorsements_; }
  const std::optional<CommitReceipt>& receipt() const { return receipt_; }
  // Human-readable outcome sent to both parties ("verification failed: ...").
  const std::string& outcome_message() const { return outcome_message_; }
  Micros started_at() const { return started_at_; }

  // Throws StateError on a transition outside the state machine.
  void advance(SessionState to);
  void append(std::string actor, std::string_view message, Micros at);
  void set_proof(crypto::Proof p) { proof_ = std::move(p); }
  void set_verdict(bool v) { verdict_ = v; }
  void set_endorsements(std::vector<Endorsement> e) { endorsements_ = std::move(e); }
  void set_receipt(CommitReceipt r) { receipt_ = std::move(r); }
  void set_outcome_message(std::string m) { outcome_message_ = std::move(m); }
  void set_started_at(Micros t) { started_at_ = t; }

  // Test hook: appends raw bytes without any filtering.
  std::vector<TranscriptEntry>& transcript_out_of_band() { return transcript_; }

 private:
  std::string session_id_;
  std::string driver_id_;
  std::string rider_id_;
  std::optional<crypto::Nonce> nonce_;
  TripDetails trip_;
  SessionState state_ = SessionState::requested;
  std::optional<crypto::Proof> proof_;
  std::optional<bool> verdict_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<Endorsement> endorsements_;
  std::optional<CommitReceipt> receipt_;
  std::string outcome_message_;
  Micros started_at_ = 0;
};

// First-available pairing; both ids are removed from their pools. Throws
// ValidationError if either pool is empty.
std::pair<std::string, std::string> match_ride(std::deque<std::string>& driver_pool,
                                               std::deque<std::string>& rider_pool);

// Creates sessions with fresh nonces (or none in paper-exact mode).
class SessionFactory {
 public:
  SessionFactory(const Registry& registry, Drbg rng, bool nonce_binding, TimeSource& clock);

  // Throws RegistryError if either party is unregistered or has the wrong role.
  VerificationSession request_verification(const std::string& driver_id, const std::string& rider_id,
                                           TripDetails trip = {});

  bool nonce_binding() const { return nonce_binding_; }
  TimeSource& clock() { return clock_; }

 private:
  const Registry& registry_;
  Drbg rng_;
  bool nonce_binding_;
  TimeSource& clock_;
  std::uint64_t next_id_ = 1;
};

// The driver proves knowledge of `secret` for the session's nonce. The
// secret itself never enters the transcript. Throws StateError unless the
// session is in `requested`.
void driver_respond(VerificationSession& session, ByteSpan secret, const crypto::ProverKey& key,
                    const crypto::CryptoParams& params, const TimeSource& clock);
inline void driver_respond(VerificationSession& session, std::string_view secret, const crypto::ProverKey& key,
                           const crypto::CryptoParams& params, const TimeSource& clock) {
  driver_respond(session, as_bytes(secret), key, params, clock);
}

// Hands an arbitrary (e.g. captured) proof to the network as the driver's
// answer. Same state rules as driver_respond.
void submit_proof(VerificationSession& session, const crypto::Proof& proof, const TimeSource& clock);

// The peers and commit path a session is verified against.
struct VerificationNetwork {
  std::vector<const PeerNode*> peers;
  EndorsementPolicy policy{1, 1};
  Ledger* ledger = nullptr;
  Micros commit_latency = 0;
};

std::vector<const PeerNode*> peer_pointers(const std::vector<std::unique_ptr<PeerNode>>& peers);

// Fans the proof out to every peer, applies the policy and, on success,
// commits the trip in its own block (state recorded); otherwise the session
// ends rejected and nothing is committed. Both parties are notified through
// the transcript. On a virtual clock, time is advanced to the decision and
// commit instants. Throws StateError unless the session is in `proved`.
void complete_verification(VerificationSession& session, const VerificationNetwork& net, TimeSource& clock,
                           Drbg& delay_rng);

// Re-runs one peer's check of the session's proof against its own nonce.
bool recheck_proof(const VerificationSession& session, const PeerNode& peer);

// Byte-level search over every transcript message for the secret and the
// digest, raw and hex encoded. Empty secrets are skipped.
struct HygieneFinding {
  std::size_t entry_index = 0;
  std::string what;  // "secret", "secret-hex", "digest", "digest-hex"
};
std::vector<HygieneFinding> scan_transcript(std::span<const TranscriptEntry> transcript, ByteSpan secret,
                                            const crypto::Digest& digest);

// One line per entry, tab separated, with \t \n \\ escaped:
//   session_id  seq  actor  timestamp_micros  message
std::string export_transcript(const VerificationSession& session);

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_RIDE_WORKFLOW_HPP_
