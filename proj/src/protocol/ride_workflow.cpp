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

#include "zkride/protocol/ride_workflow.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "zkride/common/errors.hpp"

namespace zkride {

std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::requested:
      return "requested";
    case SessionState::proved:
      return "proved";
    case SessionState::verified:
      return "verified";
    case SessionState::recorded:
      return "recorded";
    case SessionState::rejected:
      return "rejected";
  }
  return "unknown";
}

bool transition_allowed(SessionState from, SessionState to) {
  switch (from) {
    case SessionState::requested:
      return to == SessionState::proved;
    case SessionState::proved:
      return to == SessionState::verified;
    case SessionState::verified:
      return to == SessionState::recorded || to == SessionState::rejected;
    case SessionState::recorded:
    case SessionState::rejected:
      return false;
  }
  return false;
}

VerificationSession::VerificationSession(std::string session_id, std::string driver_id, std::string rider_id,
                                         std::optional<crypto::Nonce> nonce, TripDetails trip)
    : session_id_(std::move(session_id)),
      driver_id_(std::move(driver_id)),
      rider_id_(std::move(rider_id)),
      nonce_(nonce),
      trip_(std::move(trip)) {}

void VerificationSession::advance(SessionState to) {
  if (!transition_allowed(state_, to)) {
    throw StateError("session " + session_id_ + ": cannot move from " + std::string(to_string(state_)) + " to " +
                     std::string(to_string(to)));
  }
  state_ = to;
}

void VerificationSession::append(std::string actor, std::string_view message, Micros at) {
  transcript_.push_back({std::move(actor), to_bytes(message), at});
}

std::pair<std::string, std::string> match_ride(std::deque<std::string>& driver_pool,
                                               std::deque<std::string>& rider_pool) {
  if (driver_pool.empty()) throw ValidationError("no driver available");
  if (rider_pool.empty()) throw ValidationError("no rider available");
  std::pair<std::string, std::string> m{std::move(driver_pool.front()), std::move(rider_pool.front())};
  driver_pool.pop_front();
  rider_pool.pop_front();
  return m;
}

SessionFactory::SessionFactory(const Registry& registry, Drbg rng, bool nonce_binding, TimeSource& clock)
    : registry_(registry), rng_(std::move(rng)), nonce_binding_(nonce_binding), clock_(clock) {}

namespace {

void require_role(const Registry& registry, const std::string& id, Role role) {
  auto r = registry.role_of(id);
  if (!r) throw RegistryError(RegistryError::Kind::not_found, "'" + id + "' is not registered");
  if (*r != role) {
    throw RegistryError(RegistryError::Kind::wrong_role,
                        "'" + id + "' is registered as " + std::string(to_string(*r)) + ", not " +
                            std::string(to_string(role)));
  }
}

}  // namespace

VerificationSession SessionFactory::request_verification(const std::string& driver_id, const std::string& rider_id,
                                                         TripDetails trip) {
  require_role(registry_, driver_id, Role::driver);
  require_role(registry_, rider_id, Role::rider);
  std::optional<crypto::Nonce> nonce;
  if (nonce_binding_) {
    crypto::Nonce n{};
    rng_.fill(n);
    nonce = n;
  }
  VerificationSession s("session-" + std::to_string(next_id_++), driver_id, rider_id, nonce, std::move(trip));
  Micros now = clock_.now();
  s.set_started_at(now);
  std::ostringstream msg;
  msg << "verification-request session=" << s.session_id() << " driver=" << driver_id << " rider=" << rider_id
      << " nonce=" << (nonce ? to_hex(*nonce) : std::string("none")) << " origin=" << s.trip().origin
      << " destination=" << s.trip().destination << " price=" << format_price(s.trip().price_cents);
  s.append("rider", msg.str(), now);
  return s;
}

void driver_respond(VerificationSession& session, ByteSpan secret, const crypto::ProverKey& key,
                    const crypto::CryptoParams& params, const TimeSource& clock) {
  if (session.state() != SessionState::requested) {
    throw StateError("session " + session.session_id() + ": driver already responded (state " +
                     std::string(to_string(session.state())) + ")");
  }
  crypto::Proof proof = crypto::generate_proof(key, crypto::digest_message(secret), session.nonce(), params);
  submit_proof(session, proof, clock);
}

void submit_proof(VerificationSession& session, const crypto::Proof& proof, const TimeSource& clock) {
  if (session.state() != SessionState::requested) {
    throw StateError("session " + session.session_id() + ": cannot accept a proof in state " +
                     std::string(to_string(session.state())));
  }
  session.append("driver", "proof " + proof.to_hex(), clock.now());
  session.set_proof(proof);
  session.advance(SessionState::proved);
}

std::vector<const PeerNode*> peer_pointers(const std::vector<std::unique_ptr<PeerNode>>& peers) {
  std::vector<const PeerNode*> out;
  for (const auto& p : peers) out.push_back(p.get());
  return out;
}

namespace {

void advance_clock(TimeSource& clock, Micros t) {
  if (auto* v = dynamic_cast<VirtualTime*>(&clock)) {
    v->advance_to(t);
  } else {
    clock.wait_until(t);
  }
}

}  // namespace

void complete_verification(VerificationSession& session, const VerificationNetwork& net, TimeSource& clock,
                           Drbg& delay_rng) {
  if (session.state() != SessionState::proved) {
    throw StateError("session " + session.session_id() + ": cannot verify in state " +
                     std::string(to_string(session.state())));
  }
  if (!net.ledger) throw ValidationError("verification network has no ledger");
  if (net.peers.empty()) throw ValidationError("verification network has no peers");
  net.policy.validate();

  const Micros submitted = clock.now();
  const std::string proof_hex = session.proof()->to_hex();
  EndorsementRequest req{session.session_id(), session.driver_id(), proof_hex, session.nonce()};
  std::vector<Endorsement> all;
  for (const PeerNode* peer : net.peers) all.push_back(peer_endorse(*peer, req, submitted, delay_rng));
  std::stable_sort(all.begin(), all.end(), [](const Endorsement& a, const Endorsement& b) { return a.at < b.at; });

  // k-of-any: stop at the k-th positive verdict, otherwise wait for everyone.
  std::vector<Endorsement> used;
  std::uint32_t positives = 0;
  for (const auto& e : all) {
    used.push_back(e);
    positives += e.positive ? 1 : 0;
    if (positives >= net.policy.required_k) break;
  }
  const Micros decided_at = used.back().at;
  for (const auto& e : used) {
    session.append("peer:" + e.peer_id, e.positive ? "verdict positive" : "verdict negative: " + e.cause, e.at);
  }
  advance_clock(clock, decided_at);

  std::size_t endorsing = 0;
  CommitStatus status = endorsement_decision(session.session_id(), used, net.policy, &endorsing);
  const bool verified = status == CommitStatus::accepted;
  session.set_verdict(verified);
  session.set_endorsements(used);
  session.advance(SessionState::verified);

  auto notify = [&](const std::string& text, Micros at) {
    session.append("network", "notify rider " + session.rider_id() + ": " + text, at);
    session.append("network", "notify driver " + session.driver_id() + ": " + text, at);
  };

  std::ostringstream tally;
  tally << endorsing << " of " << net.peers.size() << " peers endorsed, " << net.policy.required_k << " required";
  if (!verified) {
    std::string cause;
    for (const auto& e : used) {
      if (!e.positive) {
        cause = e.cause;
        break;
      }
    }
    CommitReceipt r{status, session.session_id(), endorsing, tally.str()};
    session.set_receipt(r);
    session.set_outcome_message("verification failed: " + tally.str() + (cause.empty() ? "" : " (" + cause + ")"));
    notify(session.outcome_message(), decided_at);
    session.advance(SessionState::rejected);
    return;
  }

  RideLogTx tx;
  tx.tx_id = session.session_id();
  tx.driver_id = session.driver_id();
  tx.rider_id = session.rider_id();
  tx.trip_time = session.started_at();
  tx.origin = session.trip().origin;
  tx.destination = session.trip().destination;
  tx.price_cents = session.trip().price_cents;
  tx.proof_record = proof_hex;
  tx.verification_result = true;
  tx.nonce = session.nonce();
  CommitReceipt r = net.ledger->submit_tx(tx, used, net.policy, decided_at);
  session.set_receipt(r);
  if (!r.accepted()) {
    session.set_outcome_message("verification succeeded but the trip was not recorded: " +
                                std::string(to_string(r.status)) + (r.detail.empty() ? "" : " (" + r.detail + ")"));
    notify(session.outcome_message(), decided_at);
    session.advance(SessionState::rejected);
    return;
  }
  const Micros commit_at = decided_at + net.commit_latency;
  auto block = net.ledger->form_block(commit_at);
  advance_clock(clock, commit_at);
  session.set_outcome_message("verification succeeded: " + tally.str() + "; trip recorded in block " +
                              std::to_string(block ? block->height : 0));
  notify(session.outcome_message(), commit_at);
  session.advance(SessionState::recorded);
}

bool recheck_proof(const VerificationSession& session, const PeerNode& peer) {
  if (!session.proof()) throw StateError("session " + session.session_id() + " has no proof");
  EndorsementRequest req{session.session_id(), session.driver_id(), session.proof()->to_hex(), session.nonce()};
  return peer.evaluate(req).positive;
}

std::vector<HygieneFinding> scan_transcript(std::span<const TranscriptEntry> transcript, ByteSpan secret,
                                            const crypto::Digest& digest) {
  std::string lower = to_hex(digest.bytes);
  std::string upper = lower;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](char c) { return static_cast<char>(std::toupper(c)); });
  std::string secret_hex = to_hex(secret);
  std::vector<std::pair<std::string, Bytes>> needles;
  if (!secret.empty()) {
    needles.emplace_back("secret", Bytes(secret.begin(), secret.end()));
    needles.emplace_back("secret-hex", to_bytes(secret_hex));
  }
  needles.emplace_back("digest", Bytes(digest.bytes.begin(), digest.bytes.end()));
  needles.emplace_back("digest-hex", to_bytes(lower));
  needles.emplace_back("digest-hex", to_bytes(upper));

  std::vector<HygieneFinding> findings;
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    for (const auto& [what, needle] : needles) {
      if (contains_subsequence(transcript[i].message, needle)) findings.push_back({i, what});
    }
  }
  return findings;
}

std::string export_transcript(const VerificationSession& session) {
  std::ostringstream os;
  const auto& t = session.transcript();
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::string msg(t[i].message.begin(), t[i].message.end());
    os << escape_field(session.session_id()) << '\t' << i << '\t' << escape_field(t[i].actor) << '\t' << t[i].at
       << '\t' << escape_field(msg) << '\n';
  }
  return os.str();
}

}  // namespace zkride
