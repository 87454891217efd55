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

#include "zkride/protocol/ledger.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zkride/common/errors.hpp"
#include "zkride/protocol/identity_registry.hpp"

namespace zkride {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'Z', 'K', 'R', 'L'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

// ---------------------------------------------------------------------------
// Transactions

void RideLogTx::serialize(ByteWriter& w) const {
  w.str(tx_id);
  w.str(driver_id);
  w.str(rider_id);
  w.u64(static_cast<std::uint64_t>(trip_time));
  w.str(origin);
  w.str(destination);
  w.u64(price_cents);
  w.str(proof_record);
  w.u8(verification_result ? 1 : 0);
  w.u8(nonce ? 1 : 0);
  if (nonce) w.raw(*nonce);
}

RideLogTx RideLogTx::deserialize(ByteReader& r) {
  RideLogTx tx;
  tx.tx_id = r.str();
  tx.driver_id = r.str();
  tx.rider_id = r.str();
  tx.trip_time = static_cast<Micros>(r.u64());
  tx.origin = r.str();
  tx.destination = r.str();
  tx.price_cents = r.u64();
  tx.proof_record = r.str();
  std::uint8_t result = r.u8();
  if (result > 1) throw DecodeError("verification_result must be 0 or 1");
  tx.verification_result = result == 1;
  std::uint8_t has_nonce = r.u8();
  if (has_nonce > 1) throw DecodeError("nonce presence flag must be 0 or 1");
  if (has_nonce) tx.nonce = r.fixed<crypto::kNonceSize>();
  return tx;
}

std::uint64_t parse_price_cents(std::string_view s) {
  auto bad = [&] { return ValidationError("invalid price '" + std::string(s) + "'"); };
  if (s.empty() || s.front() == '-') throw bad();
  std::uint64_t units = 0;
  std::size_t i = 0;
  bool digits = false;
  for (; i < s.size() && s[i] != '.'; ++i) {
    if (s[i] < '0' || s[i] > '9') throw bad();
    if (units > (UINT64_MAX / 100 - 9) / 10) throw bad();
    units = units * 10 + static_cast<std::uint64_t>(s[i] - '0');
    digits = true;
  }
  std::uint64_t cents = 0;
  if (i < s.size()) {
    std::string_view frac = s.substr(i + 1);
    if (frac.empty() || frac.size() > 2) throw bad();
    for (char c : frac) {
      if (c < '0' || c > '9') throw bad();
    }
    cents = static_cast<std::uint64_t>(frac[0] - '0') * 10 + (frac.size() == 2 ? frac[1] - '0' : 0);
    digits = true;
  }
  if (!digits) throw bad();
  return units * 100 + cents;
}

std::string format_price(std::uint64_t cents) {
  std::string frac = std::to_string(cents % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return std::to_string(cents / 100) + "." + frac;
}

// ---------------------------------------------------------------------------
// Endorsement

void EndorsementPolicy::validate() const {
  if (required_k < 1 || required_k > peer_set_size_n) {
    throw ValidationError("endorsement policy needs 1 <= k <= n, got k=" + std::to_string(required_k) +
                          " n=" + std::to_string(peer_set_size_n));
  }
}

std::string_view to_string(CommitStatus s) {
  switch (s) {
    case CommitStatus::accepted:
      return "accepted";
    case CommitStatus::insufficient_endorsements:
      return "insufficient_endorsements";
    case CommitStatus::conflicting_endorsements:
      return "conflicting_endorsements";
    case CommitStatus::duplicate_tx:
      return "duplicate_tx";
    case CommitStatus::malformed_tx:
      return "malformed_tx";
  }
  return "unknown";
}

CommitStatus endorsement_decision(std::string_view tx_id, std::span<const Endorsement> endorsements,
                                  const EndorsementPolicy& policy, std::size_t* positive_peers) {
  policy.validate();
  std::map<std::string_view, int> verdicts;  // bit 0: positive seen, bit 1: negative seen
  for (const Endorsement& e : endorsements) {
    if (e.tx_id != tx_id) continue;
    verdicts[e.peer_id] |= e.positive ? 1 : 2;
  }
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (const auto& [peer, v] : verdicts) {
    if (v & 1) ++pos;
    if (v & 2) ++neg;
  }
  if (positive_peers) *positive_peers = pos;
  if (pos > 0 && neg > 0) return CommitStatus::conflicting_endorsements;
  return pos >= policy.required_k ? CommitStatus::accepted : CommitStatus::insufficient_endorsements;
}

// ---------------------------------------------------------------------------
// Blocks

Bytes serialize_block_payload(std::uint64_t height, const Hash32& prev_hash, std::span<const RideLogTx> txs) {
  ByteWriter w;
  w.u64(height);
  w.raw(prev_hash);
  w.u32(static_cast<std::uint32_t>(txs.size()));
  for (const auto& tx : txs) tx.serialize(w);
  return std::move(w).take();
}

Block decode_block(const StoredBlock& stored) {
  ByteReader r(stored.payload);
  Block b;
  b.height = r.u64();
  b.prev_hash = r.fixed<32>();
  std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) b.txs.push_back(RideLogTx::deserialize(r));
  r.expect_done();
  b.block_hash = stored.block_hash;
  b.committed_at = stored.committed_at;
  return b;
}

// ---------------------------------------------------------------------------
// Ledger

Ledger::Ledger(LedgerConfig config) : config_(config) {
  if (config_.batch_size == 0) throw ValidationError("ledger batch size must be positive");
  if (config_.block_timeout <= 0) throw ValidationError("ledger block timeout must be positive");
}

Ledger::Ledger(Ledger&& other) noexcept
    : config_(other.config_),
      stored_(std::move(other.stored_)),
      pending_(std::move(other.pending_)),
      known_tx_ids_(std::move(other.known_tx_ids_)),
      committed_txs_(other.committed_txs_) {}

CommitReceipt Ledger::submit_tx(const RideLogTx& tx, std::span<const Endorsement> endorsements,
                                const EndorsementPolicy& policy, Micros now) {
  CommitReceipt receipt;
  receipt.tx_id = tx.tx_id;
  if (tx.tx_id.empty()) {
    receipt.status = CommitStatus::malformed_tx;
    receipt.detail = "empty tx_id";
    return receipt;
  }
  receipt.status = endorsement_decision(tx.tx_id, endorsements, policy, &receipt.positive_peers);
  std::lock_guard lock(mu_);
  if (known_tx_ids_.count(tx.tx_id) != 0) {
    receipt.status = CommitStatus::duplicate_tx;
    receipt.detail = "tx_id already on the ledger or pending";
    return receipt;
  }
  if (receipt.status != CommitStatus::accepted) {
    receipt.detail = std::to_string(receipt.positive_peers) + " positive endorsement(s), policy " +
                     std::to_string(policy.required_k) + "-of-" + std::to_string(policy.peer_set_size_n);
    return receipt;
  }
  known_tx_ids_.insert(tx.tx_id);
  pending_.push_back({tx, now});
  return receipt;
}

std::optional<Block> Ledger::form_block(Micros committed_at) {
  std::lock_guard lock(mu_);
  if (pending_.empty()) return std::nullopt;
  const std::size_t take = std::min(pending_.size(), config_.batch_size);
  Block b;
  b.height = stored_.size();
  if (!stored_.empty()) b.prev_hash = stored_.back().block_hash;
  for (std::size_t i = 0; i < take; ++i) b.txs.push_back(std::move(pending_[i].tx));
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(take));
  Bytes payload = serialize_block_payload(b.height, b.prev_hash, b.txs);
  b.block_hash = sha256(payload);
  b.committed_at = committed_at;
  stored_.push_back({std::move(payload), b.block_hash, committed_at});
  committed_txs_ += take;
  return b;
}

bool Ledger::block_due(Micros now) const {
  std::lock_guard lock(mu_);
  if (pending_.empty()) return false;
  return pending_.size() >= config_.batch_size || now - pending_.front().since >= config_.block_timeout;
}

std::optional<Micros> Ledger::pending_since() const {
  std::lock_guard lock(mu_);
  if (pending_.empty()) return std::nullopt;
  return pending_.front().since;
}

std::size_t Ledger::pending_count() const {
  std::lock_guard lock(mu_);
  return pending_.size();
}

ChainVerdict Ledger::verify_chain() const {
  std::lock_guard lock(mu_);
  Hash32 expected_prev{};
  for (std::size_t i = 0; i < stored_.size(); ++i) {
    const StoredBlock& s = stored_[i];
    auto fail = [&](std::string why) { return ChainVerdict{false, i, std::move(why)}; };
    if (sha256(s.payload) != s.block_hash) return fail("block hash does not match contents");
    Block b;
    try {
      b = decode_block(s);
    } catch (const DecodeError& e) {
      return fail(std::string("block payload undecodable: ") + e.what());
    }
    if (b.height != i) return fail("height field is " + std::to_string(b.height));
    if (b.prev_hash != expected_prev) return fail("prev_hash does not link to the previous block");
    expected_prev = s.block_hash;
  }
  return {};
}

std::vector<RideLogTx> Ledger::query_trips(const Registry& registry, const std::string& requester_id) const {
  if (!registry.contains(requester_id)) {
    throw RegistryError(RegistryError::Kind::not_found, "unknown requester '" + requester_id + "'");
  }
  std::vector<RideLogTx> out;
  for (const Block& b : blocks()) {
    for (const RideLogTx& tx : b.txs) {
      if (tx.driver_id == requester_id || tx.rider_id == requester_id) out.push_back(tx);
    }
  }
  return out;
}

std::size_t Ledger::block_count() const {
  std::lock_guard lock(mu_);
  return stored_.size();
}

std::size_t Ledger::tx_count() const {
  std::lock_guard lock(mu_);
  return committed_txs_;
}

Block Ledger::block(std::size_t height) const {
  std::lock_guard lock(mu_);
  if (height >= stored_.size()) throw ValidationError("no block at height " + std::to_string(height));
  return decode_block(stored_[height]);
}

std::vector<Block> Ledger::blocks() const {
  std::lock_guard lock(mu_);
  std::vector<Block> out;
  out.reserve(stored_.size());
  for (const auto& s : stored_) out.push_back(decode_block(s));
  return out;
}

Bytes Ledger::export_binary() const {
  std::lock_guard lock(mu_);
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kVersion);
  w.u64(stored_.size());
  for (const auto& s : stored_) {
    w.u64(static_cast<std::uint64_t>(s.committed_at));
    w.blob(s.payload);
    w.raw(s.block_hash);
  }
  return std::move(w).take();
}

Ledger Ledger::import_binary(ByteSpan bytes, LedgerConfig config) {
  ByteReader r(bytes);
  if (r.remaining() < kMagic.size() || r.fixed<4>() != kMagic) throw DecodeError("not a ledger export (bad magic)");
  std::uint32_t version = r.u32();
  if (version != kVersion) throw DecodeError("unsupported ledger export version " + std::to_string(version));
  std::uint64_t n = r.u64();
  Ledger ledger(config);
  for (std::uint64_t i = 0; i < n; ++i) {
    StoredBlock s;
    s.committed_at = static_cast<Micros>(r.u64());
    s.payload = r.blob();
    s.block_hash = r.fixed<32>();
    ledger.stored_.push_back(std::move(s));
  }
  r.expect_done();
  // Rebuild the duplicate index from whatever still decodes.
  for (const auto& s : ledger.stored_) {
    try {
      Block b = decode_block(s);
      for (const auto& tx : b.txs) ledger.known_tx_ids_.insert(tx.tx_id);
      ledger.committed_txs_ += b.txs.size();
    } catch (const DecodeError&) {
    }
  }
  return ledger;
}

std::string Ledger::export_text() const {
  std::lock_guard lock(mu_);
  std::ostringstream os;
  for (std::size_t i = 0; i < stored_.size(); ++i) {
    const StoredBlock& s = stored_[i];
    Block b;
    try {
      b = decode_block(s);
    } catch (const DecodeError& e) {
      os << "block\t" << i << "\tundecodable\t" << to_hex(s.block_hash) << '\n';
      continue;
    }
    os << "block\t" << b.height << '\t' << to_hex(b.block_hash) << '\t' << to_hex(b.prev_hash) << '\t'
       << b.committed_at << '\t' << b.txs.size() << '\n';
    for (const auto& tx : b.txs) {
      os << "tx\t" << b.height << '\t' << escape_field(tx.tx_id) << '\t' << escape_field(tx.driver_id) << '\t'
         << escape_field(tx.rider_id) << '\t' << tx.trip_time << '\t' << escape_field(tx.origin) << '\t'
         << escape_field(tx.destination) << '\t' << format_price(tx.price_cents) << '\t'
         << (tx.verification_result ? "verified" : "unverified") << '\t' << (tx.nonce ? to_hex(*tx.nonce) : "-")
         << '\t' << escape_field(tx.proof_record) << '\n';
    }
  }
  return os.str();
}

}  // namespace zkride
