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

#ifndef ZKRIDE_PROTOCOL_LEDGER_HPP_
#define ZKRIDE_PROTOCOL_LEDGER_HPP_

// Append-only, hash-chained store of ride logs. Transactions enter a pending
// queue once they carry enough endorsements; a single committer cuts them
// into blocks.
//
// Canonical block payload (all integers big-endian, strings and blobs
// prefixed with a 4-byte big-endian length):
//   u64 height | 32 bytes prev_hash | u32 tx count | tx...
// Canonical transaction:
//   str tx_id | str driver_id | str rider_id | u64 trip_time (micros) |
//   str origin | str destination | u64 price (cents) | str proof_record |
//   u8 verification_result | u8 nonce present | [16 bytes nonce]
// block_hash = SHA-256(payload). committed_at is orderer metadata kept next
// to the block and is not covered by the hash.

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zkride/common/bytes.hpp"
#include "zkride/common/sha256.hpp"
#include "zkride/common/time_source.hpp"
#include "zkride/crypto/crypto_core.hpp"

namespace zkride {

class Registry;

struct RideLogTx {
  std::string tx_id;
  std::string driver_id;
  std::string rider_id;
  Micros trip_time = 0;
  std::string origin;
  std::string destination;
  std::uint64_t price_cents = 0;
  std::string proof_record;  // hex of Proof::encode()
  bool verification_result = false;
  std::optional<crypto::Nonce> nonce;

  void serialize(ByteWriter& w) const;
  static RideLogTx deserialize(ByteReader& r);

  friend bool operator==(const RideLogTx&, const RideLogTx&) = default;
};

// "12.34" -> 1234. Throws ValidationError for negative or malformed prices.
std::uint64_t parse_price_cents(std::string_view decimal);
std::string format_price(std::uint64_t cents);

struct Endorsement {
  std::string peer_id;
  std::string tx_id;
  bool positive = false;
  Micros at = 0;
  std::string cause;  // why a negative verdict was given
};

// k-of-any over n peers.
struct EndorsementPolicy {
  std::uint32_t required_k = 1;
  std::uint32_t peer_set_size_n = 1;

  // Throws ValidationError unless 1 <= k <= n.
  void validate() const;
  friend bool operator==(const EndorsementPolicy&, const EndorsementPolicy&) = default;
};

enum class CommitStatus { accepted, insufficient_endorsements, conflicting_endorsements, duplicate_tx, malformed_tx };

std::string_view to_string(CommitStatus s);

struct CommitReceipt {
  CommitStatus status = CommitStatus::malformed_tx;
  std::string tx_id;
  std::size_t positive_peers = 0;
  std::string detail;
  bool accepted() const { return status == CommitStatus::accepted; }
};

// The endorsement rule alone: endorsements for other transactions are
// ignored, each peer counts once, any disagreement among the endorsing
// peers (including one peer contradicting itself) is a conflict, and
// otherwise the tx is accepted iff at least k distinct peers endorsed it.
CommitStatus endorsement_decision(std::string_view tx_id, std::span<const Endorsement> endorsements,
                                  const EndorsementPolicy& policy, std::size_t* positive_peers = nullptr);

struct Block {
  std::uint64_t height = 0;
  Hash32 prev_hash{};
  std::vector<RideLogTx> txs;
  Hash32 block_hash{};
  Micros committed_at = 0;
};

Bytes serialize_block_payload(std::uint64_t height, const Hash32& prev_hash, std::span<const RideLogTx> txs);

// What the ledger physically keeps per block.
struct StoredBlock {
  Bytes payload;
  Hash32 block_hash{};
  Micros committed_at = 0;
};

struct ChainVerdict {
  bool intact = true;
  std::optional<std::uint64_t> first_violation;
  std::string reason;
};

struct LedgerConfig {
  std::size_t batch_size = 10;
  Micros block_timeout = 500'000;  // 500 ms
};

class Ledger {
 public:
  explicit Ledger(LedgerConfig config = {});
  Ledger(Ledger&& other) noexcept;
  Ledger& operator=(Ledger&&) = delete;

  const LedgerConfig& config() const { return config_; }

  // Queues `tx` for the next block iff the endorsements satisfy `policy`;
  // otherwise the ledger is left untouched. `now` is the submission time;
  // the block timeout runs from the submission of the oldest pending tx.
  CommitReceipt submit_tx(const RideLogTx& tx, std::span<const Endorsement> endorsements,
                          const EndorsementPolicy& policy, Micros now = 0);

  // Cuts up to batch_size pending txs (in submission order) into a block.
  // Returns nullopt and changes nothing when nothing is pending.
  std::optional<Block> form_block(Micros committed_at);
  // True when a block should be cut at `now`: a full batch is pending or the
  // oldest pending tx has waited block_timeout.
  bool block_due(Micros now) const;
  std::optional<Micros> pending_since() const;
  std::size_t pending_count() const;

  ChainVerdict verify_chain() const;

  // Trips where the requester is the driver or the rider. Throws
  // RegistryError(not_found) for unregistered requesters.
  std::vector<RideLogTx> query_trips(const Registry& registry, const std::string& requester_id) const;

  std::size_t block_count() const;
  std::size_t tx_count() const;
  // Decodes a committed block; throws DecodeError if its bytes are damaged.
  Block block(std::size_t height) const;
  std::vector<Block> blocks() const;

  // Direct access to the committed bytes, bypassing every check. Exists so
  // tests and the tamper scenario can play the attacker.
  std::vector<StoredBlock>& storage_out_of_band() { return stored_; }

  // Binary export: "ZKRL" | u32 version (1) | u64 block count |
  // per block: u64 committed_at | blob payload | 32 bytes block_hash.
  Bytes export_binary() const;
  // Restores blocks verbatim without validating them (verify_chain does
  // that). Throws DecodeError on framing errors.
  static Ledger import_binary(ByteSpan bytes, LedgerConfig config = {});
  // One "block" line per block followed by one "tx" line per transaction,
  // tab separated.
  std::string export_text() const;

 private:
  struct Pending {
    RideLogTx tx;
    Micros since = 0;
  };

  LedgerConfig config_;
  mutable std::mutex mu_;
  std::vector<StoredBlock> stored_;
  std::vector<Pending> pending_;
  std::set<std::string> known_tx_ids_;
  std::size_t committed_txs_ = 0;
};

Block decode_block(const StoredBlock& stored);

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_LEDGER_HPP_
