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

#include <gtest/gtest.h>

#include <random>

#include "zkride/common/errors.hpp"
#include "zkride/protocol/identity_registry.hpp"

namespace zkride {
namespace {

RideLogTx make_tx(const std::string& id, const std::string& driver = "driver-1", const std::string& rider = "rider-1",
                  std::uint64_t price = 1000) {
  RideLogTx tx;
  tx.tx_id = id;
  tx.driver_id = driver;
  tx.rider_id = rider;
  tx.trip_time = 42;
  tx.origin = "A";
  tx.destination = "B";
  tx.price_cents = price;
  tx.proof_record = "abcd";
  tx.verification_result = true;
  return tx;
}

std::vector<Endorsement> positives(const std::string& tx_id, int count) {
  std::vector<Endorsement> out;
  for (int i = 0; i < count; ++i) out.push_back({"peer-" + std::to_string(i + 1), tx_id, true, 0, ""});
  return out;
}

const EndorsementPolicy kOneOfAny{1, 3};

void commit(Ledger& ledger, const RideLogTx& tx) {
  ASSERT_TRUE(ledger.submit_tx(tx, positives(tx.tx_id, 1), kOneOfAny).accepted());
  ASSERT_TRUE(ledger.form_block(0));
}

Ledger five_blocks() {
  Ledger ledger;
  for (int i = 0; i < 5; ++i) commit(ledger, make_tx("tx-" + std::to_string(i), "driver-1", "rider-1", 100 * i));
  return ledger;
}

TEST(EndorsementPolicyTest, Validation) {
  EXPECT_NO_THROW((EndorsementPolicy{1, 1}.validate()));
  EXPECT_NO_THROW((EndorsementPolicy{3, 3}.validate()));
  EXPECT_THROW((EndorsementPolicy{0, 3}.validate()), ValidationError);
  EXPECT_THROW((EndorsementPolicy{4, 3}.validate()), ValidationError);
  EXPECT_THROW((EndorsementPolicy{1, 0}.validate()), ValidationError);
}

TEST(SubmitTest, OnePositiveUnderOneOfAnyCommits) {
  Ledger ledger;
  auto r = ledger.submit_tx(make_tx("tx-1"), positives("tx-1", 1), kOneOfAny);
  EXPECT_EQ(r.status, CommitStatus::accepted);
  EXPECT_EQ(r.positive_peers, 1u);
  auto b = ledger.form_block(7);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->txs.size(), 1u);
  EXPECT_EQ(ledger.tx_count(), 1u);
}

TEST(SubmitTest, TwoPositivesUnderThreeOfAnyAreRejectedWithoutMutation) {
  Ledger ledger;
  auto r = ledger.submit_tx(make_tx("tx-1"), positives("tx-1", 2), {3, 3});
  EXPECT_EQ(r.status, CommitStatus::insufficient_endorsements);
  EXPECT_EQ(ledger.pending_count(), 0u);
  EXPECT_FALSE(ledger.form_block(0));
  EXPECT_EQ(ledger.block_count(), 0u);
  // Not remembered either: a later, properly endorsed submission succeeds.
  EXPECT_TRUE(ledger.submit_tx(make_tx("tx-1"), positives("tx-1", 3), {3, 3}).accepted());
}

TEST(SubmitTest, DuplicateTxIdRejected) {
  Ledger ledger;
  commit(ledger, make_tx("tx-1"));
  EXPECT_EQ(ledger.submit_tx(make_tx("tx-1"), positives("tx-1", 1), kOneOfAny).status, CommitStatus::duplicate_tx);
  ASSERT_TRUE(ledger.submit_tx(make_tx("tx-2"), positives("tx-2", 1), kOneOfAny).accepted());
  EXPECT_EQ(ledger.submit_tx(make_tx("tx-2"), positives("tx-2", 1), kOneOfAny).status, CommitStatus::duplicate_tx);
}

TEST(SubmitTest, ConflictingVerdictsRejected) {
  Ledger ledger;
  auto e = positives("tx-1", 2);
  e.push_back({"peer-3", "tx-1", false, 0, "bad proof"});
  EXPECT_EQ(ledger.submit_tx(make_tx("tx-1"), e, kOneOfAny).status, CommitStatus::conflicting_endorsements);
  // A peer contradicting itself is a conflict too.
  std::vector<Endorsement> self = {{"peer-1", "tx-2", true, 0, ""}, {"peer-1", "tx-2", false, 0, ""}};
  EXPECT_EQ(ledger.submit_tx(make_tx("tx-2"), self, kOneOfAny).status, CommitStatus::conflicting_endorsements);
  EXPECT_EQ(ledger.pending_count(), 0u);
}

TEST(SubmitTest, EmptyTxIdIsMalformed) {
  Ledger ledger;
  EXPECT_EQ(ledger.submit_tx(make_tx(""), positives("", 1), kOneOfAny).status, CommitStatus::malformed_tx);
}

TEST(EndorsementDecisionTest, IgnoresOtherTxsAndRepeatedPeers) {
  std::vector<Endorsement> e = {{"peer-1", "tx-1", true, 0, ""},
                                {"peer-1", "tx-1", true, 0, ""},
                                {"peer-2", "tx-other", true, 0, ""},
                                {"peer-3", "tx-other", false, 0, ""}};
  std::size_t pos = 0;
  EXPECT_EQ(endorsement_decision("tx-1", e, {2, 3}, &pos), CommitStatus::insufficient_endorsements);
  EXPECT_EQ(pos, 1u);
  EXPECT_EQ(endorsement_decision("tx-1", e, {1, 3}), CommitStatus::accepted);
}

// The decision depends only on the distinct-peer count and the policy.
TEST(EndorsementDecisionTest, PureFunctionOfDistinctCountForAllPoliciesUpToFive) {
  std::mt19937_64 rng(5);
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      for (std::uint32_t distinct = 0; distinct <= n; ++distinct) {
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<Endorsement> e;
          for (std::uint32_t p = 0; p < distinct; ++p) {
            int copies = 1 + static_cast<int>(rng() % 3);
            for (int c = 0; c < copies; ++c) e.push_back({"peer-" + std::to_string(p), "tx", true, 0, ""});
          }
          int noise = static_cast<int>(rng() % 4);
          for (int i = 0; i < noise; ++i) e.push_back({"peer-" + std::to_string(i), "tx-x", rng() % 2 == 0, 0, ""});
          std::shuffle(e.begin(), e.end(), rng);
          CommitStatus expected =
              distinct >= k ? CommitStatus::accepted : CommitStatus::insufficient_endorsements;
          EXPECT_EQ(endorsement_decision("tx", e, {k, n}), expected) << k << "-of-" << n << " with " << distinct;
        }
      }
    }
  }
}

TEST(FormBlockTest, GenesisAndLinkage) {
  Ledger ledger;
  commit(ledger, make_tx("tx-1"));
  commit(ledger, make_tx("tx-2"));
  Block b0 = ledger.block(0);
  Block b1 = ledger.block(1);
  EXPECT_EQ(b0.height, 0u);
  EXPECT_EQ(b0.prev_hash, Hash32{});
  EXPECT_EQ(b1.height, 1u);
  EXPECT_EQ(b1.prev_hash, b0.block_hash);
}

TEST(FormBlockTest, TenTxsBatchFiveMakeTwoBlocks) {
  Ledger ledger({5, 500'000});
  for (int i = 0; i < 10; ++i) {
    ASSERT_TRUE(ledger.submit_tx(make_tx("tx-" + std::to_string(i)), positives("tx-" + std::to_string(i), 1),
                                 kOneOfAny)
                    .accepted());
  }
  auto a = ledger.form_block(1);
  auto b = ledger.form_block(2);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->txs.size(), 5u);
  EXPECT_EQ(b->txs.size(), 5u);
  EXPECT_EQ(a->txs.front().tx_id, "tx-0");
  EXPECT_EQ(b->txs.front().tx_id, "tx-5");
  EXPECT_FALSE(ledger.form_block(3));
  EXPECT_EQ(ledger.block_count(), 2u);
}

TEST(FormBlockTest, EmptyPendingIsNoOp) {
  Ledger ledger;
  EXPECT_FALSE(ledger.form_block(0));
  EXPECT_EQ(ledger.block_count(), 0u);
}

TEST(FormBlockTest, BlockDueOnBatchOrTimeout) {
  Ledger ledger({3, 500'000});
  EXPECT_FALSE(ledger.block_due(10'000'000));
  ledger.submit_tx(make_tx("a"), positives("a", 1), kOneOfAny, 100);
  ledger.submit_tx(make_tx("b"), positives("b", 1), kOneOfAny, 200'000);
  EXPECT_EQ(ledger.pending_since(), 100);
  EXPECT_FALSE(ledger.block_due(500'099));
  EXPECT_TRUE(ledger.block_due(500'100));
  ledger.submit_tx(make_tx("c"), positives("c", 1), kOneOfAny, 300'000);
  EXPECT_TRUE(ledger.block_due(300'000));  // full batch
  ledger.form_block(300'000);
  EXPECT_FALSE(ledger.pending_since());
  // The timeout runs from each tx's own submission, not from the last cut.
  Ledger l2({10, 500'000});
  l2.submit_tx(make_tx("a"), positives("a", 1), kOneOfAny, 0);
  l2.submit_tx(make_tx("b"), positives("b", 1), kOneOfAny, 400'000);
  l2.form_block(500'000);
  ASSERT_EQ(l2.block_count(), 1u);
  EXPECT_EQ(l2.pending_count(), 0u);
}

TEST(SerializationTest, MatchesIndependentEncoding) {
  // Expected bytes and hashes were produced by a separate Python encoder
  // following the documented layout.
  RideLogTx tx = make_tx("tx-1", "driver-1", "rider-1", 1999);
  tx.trip_time = 1234;
  tx.nonce = crypto::Nonce{};
  for (int i = 0; i < 16; ++i) (*tx.nonce)[i] = static_cast<std::uint8_t>(i);
  Bytes payload = serialize_block_payload(0, Hash32{}, std::span<const RideLogTx>(&tx, 1));
  EXPECT_EQ(to_hex(payload),
            "00000000000000000000000000000000000000000000000000000000000000000000000000000000000000010000000474782d31"
            "000000086472697665722d310000000772696465722d3100000000000004d20000000141000000014200000000000007cf0000"
            "0004616263640101000102030405060708090a0b0c0d0e0f");
  Ledger ledger;
  ASSERT_TRUE(ledger.submit_tx(tx, positives("tx-1", 1), kOneOfAny).accepted());
  auto b0 = ledger.form_block(0);
  EXPECT_EQ(to_hex(b0->block_hash), "26afefe6501cd876218295a9afc97674611b2cc1b1a297d4aa5220799eed8a24");

  RideLogTx bare;
  bare.tx_id = "tx-2";
  bare.driver_id = "d";
  bare.rider_id = "r";
  ASSERT_TRUE(ledger.submit_tx(bare, positives("tx-2", 1), kOneOfAny).accepted());
  auto b1 = ledger.form_block(0);
  EXPECT_EQ(to_hex(b1->block_hash), "26cad68215ddba6a4ad8f82eb1a20c5ee448499ec19e2259f856414b39e83266");
}

TEST(SerializationTest, TxRoundTrip) {
  RideLogTx tx = make_tx("tx-9");
  tx.nonce = crypto::Nonce{};
  (*tx.nonce)[3] = 7;
  ByteWriter w;
  tx.serialize(w);
  Bytes bytes = std::move(w).take();
  ByteReader r(bytes);
  EXPECT_EQ(RideLogTx::deserialize(r), tx);
  r.expect_done();
}

TEST(PriceTest, ParseAndFormat) {
  EXPECT_EQ(parse_price_cents("12.34"), 1234u);
  EXPECT_EQ(parse_price_cents("5"), 500u);
  EXPECT_EQ(parse_price_cents("0.5"), 50u);
  EXPECT_EQ(parse_price_cents("0"), 0u);
  EXPECT_THROW(parse_price_cents("-1"), ValidationError);
  EXPECT_THROW(parse_price_cents("1.234"), ValidationError);
  EXPECT_THROW(parse_price_cents("abc"), ValidationError);
  EXPECT_THROW(parse_price_cents(""), ValidationError);
  EXPECT_EQ(format_price(1234), "12.34");
  EXPECT_EQ(format_price(5), "0.05");
  EXPECT_EQ(format_price(0), "0.00");
}

TEST(VerifyChainTest, UntouchedLedgerIsIntact) {
  EXPECT_TRUE(Ledger().verify_chain().intact);
  EXPECT_TRUE(five_blocks().verify_chain().intact);
}

TEST(VerifyChainTest, PriceMutationInBlockTwoIsCaughtAtTwo) {
  Ledger ledger = five_blocks();
  auto& stored = ledger.storage_out_of_band();
  Block b = decode_block(stored[2]);
  b.txs[0].price_cents += 1;
  stored[2].payload = serialize_block_payload(b.height, b.prev_hash, b.txs);
  ChainVerdict v = ledger.verify_chain();
  EXPECT_FALSE(v.intact);
  EXPECT_EQ(v.first_violation, 2u);
}

TEST(VerifyChainTest, ResealedBlockBreaksTheNextLink) {
  Ledger ledger = five_blocks();
  auto& stored = ledger.storage_out_of_band();
  Block b = decode_block(stored[2]);
  b.txs[0].price_cents += 1;
  stored[2].payload = serialize_block_payload(b.height, b.prev_hash, b.txs);
  stored[2].block_hash = sha256(stored[2].payload);
  EXPECT_EQ(ledger.verify_chain().first_violation, 3u);
}

TEST(VerifyChainTest, SwappedBlocksCaughtAtFirstSwappedHeight) {
  Ledger ledger = five_blocks();
  auto& stored = ledger.storage_out_of_band();
  std::swap(stored[1], stored[2]);
  EXPECT_EQ(ledger.verify_chain().first_violation, 1u);
}

TEST(VerifyChainTest, EverySingleBitFlipIsDetectedAtItsHeight) {
  Ledger ledger = five_blocks();
  const auto original = ledger.storage_out_of_band();
  std::size_t flips = 0;
  for (std::size_t h = 0; h < original.size(); ++h) {
    const std::size_t len = original[h].payload.size() + original[h].block_hash.size();
    for (std::size_t i = 0; i < len; ++i) {
      for (int bit = 0; bit < 8; ++bit) {
        auto& stored = ledger.storage_out_of_band();
        stored = original;
        auto mask = static_cast<std::uint8_t>(1u << bit);
        if (i < stored[h].payload.size()) {
          stored[h].payload[i] ^= mask;
        } else {
          stored[h].block_hash[i - stored[h].payload.size()] ^= mask;
        }
        ChainVerdict v = ledger.verify_chain();
        ASSERT_FALSE(v.intact) << "block " << h << " byte " << i << " bit " << bit;
        ASSERT_EQ(v.first_violation, h);
        ++flips;
      }
    }
  }
  EXPECT_GT(flips, 5u * 8 * 100);
}

TEST(VerifyChainTest, RandomLegalOperationSequencesStayIntact) {
  std::mt19937_64 rng(99);
  for (int run = 0; run < 20; ++run) {
    Ledger ledger({1 + rng() % 6, 500'000});
    int next = 0;
    for (int op = 0; op < 60; ++op) {
      switch (rng() % 4) {
        case 0:
        case 1: {
          std::string id = "tx-" + std::to_string(next++);
          ledger.submit_tx(make_tx(id), positives(id, static_cast<int>(rng() % 4)), {1 + static_cast<std::uint32_t>(rng() % 3), 3},
                           op);
          break;
        }
        case 2:
          ledger.form_block(op);
          break;
        case 3:
          ledger.submit_tx(make_tx("tx-0"), positives("tx-0", 3), kOneOfAny, op);  // duplicate attempts
          break;
      }
      ASSERT_TRUE(ledger.verify_chain().intact);
    }
  }
}

TEST(QueryTripsTest, ClientsSeeOnlyTheirOwnTrips) {
  Registry reg("issuer", crypto::CryptoParams::toy(), Drbg::from_u64(1));
  reg.register_driver("driver-1", "1");
  reg.register_driver("driver-2", "2");
  reg.register_rider("rider-1");
  reg.register_rider("rider-2");
  reg.register_rider("rider-3");
  Ledger ledger;
  commit(ledger, make_tx("t1", "driver-1", "rider-1"));
  commit(ledger, make_tx("t2", "driver-2", "rider-1"));
  commit(ledger, make_tx("t3", "driver-1", "rider-2"));
  commit(ledger, make_tx("t4", "driver-2", "rider-1"));

  auto r1 = ledger.query_trips(reg, "rider-1");
  ASSERT_EQ(r1.size(), 3u);
  for (const auto& tx : r1) EXPECT_EQ(tx.rider_id, "rider-1");
  auto r2 = ledger.query_trips(reg, "rider-2");
  ASSERT_EQ(r2.size(), 1u);
  EXPECT_EQ(r2[0].tx_id, "t3");
  EXPECT_EQ(ledger.query_trips(reg, "driver-1").size(), 2u);
  EXPECT_TRUE(ledger.query_trips(reg, "rider-3").empty());
  EXPECT_THROW(ledger.query_trips(reg, "stranger"), RegistryError);
}

TEST(ExportTest, BinaryRoundTripIsByteIdentical) {
  Ledger ledger = five_blocks();
  Bytes bin = ledger.export_binary();
  Ledger back = Ledger::import_binary(bin);
  EXPECT_EQ(back.export_binary(), bin);
  EXPECT_TRUE(back.verify_chain().intact);
  EXPECT_EQ(back.block_count(), 5u);
  EXPECT_EQ(back.tx_count(), 5u);
  EXPECT_EQ(back.block(3).committed_at, ledger.block(3).committed_at);
}

TEST(ExportTest, BinaryImportRejectsFramingErrors) {
  Bytes bin = five_blocks().export_binary();
  EXPECT_THROW(Ledger::import_binary(Bytes{}), DecodeError);
  Bytes bad_magic = bin;
  bad_magic[0] = 'X';
  EXPECT_THROW(Ledger::import_binary(bad_magic), DecodeError);
  Bytes truncated(bin.begin(), bin.end() - 3);
  EXPECT_THROW(Ledger::import_binary(truncated), DecodeError);
  Bytes trailing = bin;
  trailing.push_back(0);
  EXPECT_THROW(Ledger::import_binary(trailing), DecodeError);
}

TEST(ExportTest, TextDumpHasOneLinePerBlockAndTx) {
  Ledger ledger = five_blocks();
  std::string text = ledger.export_text();
  std::size_t blocks = 0;
  std::size_t txs = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("block\t", 0) == 0) ++blocks;
    if (line.rfind("tx\t", 0) == 0) ++txs;
  }
  EXPECT_EQ(blocks, 5u);
  EXPECT_EQ(txs, 5u);
}

}  // namespace
}  // namespace zkride
