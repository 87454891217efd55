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

#include "zkride/protocol/network_sim.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "zkride/common/errors.hpp"

namespace zkride {
namespace {

NetworkConfig tuned_network(std::vector<double> delays_ms = {36, 55, 65}) {
  NetworkConfig net;
  for (std::size_t i = 0; i < delays_ms.size(); ++i) {
    net.peers.push_back({"peer-" + std::to_string(i + 1), {delays_ms[i], 0}});
  }
  return net;
}

std::unique_ptr<World> toy_world(NetworkConfig net = tuned_network(), std::uint64_t seed = 3) {
  return std::make_unique<World>(crypto::CryptoParams::toy(), net, Population{}, Drbg::from_u64(seed));
}

LoadProfile profile(double rate, double duration, std::uint32_t k = 1, std::uint32_t n = 3) {
  LoadProfile p;
  p.send_rate = rate;
  p.duration_s = duration;
  p.policy = {k, n};
  return p;
}

std::size_t count(const EventLog& log, EventType t) {
  std::size_t c = 0;
  for (const auto& e : log.events()) c += e.type == t ? 1 : 0;
  return c;
}

TEST(DelayModelTest, FixedAndJitteredSamples) {
  Drbg rng = Drbg::from_u64(1);
  DelayModel fixed{50, 0};
  for (int i = 0; i < 10; ++i) EXPECT_EQ(fixed.sample(rng), 50'000);
  DelayModel jitter{50, 10};
  std::set<Micros> seen;
  for (int i = 0; i < 1000; ++i) {
    Micros s = jitter.sample(rng);
    EXPECT_GE(s, 40'000);
    EXPECT_LE(s, 60'000);
    seen.insert(s);
  }
  EXPECT_GT(seen.size(), 100u);
  EXPECT_EQ((DelayModel{5, 20}.sample(rng) >= 0), true);  // clamped at zero
  EXPECT_THROW((DelayModel{-1, 0}.validate()), ValidationError);
  EXPECT_THROW((DelayModel{1, -1}.validate()), ValidationError);
}

class PeerTest : public ::testing::Test {
 protected:
  PeerTest() : world(toy_world()) {
    auto [k, rec] = world->registry().register_driver("driver-x", "9907184");
    key = k;
  }

  EndorsementRequest request(std::string_view secret, std::optional<crypto::Nonce> nonce) {
    auto proof = crypto::generate_proof(key, crypto::digest_message(secret), nonce, world->params());
    return {"tx-1", "driver-x", proof.to_hex(), nonce};
  }

  std::unique_ptr<World> world;
  crypto::ProverKey key{crypto::U256(1), crypto::BackendId::toy_small_group};
};

TEST_F(PeerTest, HonestSessionIsEndorsed) {
  crypto::Nonce n{};
  n[0] = 1;
  Drbg rng = Drbg::from_u64(2);
  Endorsement e = peer_endorse(*world->peers()[0], request("9907184", n), 1000, rng);
  EXPECT_TRUE(e.positive);
  EXPECT_EQ(e.peer_id, "peer-1");
  EXPECT_EQ(e.tx_id, "tx-1");
  EXPECT_EQ(e.at, 1000 + 36'000);
}

TEST_F(PeerTest, FakeLicenceIsRejected) {
  // The two licences hash to different toy exponents, so this rejection is
  // genuine rather than a 1-in-23 collision.
  auto e = world->peers()[1]->evaluate(request("180612", std::nullopt));
  EXPECT_FALSE(e.positive);
  EXPECT_NE(e.cause.find("verification failed"), std::string::npos);
}

TEST_F(PeerTest, UnresolvableDriverGivesNegativeVerdictWithCause) {
  auto req = request("9907184", std::nullopt);
  req.driver_id = "ghost";
  auto e = world->peers()[0]->evaluate(req);
  EXPECT_FALSE(e.positive);
  EXPECT_NE(e.cause.find("unresolvable"), std::string::npos);
  world->registry().register_rider("rider-x");
  req.driver_id = "rider-x";
  e = world->peers()[0]->evaluate(req);
  EXPECT_FALSE(e.positive);
  EXPECT_NE(e.cause.find("unresolvable"), std::string::npos);
}

TEST_F(PeerTest, MalformedProofGivesNegativeVerdict) {
  auto req = request("9907184", std::nullopt);
  req.proof_hex = "zz";
  auto e = world->peers()[0]->evaluate(req);
  EXPECT_FALSE(e.positive);
  EXPECT_NE(e.cause.find("malformed"), std::string::npos);
}

TEST_F(PeerTest, FiftyMillisecondDelayStampsTheVerdict) {
  NetworkConfig net = tuned_network({50});
  PeerNode peer(net.peers[0], world->registry());
  Drbg rng = Drbg::from_u64(4);
  for (Micros submitted : {0, 123, 5'000'000}) {
    Endorsement e = peer_endorse(peer, request("9907184", std::nullopt), submitted, rng);
    EXPECT_GE(e.at, submitted + 50'000);
  }
}

TEST(EventLogTest, TextRoundTripAndOrdering) {
  EventLog log;
  log.append({EventType::commit, "tx-1", 30, std::nullopt, std::nullopt});
  log.append({EventType::submit, "tx-1", 10, std::nullopt, std::nullopt});
  log.append({EventType::endorse, "tx-1", 20, "peer-1", true});
  log.append({EventType::endorse, "tx-1", 20, "peer-2", false});
  log.append({EventType::reject, "tx-2", 40, std::nullopt, std::nullopt});
  auto ev = log.events();
  ASSERT_EQ(ev.size(), 5u);
  EXPECT_EQ(ev[0].type, EventType::submit);
  EXPECT_EQ(ev[1].peer_id, "peer-1");  // ties keep insertion order
  EXPECT_EQ(ev[2].peer_id, "peer-2");
  const std::string text = log.to_text();
  EXPECT_EQ(text.substr(0, text.find('\n')), "submit\ttx-1\t10\t-\t-");
  EXPECT_NE(text.find("endorse\ttx-1\t20\tpeer-2\t0\n"), std::string::npos);
  EventLog back = EventLog::from_text(text);
  EXPECT_EQ(back.events(), ev);
  EXPECT_EQ(back.to_text(), text);
}

TEST(EventLogTest, RejectsMalformedLines) {
  EXPECT_THROW(EventLog::from_text("submit\ttx\t1\t-\n"), DecodeError);
  EXPECT_THROW(EventLog::from_text("launch\ttx\t1\t-\t-\n"), DecodeError);
  EXPECT_THROW(EventLog::from_text("submit\ttx\tabc\t-\t-\n"), DecodeError);
  EXPECT_THROW(EventLog::from_text("endorse\ttx\t1\tp\t2\n"), DecodeError);
}

TEST(LoadProfileTest, Validation) {
  EXPECT_NO_THROW(profile(20, 10).validate());
  EXPECT_THROW(profile(0, 10).validate(), ValidationError);
  EXPECT_THROW(profile(20, 0).validate(), ValidationError);
  EXPECT_THROW(profile(20, -1).validate(), ValidationError);
  EXPECT_THROW(profile(20, 10, 4, 3).validate(), ValidationError);
  auto world = toy_world();
  EXPECT_THROW(run_load(profile(20, 1, 1, 2), *world), ValidationError);  // n must match the peers
}

TEST(RunLoadTest, TwentyTpsForTenSecondsSubmitsTwoHundred) {
  auto world = toy_world();
  LoadResult r = run_load(profile(20, 10), *world);
  EXPECT_EQ(r.submitted, 200u);
  EXPECT_EQ(count(r.log, EventType::submit), 200u);
  EXPECT_EQ(r.committed, 200u);
  EXPECT_EQ(count(r.log, EventType::commit), 200u);
  EXPECT_EQ(count(r.log, EventType::endorse), 600u);
  EXPECT_EQ(r.rejected, 0u);
  EXPECT_EQ(world->ledger().tx_count(), 200u);
  EXPECT_TRUE(world->ledger().verify_chain().intact);
}

TEST(RunLoadTest, TinyDurationStillSubmits) {
  auto world = toy_world();
  LoadResult r = run_load(profile(10, 0.1), *world);
  EXPECT_GE(r.submitted, 1u);
  EXPECT_EQ(r.committed, r.submitted);
}

TEST(RunLoadTest, OpenLoopInterArrivalMatchesRate) {
  for (double rate : {7.0, 20.0, 40.0}) {
    auto world = toy_world();
    LoadResult r = run_load(profile(rate, 5), *world);
    std::vector<Micros> t;
    for (const auto& e : r.log.events()) {
      if (e.type == EventType::submit) t.push_back(e.timestamp);
    }
    ASSERT_GT(t.size(), 2u);
    double mean = micros_to_seconds(t.back() - t.front()) / static_cast<double>(t.size() - 1);
    EXPECT_NEAR(mean, 1.0 / rate, 0.1 / rate) << rate;
  }
}

TEST(RunLoadTest, EveryCommitFollowsKDistinctPositiveVerdicts) {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    auto world = toy_world();
    LoadResult r = run_load(profile(25, 4, k), *world);
    std::map<std::string, Micros> commit_at;
    for (const auto& e : r.log.events()) {
      if (e.type == EventType::commit) commit_at[e.tx_id] = e.timestamp;
    }
    ASSERT_EQ(commit_at.size(), r.submitted);
    std::map<std::string, std::set<std::string>> endorsed_before;
    for (const auto& e : r.log.events()) {
      if (e.type != EventType::endorse || !*e.verdict) continue;
      if (e.timestamp <= commit_at.at(e.tx_id)) endorsed_before[e.tx_id].insert(*e.peer_id);
    }
    for (const auto& [tx, t] : commit_at) EXPECT_GE(endorsed_before[tx].size(), k) << tx;
  }
}

TEST(RunLoadTest, DeterministicUnderFixedSeed) {
  auto a = toy_world(tuned_network(), 9);
  auto b = toy_world(tuned_network(), 9);
  LoadResult ra = run_load(profile(30, 3, 2), *a);
  LoadResult rb = run_load(profile(30, 3, 2), *b);
  EXPECT_EQ(ra.log.to_text(), rb.log.to_text());
  EXPECT_EQ(a->ledger().export_binary(), b->ledger().export_binary());
}

double commit_rate(const LoadResult& r, double from_s, double to_s) {
  std::size_t c = 0;
  for (const auto& e : r.log.events()) {
    if (e.type == EventType::commit && e.timestamp >= from_s * 1e6 && e.timestamp < to_s * 1e6) ++c;
  }
  return static_cast<double>(c) / (to_s - from_s);
}

TEST(RunLoadTest, BeyondSaturationCommitRatePlateausBelowSendRate) {
  auto slow = toy_world();
  LoadResult r = run_load(profile(40, 10), *slow);
  double rate = commit_rate(r, 1, 10);
  EXPECT_LT(rate, 0.8 * 40);
  EXPECT_NEAR(rate, 1000.0 / 36, 2.0);
  EXPECT_EQ(r.committed, r.submitted);  // overload shows up as latency, not loss
}

TEST(RunLoadTest, SaturationThroughputNonIncreasingInK) {
  double prev = 1e9;
  for (std::uint32_t k = 1; k <= 3; ++k) {
    auto world = toy_world();
    LoadResult r = run_load(profile(40, 8, k), *world);
    double rate = commit_rate(r, 1, 8);
    EXPECT_LE(rate, prev * 1.02) << k;
    prev = rate;
  }
}

TEST(RunLoadTest, WallClockEngineCommitsEverything) {
  NetworkConfig net = tuned_network({5, 8, 12});
  net.ledger.block_timeout = 100'000;
  net.commit_latency = 20'000;
  World world(crypto::CryptoParams::toy(), net, Population{}, Drbg::from_u64(8));
  LoadResult r = run_load(profile(20, 1, 2), world, Engine::wall_clock);
  EXPECT_EQ(r.submitted, 20u);
  EXPECT_EQ(r.committed, 20u);
  EXPECT_EQ(count(r.log, EventType::commit), 20u);
  EXPECT_EQ(count(r.log, EventType::endorse), 60u);
  EXPECT_TRUE(world.ledger().verify_chain().intact);
  std::map<std::string, Micros> submit_at;
  for (const auto& e : r.log.events()) {
    if (e.type == EventType::submit) submit_at[e.tx_id] = e.timestamp;
    // Real delays: nothing commits sooner than the second fastest peer plus commit latency.
    if (e.type == EventType::commit) EXPECT_GE(e.timestamp - submit_at.at(e.tx_id), 8'000 + 20'000);
  }
}

TEST(EngineTest, Parse) {
  EXPECT_EQ(parse_engine("virtual"), Engine::virtual_clock);
  EXPECT_EQ(parse_engine("wall"), Engine::wall_clock);
  EXPECT_THROW(parse_engine("sundial"), ValidationError);
}

}  // namespace
}  // namespace zkride
