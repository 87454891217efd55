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

#include "zkride/protocol/scenarios.hpp"

#include <memory>
#include <sstream>

#include "zkride/common/errors.hpp"
#include "zkride/protocol/ride_workflow.hpp"
#include "zkride/protocol/run_config.hpp"

namespace zkride {

std::string_view to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::tamper:
      return "tamper";
    case ScenarioId::eavesdrop:
      return "eavesdrop";
    case ScenarioId::fake_driver:
      return "fake_driver";
    case ScenarioId::replay:
      return "replay";
  }
  return "unknown";
}

std::string_view to_string(ScenarioStatus s) {
  switch (s) {
    case ScenarioStatus::pass:
      return "pass";
    case ScenarioStatus::fail:
      return "fail";
    case ScenarioStatus::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

std::string ScenarioOutcome::to_line() const {
  std::ostringstream os;
  os << to_string(id) << '\t' << escape_field(variant) << '\t' << to_string(status) << '\t'
     << escape_field(expected_defense) << '\t' << escape_field(observed) << '\t' << escape_field(message);
  return os.str();
}

ScenarioEnv ScenarioEnv::from_config(const RunConfig& config) {
  ScenarioEnv env;
  env.params = config.params();
  env.network = config.network_config();
  env.policy = config.policy();
  env.seed = config.seed.value_or(1);
  return env;
}

namespace {

// A private world plus everything needed to run sessions through it.
struct Stage {
  explicit Stage(const ScenarioEnv& env, Population pop)
      : network(with_default_peers(env.network)),
        world(env.params, network, pop, Drbg::from_u64(env.seed)),
        factory(world.registry(), world.rng().fork("sessions"), network.nonce_binding, clock),
        delays(world.rng().fork("delays")),
        policy(env.policy) {
    net.peers = peer_pointers(world.peers());
    net.policy = policy;
    net.ledger = &world.ledger();
    net.commit_latency = network.commit_latency;
  }

  static NetworkConfig with_default_peers(NetworkConfig n) {
    if (n.peers.empty()) {
      for (int i = 1; i <= 3; ++i) n.peers.push_back({"peer-" + std::to_string(i), {0, 0}});
    }
    return n;
  }

  VerificationSession run(const std::string& driver_id, const std::string& rider_id, ByteSpan secret,
                          const crypto::ProverKey& key, TripDetails trip = {}) {
    VerificationSession s = factory.request_verification(driver_id, rider_id, std::move(trip));
    driver_respond(s, secret, key, world.params(), clock);
    complete_verification(s, net, clock, delays);
    clock.advance_by(kMicrosPerSecond);
    return s;
  }

  NetworkConfig network;
  VirtualTime clock;
  World world;
  SessionFactory factory;
  Drbg delays;
  EndorsementPolicy policy;
  VerificationNetwork net;
};

ScenarioOutcome finish(ScenarioOutcome o) {
  o.status = o.observed == o.expected_defense ? ScenarioStatus::pass : ScenarioStatus::fail;
  return o;
}

std::string describe_chain(const ChainVerdict& v) {
  if (v.intact) return "chain intact";
  return "violation at height " + (v.first_violation ? std::to_string(*v.first_violation) : std::string("?"));
}

}  // namespace

ScenarioOutcome scenario_tamper(const ScenarioEnv& env, TamperVariant variant) {
  Stage stage(env, {5, 5});
  const auto& drivers = stage.world.drivers();
  const auto& riders = stage.world.riders();
  for (std::size_t i = 0; i < drivers.size(); ++i) {
    TripDetails trip{"stop-" + std::to_string(i), "stop-" + std::to_string(i + 10), 1000 + 250 * i};
    stage.run(drivers[i].driver_id, riders[i], drivers[i].secret, drivers[i].key, trip);
  }
  Ledger& ledger = stage.world.ledger();
  ScenarioOutcome o;
  o.id = ScenarioId::tamper;
  if (ledger.block_count() < 3) {
    o.variant = "setup";
    o.expected_defense = "5 committed blocks";
    o.observed = std::to_string(ledger.block_count()) + " committed blocks";
    return finish(o);
  }
  auto& stored = ledger.storage_out_of_band();
  switch (variant) {
    case TamperVariant::control:
      o.variant = "control";
      o.expected_defense = "chain intact";
      break;
    case TamperVariant::flip_price: {
      o.variant = "flip_price";
      o.expected_defense = "violation at height 2";
      Block b = decode_block(stored[2]);
      b.txs.front().price_cents ^= 1;
      stored[2].payload = serialize_block_payload(b.height, b.prev_hash, b.txs);
      break;
    }
    case TamperVariant::genesis_prev_hash:
      o.variant = "genesis_prev_hash";
      o.expected_defense = "violation at height 0";
      stored[0].payload[8] ^= 0x01;  // first byte of prev_hash, after the u64 height
      break;
  }
  ChainVerdict v = ledger.verify_chain();
  o.observed = describe_chain(v);
  o.message = v.intact ? "verify_chain: intact" : "verify_chain: " + v.reason;
  return finish(o);
}

ScenarioOutcome scenario_eavesdrop(const ScenarioEnv& env, EavesdropVariant variant, std::size_t candidates) {
  Stage stage(env, {1, 1});
  const DriverClient& d = stage.world.drivers().front();
  VerificationSession s = stage.run(d.driver_id, stage.world.riders().front(), d.secret, d.key);

  ScenarioOutcome o;
  o.id = ScenarioId::eavesdrop;
  o.variant = variant == EavesdropVariant::honest ? "honest" : "poisoned";
  o.expected_defense = "transcript clean; 0/" + std::to_string(candidates) + " false accepts";
  if (s.state() != SessionState::recorded) {
    o.observed = "honest session ended " + std::string(to_string(s.state()));
    return finish(o);
  }
  if (variant == EavesdropVariant::poisoned) {
    s.transcript_out_of_band().push_back({"driver", d.secret, stage.clock.now()});
  }

  // What a passive listener holds: the transcript, plus public parameters and
  // the driver's verifier key.
  const crypto::Digest true_digest = crypto::digest_message(d.secret);
  auto findings = scan_transcript(s.transcript(), d.secret, true_digest);
  const crypto::VerifierKey vkey = stage.world.registry().lookup_verifier_material(d.driver_id).verifier_key;
  Drbg guesses = stage.world.rng().fork("eavesdropper");
  std::size_t false_accepts = 0;
  for (std::size_t i = 0; i < candidates; ++i) {
    crypto::Digest guess;
    guesses.fill(guess.bytes);
    if (guess == true_digest) continue;
    if (crypto::verify_proof(*s.proof(), guess, s.nonce(), vkey, stage.world.params())) ++false_accepts;
  }
  std::ostringstream obs;
  if (findings.empty()) {
    obs << "transcript clean";
  } else {
    obs << "transcript leaks";
    for (const auto& f : findings) obs << ' ' << f.what << "@" << f.entry_index;
  }
  obs << "; " << false_accepts << '/' << candidates << " false accepts";
  o.observed = obs.str();
  o.message = std::to_string(s.transcript().size()) + " transcript entries scanned";
  return finish(o);
}

ScenarioOutcome scenario_fake_driver(const ScenarioEnv& env, FakeDriverVariant variant) {
  Stage stage(env, {0, 1});
  auto [key, rec] = stage.world.registry().register_driver("driver-1", kTrueLicence);
  const std::string rider = stage.world.riders().front();
  ScenarioOutcome o;
  o.id = ScenarioId::fake_driver;
  std::string_view presented = kFakeLicence;
  switch (variant) {
    case FakeDriverVariant::fake:
      o.variant = "fake";
      o.expected_defense = "rejected; committed trips 0";
      break;
    case FakeDriverVariant::honest_control:
      o.variant = "honest_control";
      o.expected_defense = "recorded; committed trips 1";
      presented = kTrueLicence;
      break;
    case FakeDriverVariant::degenerate:
      o.variant = "degenerate";
      // A "fake" identical to the registered licence is simply the truth.
      o.expected_defense = "recorded; committed trips 1";
      presented = kTrueLicence;
      break;
  }
  VerificationSession s = stage.run("driver-1", rider, as_bytes(presented), key);
  o.observed = std::string(to_string(s.state())) + "; committed trips " +
               std::to_string(stage.world.ledger().tx_count());
  o.message = s.outcome_message();
  if (variant == FakeDriverVariant::degenerate) o.message += " (degenerate case: presented secret equals the registered one)";
  return finish(o);
}

ScenarioOutcome scenario_replay(const ScenarioEnv& env, ReplayVariant variant) {
  ScenarioOutcome o;
  o.id = ScenarioId::replay;
  o.variant = variant == ReplayVariant::replay ? "replay" : "same_session";
  Stage stage(env, {1, 1});
  const DriverClient& d = stage.world.drivers().front();
  const std::string rider = stage.world.riders().front();
  VerificationSession first = stage.run(d.driver_id, rider, d.secret, d.key);

  if (variant == ReplayVariant::same_session) {
    o.expected_defense = "accepted by every peer";
    bool all = true;
    for (const PeerNode* p : stage.net.peers) all = all && recheck_proof(first, *p);
    o.observed = all ? "accepted by every peer" : "rejected by a peer";
    return finish(o);
  }
  o.expected_defense = "rejected";
  if (!stage.network.nonce_binding) {
    o.observed = "not applicable";
    o.message = "paper-exact mode: proofs are not bound to sessions, so replay is out of the threat model";
    o.status = ScenarioStatus::not_applicable;
    return o;
  }
  if (first.state() != SessionState::recorded) {
    o.observed = "honest session ended " + std::string(to_string(first.state()));
    return finish(o);
  }
  VerificationSession second = stage.factory.request_verification(d.driver_id, rider);
  submit_proof(second, *first.proof(), stage.clock);
  complete_verification(second, stage.net, stage.clock, stage.delays);
  o.observed = std::string(to_string(second.state()));
  o.message = second.outcome_message();
  return finish(o);
}

std::vector<ScenarioOutcome> run_scenario_suite(const ScenarioEnv& env) {
  return {scenario_tamper(env), scenario_eavesdrop(env), scenario_fake_driver(env), scenario_replay(env)};
}

}  // namespace zkride
