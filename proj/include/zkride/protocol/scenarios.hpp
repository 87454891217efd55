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

#ifndef ZKRIDE_PROTOCOL_SCENARIOS_HPP_
#define ZKRIDE_PROTOCOL_SCENARIOS_HPP_

// Scripted attacks with machine-checkable outcomes: ride-log tampering,
// passive eavesdropping, a fake driver, and proof replay. Each scenario
// builds its own world from the environment and runs single-threaded on a
// virtual clock, so a fixed seed always yields the same outcome.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zkride/crypto/crypto_core.hpp"
#include "zkride/protocol/ledger.hpp"
#include "zkride/protocol/network_sim.hpp"

namespace zkride {

struct RunConfig;

enum class ScenarioId { tamper, eavesdrop, fake_driver, replay };
enum class ScenarioStatus { pass, fail, not_applicable };

std::string_view to_string(ScenarioId id);
std::string_view to_string(ScenarioStatus s);

struct ScenarioOutcome {
  ScenarioId id = ScenarioId::tamper;
  std::string variant;
  std::string expected_defense;
  std::string observed;
  ScenarioStatus status = ScenarioStatus::fail;
  std::string message;  // what the system printed (e.g. the rejection notice)

  bool passed() const { return status == ScenarioStatus::pass; }
  // scenario  variant  status  expected  observed  message (tab separated)
  std::string to_line() const;
};

struct ScenarioEnv {
  crypto::CryptoParams params = crypto::CryptoParams::production();
  NetworkConfig network;  // empty peers -> three zero-delay peers
  EndorsementPolicy policy{1, 3};
  std::uint64_t seed = 1;

  static ScenarioEnv from_config(const RunConfig& config);
};

inline constexpr std::string_view kTrueLicence = "9907184";
inline constexpr std::string_view kFakeLicence = "180612";

enum class TamperVariant { flip_price, control, genesis_prev_hash };
enum class EavesdropVariant { honest, poisoned };
enum class FakeDriverVariant { fake, honest_control, degenerate };
enum class ReplayVariant { replay, same_session };

// Commits five single-trip blocks, then mutates one committed byte range
// out of band and checks that verify_chain names the mutated height.
ScenarioOutcome scenario_tamper(const ScenarioEnv& env, TamperVariant variant = TamperVariant::flip_price);
// Scans a completed honest session's transcript for the secret and digest,
// and tries the captured proof against `candidates` random digests.
ScenarioOutcome scenario_eavesdrop(const ScenarioEnv& env, EavesdropVariant variant = EavesdropVariant::honest,
                                   std::size_t candidates = 1000);
// The driver registered with the true licence proves with the fake one.
ScenarioOutcome scenario_fake_driver(const ScenarioEnv& env, FakeDriverVariant variant = FakeDriverVariant::fake);
// Resubmits a captured proof in a later session. Not applicable without
// nonce binding.
ScenarioOutcome scenario_replay(const ScenarioEnv& env, ReplayVariant variant = ReplayVariant::replay);

// The four default scenarios, in the order tamper, eavesdrop, fake_driver,
// replay.
std::vector<ScenarioOutcome> run_scenario_suite(const ScenarioEnv& env);

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_SCENARIOS_HPP_
