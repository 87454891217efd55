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

#include <gtest/gtest.h>

#include "zkride/protocol/run_config.hpp"

namespace zkride {
namespace {

ScenarioEnv production_env() {
  ScenarioEnv env;
  env.seed = 17;
  return env;
}

TEST(ScenarioTest, TamperedPriceIsLocated) {
  auto o = scenario_tamper(production_env());
  EXPECT_TRUE(o.passed()) << o.to_line();
  EXPECT_EQ(o.observed, "violation at height 2");
}

TEST(ScenarioTest, UntamperedControlIsIntact) {
  auto o = scenario_tamper(production_env(), TamperVariant::control);
  EXPECT_TRUE(o.passed()) << o.to_line();
  EXPECT_EQ(o.observed, "chain intact");
}

TEST(ScenarioTest, TamperedFirstBlockIsLocated) {
  auto o = scenario_tamper(production_env(), TamperVariant::genesis_prev_hash);
  EXPECT_TRUE(o.passed()) << o.to_line();
  EXPECT_EQ(o.observed, "violation at height 0");
}

TEST(ScenarioTest, EavesdropperLearnsNothing) {
  auto o = scenario_eavesdrop(production_env(), EavesdropVariant::honest, 200);
  EXPECT_TRUE(o.passed()) << o.to_line();
  EXPECT_EQ(o.observed, "transcript clean; 0/200 false accepts");
}

TEST(ScenarioTest, PoisonedTranscriptFailsTheEavesdropCheck) {
  auto o = scenario_eavesdrop(production_env(), EavesdropVariant::poisoned, 10);
  EXPECT_EQ(o.status, ScenarioStatus::fail);
  EXPECT_NE(o.observed.find("transcript leaks secret@"), std::string::npos) << o.observed;
}

TEST(ScenarioTest, ToyGroupIsTooSmallToResistGuessing) {
  ScenarioEnv env = production_env();
  env.params = crypto::CryptoParams::toy();
  auto o = scenario_eavesdrop(env, EavesdropVariant::honest, 1000);
  // Random digests collide with the true exponent about once in 23 tries.
  EXPECT_EQ(o.status, ScenarioStatus::fail);
  EXPECT_EQ(o.observed.rfind("transcript clean; ", 0), 0u);
  EXPECT_EQ(o.observed.find("; 0/"), std::string::npos);
}

TEST(ScenarioTest, FakeDriverIsRejected) {
  auto o = scenario_fake_driver(production_env());
  EXPECT_TRUE(o.passed()) << o.to_line();
  EXPECT_EQ(o.observed, "rejected; committed trips 0");
  EXPECT_EQ(o.message.rfind("verification failed: 0 of 3 peers endorsed, 1 required", 0), 0u) << o.message;
}

TEST(ScenarioTest, HonestDriverControlIsRecorded) {
  auto o = scenario_fake_driver(production_env(), FakeDriverVariant::honest_control);
  EXPECT_TRUE(o.passed()) << o.to_line();
  auto d = scenario_fake_driver(production_env(), FakeDriverVariant::degenerate);
  EXPECT_TRUE(d.passed()) << d.to_line();
  EXPECT_NE(d.message.find("degenerate"), std::string::npos);
}

TEST(ScenarioTest, ReplayIsRejected) {
  auto o = scenario_replay(production_env());
  EXPECT_TRUE(o.passed()) << o.to_line();
  EXPECT_EQ(o.observed, "rejected");
  auto same = scenario_replay(production_env(), ReplayVariant::same_session);
  EXPECT_TRUE(same.passed()) << same.to_line();
}

TEST(ScenarioTest, ReplayIsNotApplicableWithoutNonces) {
  ScenarioEnv env = production_env();
  env.network.nonce_binding = false;
  auto o = scenario_replay(env);
  EXPECT_EQ(o.status, ScenarioStatus::not_applicable);
  EXPECT_EQ(o.to_line().rfind("replay\treplay\tnot_applicable\t", 0), 0u);
}

TEST(ScenarioTest, SuiteRunsFourScenariosDeterministically) {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.peer_delay_ms = {36, 55, 65};
  ScenarioEnv env = ScenarioEnv::from_config(cfg);
  auto a = run_scenario_suite(env);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[0].id, ScenarioId::tamper);
  EXPECT_EQ(a[1].id, ScenarioId::eavesdrop);
  EXPECT_EQ(a[2].id, ScenarioId::fake_driver);
  EXPECT_EQ(a[3].id, ScenarioId::replay);
  auto b = run_scenario_suite(env);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(a[i].passed()) << a[i].to_line();
    EXPECT_EQ(a[i].to_line(), b[i].to_line());
  }
}

}  // namespace
}  // namespace zkride
