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

#include "zkride/protocol/identity_registry.hpp"

#include <gtest/gtest.h>

#include <thread>

#include "zkride/common/errors.hpp"

namespace zkride {
namespace {

// SHA-256 reference values computed with Python's hashlib.
constexpr const char* kDigest9907184 = "373390cc089e6cd0466aea283240616a35d61123b4267425616d41e47abdf82d";
constexpr const char* kDigestEmpty = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";

Registry make_registry(crypto::CryptoParams params = crypto::CryptoParams::production()) {
  return Registry("issuer", params, Drbg::from_u64(11));
}

RegistryError::Kind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const RegistryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no RegistryError thrown";
  return RegistryError::Kind::invalid_id;
}

TEST(RegistryTest, RegistersDriverWithSampleLicence) {
  Registry reg = make_registry();
  auto [key, rec] = reg.register_driver("driver-1", "9907184");
  EXPECT_EQ(rec.role, Role::driver);
  ASSERT_TRUE(rec.digest);
  EXPECT_EQ(rec.digest->to_hex(), kDigest9907184);
  ASSERT_TRUE(rec.secret_message);
  EXPECT_EQ(*rec.secret_message, to_bytes("9907184"));
  ASSERT_TRUE(rec.verifier_key);
  EXPECT_EQ(*rec.verifier_key, crypto::derive_verifier_key(key, reg.params()));

  IdentityRecord stored = reg.record("driver-1");
  EXPECT_FALSE(stored.secret_message);
  EXPECT_EQ(stored.digest, rec.digest);
}

TEST(RegistryTest, DuplicateRegistrationFails) {
  Registry reg = make_registry();
  reg.register_driver("driver-1", "9907184");
  EXPECT_EQ(error_kind([&] { reg.register_driver("driver-1", "123"); }), RegistryError::Kind::duplicate);
  EXPECT_EQ(error_kind([&] { reg.register_rider("driver-1"); }), RegistryError::Kind::duplicate);
  reg.register_rider("rider-1");
  EXPECT_EQ(error_kind([&] { reg.register_rider("rider-1"); }), RegistryError::Kind::duplicate);
  EXPECT_EQ(reg.size(), 2u);
}

TEST(RegistryTest, EmptyLicenceIsLegal) {
  Registry reg = make_registry();
  auto [key, rec] = reg.register_driver("driver-2", "");
  EXPECT_EQ(rec.digest->to_hex(), kDigestEmpty);
}

TEST(RegistryTest, RidersCarryNoMaterial) {
  Registry reg = make_registry();
  IdentityRecord r = reg.register_rider("rider-1");
  EXPECT_EQ(r.role, Role::rider);
  EXPECT_FALSE(r.secret_message);
  EXPECT_FALSE(r.digest);
  EXPECT_FALSE(r.verifier_key);
}

TEST(RegistryTest, FiveDriversAndFiveRidersMakeTenClients) {
  Registry reg = make_registry(crypto::CryptoParams::toy());
  for (int i = 1; i <= 5; ++i) {
    reg.register_driver("driver-" + std::to_string(i), "licence" + std::to_string(i));
    reg.register_rider("rider-" + std::to_string(i));
  }
  EXPECT_EQ(reg.size(), 10u);
  EXPECT_EQ(reg.subject_ids(Role::driver).size(), 5u);
  EXPECT_EQ(reg.subject_ids(Role::rider).size(), 5u);
}

TEST(RegistryTest, LookupErrors) {
  Registry reg = make_registry(crypto::CryptoParams::toy());
  reg.register_driver("driver-1", "9907184");
  reg.register_rider("rider-1");
  VerifierMaterial m = reg.lookup_verifier_material("driver-1");
  EXPECT_EQ(m.digest, crypto::digest_message("9907184"));
  EXPECT_EQ(error_kind([&] { reg.lookup_verifier_material("rider-1"); }), RegistryError::Kind::wrong_role);
  EXPECT_EQ(error_kind([&] { reg.lookup_verifier_material("nobody"); }), RegistryError::Kind::not_found);
  EXPECT_EQ(error_kind([&] { reg.record("nobody"); }), RegistryError::Kind::not_found);
}

TEST(RegistryTest, InvalidIdsAreRejected) {
  Registry reg = make_registry(crypto::CryptoParams::toy());
  for (std::string id : {"", "a b", "a\tb", "a\nb", "a\rb"}) {
    EXPECT_EQ(error_kind([&] { reg.register_rider(id); }), RegistryError::Kind::invalid_id) << id;
  }
}

TEST(RegistryTest, HonestProofVerifiesThroughLookup) {
  for (auto params : {crypto::CryptoParams::production(), crypto::CryptoParams::toy()}) {
    Registry reg = make_registry(params);
    auto [key, rec] = reg.register_driver("driver-1", "9907184");
    crypto::Nonce nonce{};
    nonce[0] = 9;
    auto proof = crypto::generate_proof(key, crypto::digest_message("9907184"), nonce, params);
    VerifierMaterial m = reg.lookup_verifier_material("driver-1");
    EXPECT_TRUE(crypto::verify_proof(proof, m.digest, nonce, m.verifier_key, params));
  }
}

TEST(RegistryTest, ExportNeverContainsSecrets) {
  Registry reg = make_registry();
  reg.register_driver("driver-1", "9907184");
  reg.register_driver("driver-2", "licence-0042");
  reg.register_rider("rider-1");
  const std::string text = reg.export_text();
  EXPECT_EQ(text.find("9907184"), std::string::npos);
  EXPECT_EQ(text.find("licence-0042"), std::string::npos);
  EXPECT_EQ(text.find(to_hex(as_bytes("9907184"))), std::string::npos);
  EXPECT_EQ(text.rfind("#zkride-registry v1 issuer production", 0), 0u);
}

TEST(RegistryTest, ExportImportRoundTrip) {
  Registry reg = make_registry();
  reg.register_driver("driver-1", "9907184");
  reg.register_rider("rider-1");
  Registry back = Registry::import_text(reg.export_text(), Drbg::from_u64(1));
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(back.export_text(), reg.export_text());
  VerifierMaterial a = reg.lookup_verifier_material("driver-1");
  VerifierMaterial b = back.lookup_verifier_material("driver-1");
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_EQ(a.verifier_key, b.verifier_key);
  EXPECT_EQ(back.role_of("rider-1"), Role::rider);
}

TEST(RegistryTest, ImportRejectsMalformedInput) {
  EXPECT_THROW(Registry::import_text("", Drbg::from_u64(1)), DecodeError);
  EXPECT_THROW(Registry::import_text("#zkride-registry v9 issuer toy\n", Drbg::from_u64(1)), DecodeError);
  EXPECT_THROW(Registry::import_text("#zkride-registry v1 issuer toy\nrider-1\trider\n", Drbg::from_u64(1)),
               DecodeError);
  EXPECT_THROW(Registry::import_text("#zkride-registry v1 issuer toy\nd\tdriver\t0\tzz\t-\n", Drbg::from_u64(1)),
               DecodeError);
}

TEST(RegistryTest, ConcurrentLookupsDuringRegistration) {
  Registry reg = make_registry(crypto::CryptoParams::toy());
  reg.register_driver("driver-0", "seed");
  std::atomic<bool> stop{false};
  std::atomic<int> lookups{0};
  std::thread reader([&] {
    while (!stop) {
      EXPECT_EQ(reg.lookup_verifier_material("driver-0").digest, crypto::digest_message("seed"));
      ++lookups;
    }
  });
  while (lookups == 0) std::this_thread::yield();
  for (int i = 1; i <= 200; ++i) {
    reg.register_driver("driver-" + std::to_string(i), std::to_string(i));
    if (i % 20 == 0) std::this_thread::yield();
  }
  stop = true;
  reader.join();
  EXPECT_EQ(reg.size(), 201u);
  EXPECT_GT(lookups.load(), 0);
}

}  // namespace
}  // namespace zkride
