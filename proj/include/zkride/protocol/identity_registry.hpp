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

#ifndef ZKRIDE_PROTOCOL_IDENTITY_REGISTRY_HPP_
#define ZKRIDE_PROTOCOL_IDENTITY_REGISTRY_HPP_

// The permission issuer: registers drivers and riders, issues prover keys to
// drivers and holds (digest, verifier key) for peers to look up. Secrets and
// prover keys are handed back to the caller and never stored.

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zkride/common/bytes.hpp"
#include "zkride/common/drbg.hpp"
#include "zkride/common/time_source.hpp"
#include "zkride/crypto/crypto_core.hpp"

namespace zkride {

enum class Role { driver, rider };

std::string_view to_string(Role r);
Role parse_role(std::string_view s);

struct IdentityRecord {
  std::string subject_id;
  Role role = Role::rider;
  // Present only in the copy returned to the registering driver.
  std::optional<Bytes> secret_message;
  std::optional<crypto::Digest> digest;
  std::optional<crypto::VerifierKey> verifier_key;
  Micros registered_at = 0;
};

struct VerifierMaterial {
  crypto::Digest digest;
  crypto::VerifierKey verifier_key;
};

// Thread-safe: lookups take a shared lock, registrations an exclusive one.
// Append-only; there is no revocation.
class Registry {
 public:
  // `clock` (optional, not owned) stamps registrations; without one they are
  // stamped 0.
  Registry(std::string issuer_id, crypto::CryptoParams params, Drbg rng, const TimeSource* clock = nullptr);
  // Not safe against concurrent use of `other`.
  Registry(Registry&& other) noexcept;
  Registry& operator=(Registry&&) = delete;

  const std::string& issuer_id() const { return issuer_id_; }
  const crypto::CryptoParams& params() const { return params_; }

  // Returns the prover key and the full record (including the secret) to
  // the caller; the registry keeps the record without the secret.
  std::pair<crypto::ProverKey, IdentityRecord> register_driver(const std::string& subject_id, ByteSpan secret_message);
  std::pair<crypto::ProverKey, IdentityRecord> register_driver(const std::string& subject_id,
                                                               std::string_view secret_message) {
    return register_driver(subject_id, as_bytes(secret_message));
  }
  IdentityRecord register_rider(const std::string& subject_id);

  // Throws RegistryError (not_found / wrong_role).
  VerifierMaterial lookup_verifier_material(const std::string& driver_id) const;

  bool contains(const std::string& subject_id) const;
  std::optional<Role> role_of(const std::string& subject_id) const;
  // Throws RegistryError(not_found).
  IdentityRecord record(const std::string& subject_id) const;
  std::size_t size() const;
  std::vector<std::string> subject_ids(std::optional<Role> role = std::nullopt) const;

  // Line-delimited export, one record per line after a header line:
  //   #zkride-registry v1 <issuer_id> <backend>
  //   <subject_id> TAB <role> TAB <registered_at> TAB <digest hex|-> TAB <verifier key hex|->
  std::string export_text() const;
  // Throws DecodeError on malformed input.
  static Registry import_text(std::string_view text, Drbg rng, const TimeSource* clock = nullptr);

 private:
  void insert(IdentityRecord rec);

  std::string issuer_id_;
  crypto::CryptoParams params_;
  const TimeSource* clock_;
  mutable std::shared_mutex mu_;
  Drbg rng_;  // guarded by mu_ (exclusive)
  std::map<std::string, IdentityRecord> records_;
};

// Subject ids must be non-empty and free of whitespace control characters
// (tabs, newlines), so they survive the line formats. Throws
// RegistryError(invalid_id).
void validate_subject_id(std::string_view id);

}  // namespace zkride

#endif  // ZKRIDE_PROTOCOL_IDENTITY_REGISTRY_HPP_
