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

#include <sstream>

#include "zkride/common/errors.hpp"

namespace zkride {

std::string_view to_string(Role r) { return r == Role::driver ? "driver" : "rider"; }

Role parse_role(std::string_view s) {
  if (s == "driver") return Role::driver;
  if (s == "rider") return Role::rider;
  throw DecodeError("unknown role '" + std::string(s) + "'");
}

void validate_subject_id(std::string_view id) {
  if (id.empty()) throw RegistryError(RegistryError::Kind::invalid_id, "subject id is empty");
  for (char c : id) {
    if (c == '\t' || c == '\n' || c == '\r' || c == ' ') {
      throw RegistryError(RegistryError::Kind::invalid_id, "subject id contains whitespace");
    }
  }
}

Registry::Registry(std::string issuer_id, crypto::CryptoParams params, Drbg rng, const TimeSource* clock)
    : issuer_id_(std::move(issuer_id)), params_(params), clock_(clock), rng_(std::move(rng)) {
  validate_subject_id(issuer_id_);
}

Registry::Registry(Registry&& other) noexcept
    : issuer_id_(std::move(other.issuer_id_)),
      params_(other.params_),
      clock_(other.clock_),
      rng_(std::move(other.rng_)),
      records_(std::move(other.records_)) {}

void Registry::insert(IdentityRecord rec) {
  std::string id = rec.subject_id;
  if (!records_.emplace(id, std::move(rec)).second) {
    throw RegistryError(RegistryError::Kind::duplicate, "subject '" + id + "' is already registered");
  }
}

std::pair<crypto::ProverKey, IdentityRecord> Registry::register_driver(const std::string& subject_id,
                                                                       ByteSpan secret_message) {
  validate_subject_id(subject_id);
  std::unique_lock lock(mu_);
  if (records_.count(subject_id) != 0) {
    throw RegistryError(RegistryError::Kind::duplicate, "subject '" + subject_id + "' is already registered");
  }
  auto [key, vk] = crypto::generate_keypair(params_, rng_);
  IdentityRecord stored;
  stored.subject_id = subject_id;
  stored.role = Role::driver;
  stored.digest = crypto::digest_message(secret_message);
  stored.verifier_key = vk;
  stored.registered_at = clock_ ? clock_->now() : 0;
  IdentityRecord returned = stored;
  returned.secret_message = Bytes(secret_message.begin(), secret_message.end());
  insert(std::move(stored));
  return {key, std::move(returned)};
}

IdentityRecord Registry::register_rider(const std::string& subject_id) {
  validate_subject_id(subject_id);
  std::unique_lock lock(mu_);
  IdentityRecord rec;
  rec.subject_id = subject_id;
  rec.role = Role::rider;
  rec.registered_at = clock_ ? clock_->now() : 0;
  insert(rec);
  return rec;
}

VerifierMaterial Registry::lookup_verifier_material(const std::string& driver_id) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(driver_id);
  if (it == records_.end()) {
    throw RegistryError(RegistryError::Kind::not_found, "unknown subject '" + driver_id + "'");
  }
  if (it->second.role != Role::driver) {
    throw RegistryError(RegistryError::Kind::wrong_role, "subject '" + driver_id + "' is not a driver");
  }
  return {*it->second.digest, *it->second.verifier_key};
}

bool Registry::contains(const std::string& subject_id) const {
  std::shared_lock lock(mu_);
  return records_.count(subject_id) != 0;
}

std::optional<Role> Registry::role_of(const std::string& subject_id) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(subject_id);
  if (it == records_.end()) return std::nullopt;
  return it->second.role;
}

IdentityRecord Registry::record(const std::string& subject_id) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(subject_id);
  if (it == records_.end()) {
    throw RegistryError(RegistryError::Kind::not_found, "unknown subject '" + subject_id + "'");
  }
  return it->second;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mu_);
  return records_.size();
}

std::vector<std::string> Registry::subject_ids(std::optional<Role> role) const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, rec] : records_) {
    if (!role || rec.role == *role) out.push_back(id);
  }
  return out;
}

std::string Registry::export_text() const {
  std::shared_lock lock(mu_);
  std::ostringstream os;
  os << "#zkride-registry v1 " << issuer_id_ << ' ' << crypto::to_string(params_.backend()) << '\n';
  for (const auto& [id, rec] : records_) {
    os << id << '\t' << to_string(rec.role) << '\t' << rec.registered_at << '\t'
       << (rec.digest ? rec.digest->to_hex() : "-") << '\t'
       << (rec.verifier_key ? rec.verifier_key->to_hex() : "-") << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Registry Registry::import_text(std::string_view text, Drbg rng, const TimeSource* clock) {
  std::istringstream is{std::string(text)};
  std::string header;
  if (!std::getline(is, header)) throw DecodeError("registry export is empty");
  auto h = split(header, ' ');
  if (h.size() != 4 || h[0] != "#zkride-registry" || h[1] != "v1") {
    throw DecodeError("bad registry header: '" + header + "'");
  }
  Registry reg(h[2], crypto::CryptoParams::for_backend(crypto::parse_backend(h[3])), std::move(rng), clock);
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f.size() != 5) throw DecodeError("registry line " + std::to_string(line_no) + ": expected 5 fields");
    IdentityRecord rec;
    rec.subject_id = f[0];
    try {
      validate_subject_id(rec.subject_id);
      rec.role = parse_role(f[1]);
      rec.registered_at = std::stoll(f[2]);
    } catch (const std::exception& e) {
      throw DecodeError("registry line " + std::to_string(line_no) + ": " + e.what());
    }
    if (rec.role == Role::driver) {
      if (f[3] == "-" || f[4] == "-") {
        throw DecodeError("registry line " + std::to_string(line_no) + ": driver without key material");
      }
      try {
        rec.digest = crypto::Digest::from_hex(f[3]);
        rec.verifier_key = crypto::VerifierKey::decode(from_hex(f[4]), reg.params_);
      } catch (const Error& e) {
        throw DecodeError("registry line " + std::to_string(line_no) + ": " + e.what());
      }
    } else if (f[3] != "-" || f[4] != "-") {
      throw DecodeError("registry line " + std::to_string(line_no) + ": rider with key material");
    }
    try {
      reg.insert(std::move(rec));
    } catch (const RegistryError& e) {
      throw DecodeError("registry line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return reg;
}

}  // namespace zkride
