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

#ifndef ZKRIDE_CRYPTO_CRYPTO_CORE_HPP_
#define ZKRIDE_CRYPTO_CRYPTO_CORE_HPP_

// The identity proof scheme: a prover holding a in [1, p-1] proves knowledge
// of the secret behind a registry-held digest by publishing
//
//   delta = H(digest [|| nonce])^a   in G1,
//
// and a verifier holding v = g2^a accepts iff e(delta, g2) == e(H(...), v).
//
// Two interchangeable backends implement the groups: BN254 with the optimal
// ate pairing, and a toy subgroup of Z_47^* whose exponents can be checked by
// hand. Objects carry their backend and mixing backends throws
// BackendMismatch.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "zkride/common/bytes.hpp"
#include "zkride/common/drbg.hpp"
#include "zkride/crypto/bn254_curve.hpp"
#include "zkride/crypto/bn254_pairing.hpp"
#include "zkride/crypto/toy_group.hpp"
#include "zkride/crypto/u256.hpp"

namespace zkride::crypto {

enum class BackendId { production_curve, toy_small_group };

std::string_view to_string(BackendId id);
// Accepts "production_curve"/"production"/"bn254" and "toy_small_group"/"toy".
BackendId parse_backend(std::string_view name);

inline constexpr std::size_t kNonceSize = 16;
using Nonce = std::array<std::uint8_t, kNonceSize>;

Nonce nonce_from_hex(std::string_view hex);

// An exponent of the toy group together with the group order it lives in.
struct ToyElement {
  std::uint32_t exponent = 0;
  std::uint32_t order = 0;
  friend bool operator==(const ToyElement&, const ToyElement&) = default;
};

class G1Element;
class G2Element;
class GtElement;

class CryptoParams {
 public:
  static CryptoParams production();
  // Validates the toy parameters (throws ValidationError).
  static CryptoParams toy(const toy::ToyGroup& group = {});
  static CryptoParams for_backend(BackendId id);

  BackendId backend() const { return backend_; }
  U256 group_order() const;
  G1Element generator_g1() const;
  G2Element generator_g2() const;
  // Throws BackendMismatch on the production backend.
  const toy::ToyGroup& toy_group() const;

  friend bool operator==(const CryptoParams&, const CryptoParams&) = default;

 private:
  BackendId backend_ = BackendId::production_curve;
  toy::ToyGroup toy_{};
};

// Throws BackendMismatch if `backend` is not the backend of `params`.
void require_backend(const CryptoParams& params, BackendId backend, std::string_view what);

class G1Element {
 public:
  using Repr = std::variant<bn254::G1, ToyElement>;

  explicit G1Element(Repr r) : repr_(std::move(r)) {}

  BackendId backend() const;
  bool is_identity() const;
  // group^s; s is reduced modulo the group order.
  G1Element pow(const U256& s) const;
  G1Element operator*(const G1Element& o) const;  // group operation

  Bytes encode() const;
  std::string to_hex() const { return zkride::to_hex(encode()); }
  static G1Element decode(ByteSpan bytes, const CryptoParams& params);
  static G1Element identity(const CryptoParams& params);

  const Repr& repr() const { return repr_; }
  friend bool operator==(const G1Element&, const G1Element&) = default;

 private:
  Repr repr_;
};

class G2Element {
 public:
  using Repr = std::variant<bn254::G2, ToyElement>;

  explicit G2Element(Repr r) : repr_(std::move(r)) {}

  BackendId backend() const;
  bool is_identity() const;
  G2Element pow(const U256& s) const;
  G2Element operator*(const G2Element& o) const;

  Bytes encode() const;
  std::string to_hex() const { return zkride::to_hex(encode()); }
  static G2Element decode(ByteSpan bytes, const CryptoParams& params);
  static G2Element identity(const CryptoParams& params);

  const Repr& repr() const { return repr_; }
  friend bool operator==(const G2Element&, const G2Element&) = default;

 private:
  Repr repr_;
};

// Target-group value. Comparable for equality only, plus exponentiation for
// bilinearity checks.
class GtElement {
 public:
  using Repr = std::variant<bn254::Fp12, ToyElement>;

  explicit GtElement(Repr r) : repr_(std::move(r)) {}

  BackendId backend() const;
  bool is_identity() const;
  GtElement pow(const U256& s) const;
  static GtElement identity(const CryptoParams& params);

  const Repr& repr() const { return repr_; }
  friend bool operator==(const GtElement&, const GtElement&) = default;

 private:
  Repr repr_;
};

class ProverKey {
 public:
  ProverKey(U256 scalar, BackendId backend) : scalar_(scalar), backend_(backend) {}

  const U256& scalar() const { return scalar_; }
  BackendId backend() const { return backend_; }

  // 32-byte (production) or 4-byte (toy) big-endian scalar, hex encoded.
  std::string to_hex(const CryptoParams& params) const;
  // Throws DecodeError unless 1 <= a < p.
  static ProverKey from_hex(std::string_view hex, const CryptoParams& params);

  friend bool operator==(const ProverKey&, const ProverKey&) = default;

 private:
  U256 scalar_;
  BackendId backend_;
};

class VerifierKey {
 public:
  // Throws ValidationError for the identity.
  explicit VerifierKey(G2Element v);

  const G2Element& element() const { return v_; }
  BackendId backend() const { return v_.backend(); }
  // Miller-loop lines for v, computed once (production backend only).
  const bn254::G2Prepared* prepared() const { return prepared_.get(); }

  Bytes encode() const { return v_.encode(); }
  std::string to_hex() const { return v_.to_hex(); }
  static VerifierKey decode(ByteSpan bytes, const CryptoParams& params);

  friend bool operator==(const VerifierKey& a, const VerifierKey& b) { return a.v_ == b.v_; }

 private:
  G2Element v_;
  std::shared_ptr<const bn254::G2Prepared> prepared_;
};

struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  // Throws ValidationError unless exactly 32 bytes.
  static Digest from_bytes(ByteSpan b);
  static Digest from_hex(std::string_view hex);
  std::string to_hex() const { return zkride::to_hex(bytes); }

  friend bool operator==(const Digest&, const Digest&) = default;
};

struct Proof {
  G1Element delta;
  std::optional<Nonce> session_nonce;

  // delta encoding, followed by the 16 nonce bytes when present.
  Bytes encode() const;
  std::string to_hex() const { return zkride::to_hex(encode()); }
  // Throws DecodeError on any malformed input.
  static Proof decode(ByteSpan bytes, const CryptoParams& params);
  static Proof from_hex(std::string_view hex, const CryptoParams& params);

  friend bool operator==(const Proof&, const Proof&) = default;
};

// Key generation. With a seed the pair is a deterministic function of it;
// otherwise the scalar comes from the OS entropy source. Zero is redrawn.
std::pair<ProverKey, VerifierKey> generate_keypair(const CryptoParams& params,
                                                   const std::optional<Seed>& seed = std::nullopt);
// Same, drawing from a caller-owned stream.
std::pair<ProverKey, VerifierKey> generate_keypair(const CryptoParams& params, Drbg& rng);

// Verifier key for an existing prover key.
VerifierKey derive_verifier_key(const ProverKey& key, const CryptoParams& params);

Digest digest_message(ByteSpan message);
inline Digest digest_message(std::string_view message) { return digest_message(as_bytes(message)); }

// Total, deterministic map into G1 \ {identity}.
//   production: hash_to_g1(digest || nonce)
//   toy:        g1^(d mod p), d = digest without a nonce and
//               SHA-256(digest || nonce) with one; a zero exponent maps to 1.
G1Element hash_to_group(const Digest& digest, const std::optional<Nonce>& nonce,
                        const CryptoParams& params);

// delta = hash_to_group(digest, nonce)^a. The nonce is carried in the proof.
Proof generate_proof(const ProverKey& key, const Digest& digest, const std::optional<Nonce>& nonce,
                     const CryptoParams& params);

// e(delta, g2) == e(hash_to_group(digest, nonce), v), always evaluating both
// pairings. `nonce` is the verifier's view of the session nonce; the nonce
// carried inside the proof is not trusted.
bool verify_proof(const Proof& proof, const Digest& digest, const std::optional<Nonce>& nonce,
                  const VerifierKey& vkey, const CryptoParams& params);

// Decodes `encoded_proof` first; malformed bytes throw DecodeError rather
// than returning false.
bool verify_proof_bytes(ByteSpan encoded_proof, const Digest& digest,
                        const std::optional<Nonce>& nonce, const VerifierKey& vkey,
                        const CryptoParams& params);

GtElement pairing(const G1Element& x, const G2Element& y, const CryptoParams& params);

// Number of pairing evaluations performed by this process so far.
std::uint64_t pairing_evaluations();

}  // namespace zkride::crypto

#endif  // ZKRIDE_CRYPTO_CRYPTO_CORE_HPP_
