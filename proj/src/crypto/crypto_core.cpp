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

#include "zkride/crypto/crypto_core.hpp"

#include <atomic>
#include <string>

#include "zkride/common/errors.hpp"
#include "zkride/common/sha256.hpp"

namespace zkride::crypto {
namespace {

std::atomic<std::uint64_t> g_pairings{0};

std::uint32_t toy_reduce(const U256& s, std::uint32_t order) {
  auto be = s.to_be_bytes();
  std::uint64_t acc = 0;
  for (std::uint8_t b : be) acc = ((acc << 8) | b) % order;
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t toy_mul(std::uint32_t a, std::uint32_t b, std::uint32_t order) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % order);
}

const ToyElement& toy_of(const G1Element::Repr& r) { return std::get<ToyElement>(r); }

template <typename Repr>
BackendId backend_of(const Repr& r) {
  return std::holds_alternative<ToyElement>(r) ? BackendId::toy_small_group : BackendId::production_curve;
}

template <typename A, typename B>
void require_same(const A& a, const B& b, std::string_view what) {
  if (a.backend() != b.backend()) throw BackendMismatch(std::string(what) + ": operands from different backends");
}

void require_same_toy(const ToyElement& a, const ToyElement& b, std::string_view what) {
  if (a.order != b.order) throw BackendMismatch(std::string(what) + ": toy elements of different groups");
}

const bn254::G2Prepared& prepared_g2_generator() {
  static const bn254::G2Prepared p = bn254::prepare_g2(bn254::G2::generator().to_affine());
  return p;
}

U256 draw_scalar(const CryptoParams& params, Drbg& rng) {
  if (params.backend() == BackendId::toy_small_group) {
    const std::uint32_t p = params.toy_group().order;
    // Rejection sampling keeps the draw uniform on [1, p-1].
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % p;
    for (;;) {
      std::uint64_t x = rng.next_u64();
      if (x >= limit) continue;
      std::uint64_t a = x % p;
      if (a != 0) return U256(a);
    }
  }
  for (;;) {
    std::array<std::uint8_t, 32> b{};
    rng.fill(b);
    b[0] &= 0x3f;  // r < 2^254
    U256 a = U256::from_be_bytes(b);
    if (a.is_zero() || a >= bn254::kGroupOrder) continue;
    return a;
  }
}

}  // namespace

std::string_view to_string(BackendId id) {
  return id == BackendId::toy_small_group ? "toy_small_group" : "production_curve";
}

BackendId parse_backend(std::string_view name) {
  if (name == "production_curve" || name == "production" || name == "bn254") return BackendId::production_curve;
  if (name == "toy_small_group" || name == "toy") return BackendId::toy_small_group;
  throw ValidationError("unknown backend '" + std::string(name) + "'");
}

Nonce nonce_from_hex(std::string_view hex) {
  Bytes b = from_hex(hex);
  if (b.size() != kNonceSize) throw DecodeError("nonce must be 16 bytes");
  Nonce n{};
  std::copy(b.begin(), b.end(), n.begin());
  return n;
}

// ---------------------------------------------------------------------------
// CryptoParams

CryptoParams CryptoParams::production() { return CryptoParams(); }

CryptoParams CryptoParams::toy(const toy::ToyGroup& group) {
  group.validate();
  CryptoParams p;
  p.backend_ = BackendId::toy_small_group;
  p.toy_ = group;
  return p;
}

CryptoParams CryptoParams::for_backend(BackendId id) {
  return id == BackendId::toy_small_group ? toy() : production();
}

U256 CryptoParams::group_order() const {
  return backend_ == BackendId::toy_small_group ? U256(toy_.order) : bn254::kGroupOrder;
}

G1Element CryptoParams::generator_g1() const {
  if (backend_ == BackendId::toy_small_group) return G1Element(ToyElement{1, toy_.order});
  return G1Element(bn254::G1::generator());
}

G2Element CryptoParams::generator_g2() const {
  if (backend_ == BackendId::toy_small_group) return G2Element(ToyElement{1, toy_.order});
  return G2Element(bn254::G2::generator());
}

const toy::ToyGroup& CryptoParams::toy_group() const {
  if (backend_ != BackendId::toy_small_group) throw BackendMismatch("toy_group() on the production backend");
  return toy_;
}

void require_backend(const CryptoParams& params, BackendId backend, std::string_view what) {
  if (params.backend() != backend) {
    throw BackendMismatch(std::string(what) + " belongs to " + std::string(to_string(backend)) +
                          " but params are " + std::string(to_string(params.backend())));
  }
}

namespace {

// Toy objects must also agree on the group order.
void require_toy_order(const CryptoParams& params, std::uint32_t order, std::string_view what) {
  if (params.toy_group().order != order) throw BackendMismatch(std::string(what) + ": toy group order differs");
}

}  // namespace

// ---------------------------------------------------------------------------
// Group elements

BackendId G1Element::backend() const { return backend_of(repr_); }

bool G1Element::is_identity() const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) return t->exponent == 0;
  return std::get<bn254::G1>(repr_).is_identity();
}

G1Element G1Element::pow(const U256& s) const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    return G1Element(ToyElement{toy_mul(t->exponent, toy_reduce(s, t->order), t->order), t->order});
  }
  return G1Element(std::get<bn254::G1>(repr_).mul(s));
}

G1Element G1Element::operator*(const G1Element& o) const {
  require_same(*this, o, "G1 operation");
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    const auto& u = toy_of(o.repr_);
    require_same_toy(*t, u, "G1 operation");
    return G1Element(ToyElement{(t->exponent + u.exponent) % t->order, t->order});
  }
  return G1Element(std::get<bn254::G1>(repr_) + std::get<bn254::G1>(o.repr_));
}

Bytes G1Element::encode() const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    auto e = toy::encode_exponent(t->exponent);
    return {e.begin(), e.end()};
  }
  auto e = bn254::encode_g1(std::get<bn254::G1>(repr_));
  return {e.begin(), e.end()};
}

G1Element G1Element::decode(ByteSpan bytes, const CryptoParams& params) {
  if (params.backend() == BackendId::toy_small_group) {
    return G1Element(ToyElement{toy::decode_exponent(bytes, params.toy_group()), params.toy_group().order});
  }
  return G1Element(bn254::decode_g1(bytes));
}

G1Element G1Element::identity(const CryptoParams& params) {
  if (params.backend() == BackendId::toy_small_group) return G1Element(ToyElement{0, params.toy_group().order});
  return G1Element(bn254::G1::identity());
}

BackendId G2Element::backend() const { return backend_of(repr_); }

bool G2Element::is_identity() const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) return t->exponent == 0;
  return std::get<bn254::G2>(repr_).is_identity();
}

G2Element G2Element::pow(const U256& s) const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    return G2Element(ToyElement{toy_mul(t->exponent, toy_reduce(s, t->order), t->order), t->order});
  }
  return G2Element(std::get<bn254::G2>(repr_).mul(s));
}

G2Element G2Element::operator*(const G2Element& o) const {
  require_same(*this, o, "G2 operation");
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    const auto& u = std::get<ToyElement>(o.repr_);
    require_same_toy(*t, u, "G2 operation");
    return G2Element(ToyElement{(t->exponent + u.exponent) % t->order, t->order});
  }
  return G2Element(std::get<bn254::G2>(repr_) + std::get<bn254::G2>(o.repr_));
}

Bytes G2Element::encode() const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    auto e = toy::encode_exponent(t->exponent);
    return {e.begin(), e.end()};
  }
  auto e = bn254::encode_g2(std::get<bn254::G2>(repr_));
  return {e.begin(), e.end()};
}

G2Element G2Element::decode(ByteSpan bytes, const CryptoParams& params) {
  if (params.backend() == BackendId::toy_small_group) {
    return G2Element(ToyElement{toy::decode_exponent(bytes, params.toy_group()), params.toy_group().order});
  }
  return G2Element(bn254::decode_g2(bytes));
}

G2Element G2Element::identity(const CryptoParams& params) {
  if (params.backend() == BackendId::toy_small_group) return G2Element(ToyElement{0, params.toy_group().order});
  return G2Element(bn254::G2::identity());
}

BackendId GtElement::backend() const { return backend_of(repr_); }

bool GtElement::is_identity() const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) return t->exponent == 0;
  return std::get<bn254::Fp12>(repr_).is_one();
}

GtElement GtElement::pow(const U256& s) const {
  if (auto* t = std::get_if<ToyElement>(&repr_)) {
    return GtElement(ToyElement{toy_mul(t->exponent, toy_reduce(s, t->order), t->order), t->order});
  }
  return GtElement(std::get<bn254::Fp12>(repr_).pow(std::span<const std::uint64_t>(s.limb)));
}

GtElement GtElement::identity(const CryptoParams& params) {
  if (params.backend() == BackendId::toy_small_group) return GtElement(ToyElement{0, params.toy_group().order});
  return GtElement(bn254::Fp12::one());
}

// ---------------------------------------------------------------------------
// Keys, digests, proofs

std::string ProverKey::to_hex(const CryptoParams& params) const {
  require_backend(params, backend_, "prover key");
  if (backend_ == BackendId::toy_small_group) {
    return zkride::to_hex(toy::encode_exponent(static_cast<std::uint32_t>(scalar_.limb[0])));
  }
  return zkride::to_hex(scalar_.to_be_bytes());
}

ProverKey ProverKey::from_hex(std::string_view hex, const CryptoParams& params) {
  Bytes b = zkride::from_hex(hex);
  U256 a;
  if (params.backend() == BackendId::toy_small_group) {
    if (b.size() != toy::kEncodedSize) throw DecodeError("toy prover key must be 4 bytes");
    a = U256(toy::decode_exponent(b, params.toy_group()));
  } else {
    if (b.size() != 32) throw DecodeError("prover key must be 32 bytes");
    std::array<std::uint8_t, 32> buf{};
    std::copy(b.begin(), b.end(), buf.begin());
    a = U256::from_be_bytes(buf);
    if (a >= bn254::kGroupOrder) throw DecodeError("prover key is not reduced modulo the group order");
  }
  if (a.is_zero()) throw DecodeError("prover key is zero");
  return ProverKey(a, params.backend());
}

VerifierKey::VerifierKey(G2Element v) : v_(std::move(v)) {
  if (v_.is_identity()) throw ValidationError("verifier key is the identity");
  if (auto* q = std::get_if<bn254::G2>(&v_.repr())) {
    prepared_ = std::make_shared<const bn254::G2Prepared>(bn254::prepare_g2(q->to_affine()));
  }
}

VerifierKey VerifierKey::decode(ByteSpan bytes, const CryptoParams& params) {
  G2Element v = G2Element::decode(bytes, params);
  if (v.is_identity()) throw DecodeError("verifier key is the identity");
  return VerifierKey(std::move(v));
}

Digest Digest::from_bytes(ByteSpan b) {
  if (b.size() != 32) throw ValidationError("digest must be exactly 32 bytes, got " + std::to_string(b.size()));
  Digest d;
  std::copy(b.begin(), b.end(), d.bytes.begin());
  return d;
}

Digest Digest::from_hex(std::string_view hex) {
  Bytes b = zkride::from_hex(hex);
  if (b.size() != 32) throw DecodeError("digest must be exactly 32 bytes");
  return from_bytes(b);
}

Bytes Proof::encode() const {
  Bytes out = delta.encode();
  if (session_nonce) {
    const std::size_t n = out.size();
    out.resize(n + session_nonce->size());
    std::copy(session_nonce->begin(), session_nonce->end(), out.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return out;
}

Proof Proof::decode(ByteSpan bytes, const CryptoParams& params) {
  const std::size_t elem =
      params.backend() == BackendId::toy_small_group ? toy::kEncodedSize : bn254::kG1EncodedSize;
  if (bytes.size() != elem && bytes.size() != elem + kNonceSize) {
    throw DecodeError("proof must be " + std::to_string(elem) + " or " + std::to_string(elem + kNonceSize) +
                      " bytes, got " + std::to_string(bytes.size()));
  }
  G1Element delta = G1Element::decode(bytes.first(elem), params);
  std::optional<Nonce> nonce;
  if (bytes.size() > elem) {
    Nonce n{};
    std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(elem), bytes.end(), n.begin());
    nonce = n;
  }
  return Proof{std::move(delta), nonce};
}

Proof Proof::from_hex(std::string_view hex, const CryptoParams& params) {
  return decode(zkride::from_hex(hex), params);
}

// ---------------------------------------------------------------------------
// Protocol functions

std::pair<ProverKey, VerifierKey> generate_keypair(const CryptoParams& params, Drbg& rng) {
  ProverKey key(draw_scalar(params, rng), params.backend());
  return {key, derive_verifier_key(key, params)};
}

std::pair<ProverKey, VerifierKey> generate_keypair(const CryptoParams& params, const std::optional<Seed>& seed) {
  Drbg rng = seed ? Drbg(*seed) : Drbg::from_entropy();
  return generate_keypair(params, rng);
}

VerifierKey derive_verifier_key(const ProverKey& key, const CryptoParams& params) {
  require_backend(params, key.backend(), "prover key");
  return VerifierKey(params.generator_g2().pow(key.scalar()));
}

Digest digest_message(ByteSpan message) {
  Digest d;
  d.bytes = sha256(message);
  return d;
}

G1Element hash_to_group(const Digest& digest, const std::optional<Nonce>& nonce, const CryptoParams& params) {
  if (params.backend() == BackendId::toy_small_group) {
    const auto& group = params.toy_group();
    std::uint32_t e = nonce ? group.reduce(sha256_concat({digest.bytes, *nonce})) : group.reduce(digest.bytes);
    if (e == 0) e = 1;  // keep the map total onto non-identity elements
    return G1Element(ToyElement{e, group.order});
  }
  if (!nonce) return G1Element(bn254::hash_to_g1(digest.bytes));
  std::array<std::uint8_t, 32 + kNonceSize> buf{};
  std::copy(digest.bytes.begin(), digest.bytes.end(), buf.begin());
  std::copy(nonce->begin(), nonce->end(), buf.begin() + 32);
  return G1Element(bn254::hash_to_g1(buf));
}

Proof generate_proof(const ProverKey& key, const Digest& digest, const std::optional<Nonce>& nonce,
                     const CryptoParams& params) {
  require_backend(params, key.backend(), "prover key");
  if (params.backend() == BackendId::toy_small_group && key.scalar() >= params.group_order()) {
    throw BackendMismatch("prover key is out of range for this toy group");
  }
  return Proof{hash_to_group(digest, nonce, params).pow(key.scalar()), nonce};
}

bool verify_proof(const Proof& proof, const Digest& digest, const std::optional<Nonce>& nonce,
                  const VerifierKey& vkey, const CryptoParams& params) {
  require_backend(params, proof.delta.backend(), "proof");
  require_backend(params, vkey.backend(), "verifier key");
  G1Element h = hash_to_group(digest, nonce, params);
  if (params.backend() == BackendId::toy_small_group) {
    return pairing(proof.delta, params.generator_g2(), params) == pairing(h, vkey.element(), params);
  }
  // Same two pairings, with the fixed G2 arguments' lines precomputed.
  const auto& delta = std::get<bn254::G1>(proof.delta.repr());
  const auto& hp = std::get<bn254::G1>(h.repr());
  g_pairings.fetch_add(2, std::memory_order_relaxed);
  bn254::Fp12 lhs = bn254::pairing(delta, prepared_g2_generator());
  bn254::Fp12 rhs = bn254::pairing(hp, *vkey.prepared());
  return lhs == rhs;
}

bool verify_proof_bytes(ByteSpan encoded_proof, const Digest& digest, const std::optional<Nonce>& nonce,
                        const VerifierKey& vkey, const CryptoParams& params) {
  return verify_proof(Proof::decode(encoded_proof, params), digest, nonce, vkey, params);
}

GtElement pairing(const G1Element& x, const G2Element& y, const CryptoParams& params) {
  require_backend(params, x.backend(), "G1 argument");
  require_backend(params, y.backend(), "G2 argument");
  g_pairings.fetch_add(1, std::memory_order_relaxed);
  if (params.backend() == BackendId::toy_small_group) {
    const auto& a = std::get<ToyElement>(x.repr());
    const auto& b = std::get<ToyElement>(y.repr());
    require_toy_order(params, a.order, "G1 argument");
    require_toy_order(params, b.order, "G2 argument");
    return GtElement(ToyElement{toy_mul(a.exponent, b.exponent, a.order), a.order});
  }
  return GtElement(bn254::pairing(std::get<bn254::G1>(x.repr()), std::get<bn254::G2>(y.repr())));
}

std::uint64_t pairing_evaluations() { return g_pairings.load(std::memory_order_relaxed); }

}  // namespace zkride::crypto
