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

#include "zkride/crypto/bn254_curve.hpp"

#include <algorithm>

#include "zkride/common/errors.hpp"
#include "zkride/common/sha256.hpp"

namespace zkride::crypto::bn254 {
namespace {

constexpr std::uint8_t kInfinityFlag = 0x80;
constexpr std::uint8_t kSignFlag = 0x40;

template <typename F>
F curve_rhs(const F& x, const F& b) {
  return x.square() * x + b;
}

U256 read_coordinate(ByteSpan bytes, bool strip_flags) {
  std::array<std::uint8_t, 32> buf{};
  std::copy(bytes.begin(), bytes.end(), buf.begin());
  if (strip_flags) buf[0] &= 0x3f;
  return U256::from_be_bytes(buf);
}

Fp canonical_or_throw(const U256& v) {
  auto f = Fp::from_canonical(v);
  if (!f) throw DecodeError("bn254: coordinate not reduced modulo p");
  return *f;
}

bool is_sign_set(const Fp& y) { return y.is_odd(); }
bool is_sign_set(const Fp2& y) { return y.sign(); }

}  // namespace

Fp G1Tag::b() { return Fp::from_u64(3); }

Fp2 G2Tag::b() {
  static const Fp2 b = Fp2{Fp::from_u64(3), Fp::zero()} * Fp2::xi().inverse();
  return b;
}

AffinePoint<Fp> G1Tag::generator() { return {Fp::from_u64(1), Fp::from_u64(2), false}; }

AffinePoint<Fp2> G2Tag::generator() {
  static const AffinePoint<Fp2> g{Fp2{Fp::from_u256(U256::from_hex(
               "0x1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed")),
           Fp::from_u256(U256::from_hex(
               "0x198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2"))},
       Fp2{Fp::from_u256(U256::from_hex(
               "0x12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa")),
           Fp::from_u256(U256::from_hex(
               "0x090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b"))},
      false};
  return g;
}

template <typename Tag>
Point<Tag> Point<Tag>::from_affine(const Affine& a) {
  if (a.infinity) return identity();
  return Point(a.x, a.y, Field::one());
}

template <typename Tag>
bool Point<Tag>::is_on_curve() const {
  if (is_identity()) return true;
  // Y^2 = X^3 + b Z^6
  Field z2 = z_.square();
  Field z6 = z2.square() * z2;
  return y_.square() == x_.square() * x_ + Tag::b() * z6;
}

template <typename Tag>
Point<Tag> Point<Tag>::dbl() const {
  if (is_identity()) return *this;
  // dbl-2009-l (a = 0)
  Field a = x_.square();
  Field b = y_.square();
  Field c = b.square();
  Field d = ((x_ + b).square() - a - c).dbl();
  Field e = a.dbl() + a;
  Field f = e.square();
  Field x3 = f - d.dbl();
  Field y3 = e * (d - x3) - c.dbl().dbl().dbl();
  Field z3 = (y_ * z_).dbl();
  return Point(x3, y3, z3);
}

template <typename Tag>
Point<Tag> Point<Tag>::operator+(const Point& o) const {
  if (is_identity()) return o;
  if (o.is_identity()) return *this;
  // add-2007-bl
  Field z1z1 = z_.square();
  Field z2z2 = o.z_.square();
  Field u1 = x_ * z2z2;
  Field u2 = o.x_ * z1z1;
  Field s1 = y_ * o.z_ * z2z2;
  Field s2 = o.y_ * z_ * z1z1;
  Field h = u2 - u1;
  Field r = (s2 - s1).dbl();
  if (h.is_zero()) {
    return r.is_zero() ? dbl() : identity();
  }
  Field i = h.dbl().square();
  Field j = h * i;
  Field v = u1 * i;
  Field x3 = r.square() - j - v.dbl();
  Field y3 = r * (v - x3) - (s1 * j).dbl();
  Field z3 = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
  return Point(x3, y3, z3);
}

template <typename Tag>
Point<Tag> Point<Tag>::operator-() const {
  return Point(x_, -y_, z_);
}

template <typename Tag>
Point<Tag> Point<Tag>::mul(const U256& k) const {
  Point acc;
  for (unsigned i = k.bit_length(); i-- > 0;) {
    acc = acc.dbl();
    if (k.bit(i)) acc = acc + *this;
  }
  return acc;
}

template <typename Tag>
typename Point<Tag>::Affine Point<Tag>::to_affine() const {
  if (is_identity()) return Affine{};
  Field zinv = z_.inverse();
  Field zinv2 = zinv.square();
  return Affine{x_ * zinv2, y_ * zinv2 * zinv, false};
}

template <typename Tag>
bool Point<Tag>::equals(const Point& o) const {
  if (is_identity() || o.is_identity()) return is_identity() == o.is_identity();
  Field z1z1 = z_.square();
  Field z2z2 = o.z_.square();
  return x_ * z2z2 == o.x_ * z1z1 && y_ * o.z_ * z2z2 == o.y_ * z_ * z1z1;
}

template class Point<G1Tag>;
template class Point<G2Tag>;

// ---------------------------------------------------------------------------
// Encodings

std::array<std::uint8_t, kG1EncodedSize> encode_g1(const G1& p) {
  std::array<std::uint8_t, kG1EncodedSize> out{};
  if (p.is_identity()) {
    out[0] = kInfinityFlag;
    return out;
  }
  auto a = p.to_affine();
  out = a.x.to_be_bytes();
  if (is_sign_set(a.y)) out[0] |= kSignFlag;
  return out;
}

G1 decode_g1(ByteSpan bytes) {
  if (bytes.size() != kG1EncodedSize) throw DecodeError("bn254: G1 encoding must be 32 bytes");
  if (bytes[0] & kInfinityFlag) {
    bool rest_zero = (bytes[0] & ~kInfinityFlag) == 0 &&
                     std::all_of(bytes.begin() + 1, bytes.end(), [](auto b) { return b == 0; });
    if (!rest_zero) throw DecodeError("bn254: malformed G1 infinity encoding");
    return G1::identity();
  }
  bool sign = bytes[0] & kSignFlag;
  Fp x = canonical_or_throw(read_coordinate(bytes, true));
  auto y = curve_rhs(x, G1Tag::b()).sqrt();
  if (!y) throw DecodeError("bn254: G1 x-coordinate is not on the curve");
  Fp yy = (is_sign_set(*y) == sign) ? *y : -*y;
  return G1::from_affine({x, yy, false});
}

std::array<std::uint8_t, kG2EncodedSize> encode_g2(const G2& p) {
  std::array<std::uint8_t, kG2EncodedSize> out{};
  if (p.is_identity()) {
    out[0] = kInfinityFlag;
    return out;
  }
  auto a = p.to_affine();
  auto hi = a.x.c1.to_be_bytes();
  auto lo = a.x.c0.to_be_bytes();
  std::copy(hi.begin(), hi.end(), out.begin());
  std::copy(lo.begin(), lo.end(), out.begin() + 32);
  if (is_sign_set(a.y)) out[0] |= kSignFlag;
  return out;
}

G2 decode_g2(ByteSpan bytes) {
  if (bytes.size() != kG2EncodedSize) throw DecodeError("bn254: G2 encoding must be 64 bytes");
  if (bytes[0] & kInfinityFlag) {
    bool rest_zero = (bytes[0] & ~kInfinityFlag) == 0 &&
                     std::all_of(bytes.begin() + 1, bytes.end(), [](auto b) { return b == 0; });
    if (!rest_zero) throw DecodeError("bn254: malformed G2 infinity encoding");
    return G2::identity();
  }
  bool sign = bytes[0] & kSignFlag;
  Fp c1 = canonical_or_throw(read_coordinate(bytes.subspan(0, 32), true));
  Fp c0 = canonical_or_throw(read_coordinate(bytes.subspan(32, 32), false));
  Fp2 x{c0, c1};
  auto y = curve_rhs(x, G2Tag::b()).sqrt();
  if (!y) throw DecodeError("bn254: G2 x-coordinate is not on the twist");
  Fp2 yy = (is_sign_set(*y) == sign) ? *y : -*y;
  G2 p = G2::from_affine({x, yy, false});
  if (!g2_in_subgroup(p)) throw DecodeError("bn254: G2 point outside the prime-order subgroup");
  return p;
}

bool g2_in_subgroup(const G2& p) { return p.mul(kGroupOrder).is_identity(); }

// ---------------------------------------------------------------------------
// Hashing to G1

namespace {

struct SvdwConstants {
  Fp sqrt_minus3;
  Fp sqrt_minus3_inv;
  Fp cube_root;  // (-1 + sqrt(-3)) / 2
  Fp b_plus_one;
};

const SvdwConstants& svdw_constants() {
  static const SvdwConstants c = [] {
    SvdwConstants k;
    k.sqrt_minus3 = *(-Fp::from_u64(3)).sqrt();
    k.sqrt_minus3_inv = k.sqrt_minus3.inverse();
    k.cube_root = (k.sqrt_minus3 - Fp::one()) * Fp::from_u64(2).inverse();
    k.b_plus_one = G1Tag::b() + Fp::one();
    return k;
  }();
  return c;
}

Fp field_from_hash(ByteSpan message, std::uint8_t index, std::uint32_t counter) {
  static constexpr std::string_view kTag = "zkride/bn254/hash-to-g1/v1";
  ByteWriter w;
  w.u8(index);
  w.u32(counter);
  Hash32 hi = sha256_concat({as_bytes(kTag), w.bytes(), as_bytes("hi"), message});
  Hash32 lo = sha256_concat({as_bytes(kTag), w.bytes(), as_bytes("lo"), message});
  // 512-bit value reduced mod p; the bias is below 2^-250.
  return Fp::from_u256(U256::from_be_bytes(hi)) * Fp::two_pow_256() +
         Fp::from_u256(U256::from_be_bytes(lo));
}

}  // namespace

G1Affine svdw_map(const Fp& t) {
  // Fouque-Tibouchi: w = sqrt(-3) t / (1 + b + t^2), x1 = (-1 + sqrt(-3))/2 - t w,
  // x2 = -1 - x1, x3 = 1 + 1/w^2; the first x with a square right-hand side wins.
  // All three candidates are always evaluated so the cost does not depend on t.
  const auto& k = svdw_constants();
  Fp t2 = t.square();
  Fp denom = k.b_plus_one + t2;  // never zero: -(1 + b) = -4 is a non-square
  Fp prod_inv = (t * denom).inverse();
  Fp w = k.sqrt_minus3 * t2 * prod_inv;       // sqrt(-3) t / denom
  Fp w_inv = denom.square() * prod_inv * k.sqrt_minus3_inv;  // 0 when t == 0
  Fp x1 = k.cube_root - t * w;
  Fp x2 = -Fp::one() - x1;
  Fp x3 = Fp::one() + w_inv.square();

  Fp g1 = curve_rhs(x1, G1Tag::b());
  Fp g2 = curve_rhs(x2, G1Tag::b());
  Fp g3 = curve_rhs(x3, G1Tag::b());
  int l1 = g1.legendre();
  int l2 = g2.legendre();
  int l3 = g3.legendre();
  Fp x;
  Fp g;
  if (l1 >= 0) {
    x = x1;
    g = g1;
  } else if (l2 >= 0) {
    x = x2;
    g = g2;
  } else if (l3 >= 0) {
    x = x3;
    g = g3;
  } else {
    throw Error("bn254: SvdW map produced no square candidate");
  }
  auto y = g.sqrt();
  if (!y) throw Error("bn254: square root of a square failed");
  Fp yy = (y->is_odd() == t.is_odd()) ? *y : -*y;
  return {x, yy, false};
}

G1 hash_to_g1(ByteSpan message) {
  for (std::uint32_t counter = 0;; ++counter) {
    G1 p = G1::from_affine(svdw_map(field_from_hash(message, 1, counter))) +
           G1::from_affine(svdw_map(field_from_hash(message, 2, counter)));
    if (!p.is_identity()) return p;
  }
}

}  // namespace zkride::crypto::bn254
