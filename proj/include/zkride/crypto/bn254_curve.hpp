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

#ifndef ZKRIDE_CRYPTO_BN254_CURVE_HPP_
#define ZKRIDE_CRYPTO_BN254_CURVE_HPP_

// G1: y^2 = x^3 + 3 over Fp (cofactor 1).
// G2: y^2 = x^3 + 3/xi over Fp2, the order-r subgroup of the sextic D-twist.

#include <array>
#include <cstdint>
#include <span>

#include "zkride/common/bytes.hpp"
#include "zkride/crypto/bn254_field.hpp"

namespace zkride::crypto::bn254 {

template <typename Field>
struct AffinePoint {
  Field x{}, y{};
  bool infinity = true;
};

struct G1Tag {
  using Field = Fp;
  static Fp b();
  static AffinePoint<Fp> generator();
};

struct G2Tag {
  using Field = Fp2;
  static Fp2 b();
  static AffinePoint<Fp2> generator();
};

// Jacobian coordinates: (X, Y, Z) represents (X / Z^2, Y / Z^3); Z == 0 is
// the point at infinity.
template <typename Tag>
class Point {
 public:
  using Field = typename Tag::Field;
  using Affine = AffinePoint<Field>;

  Point() = default;  // identity
  static Point identity() { return Point(); }
  static Point generator() { return from_affine(Tag::generator()); }
  // Does not check the curve equation.
  static Point from_affine(const Affine& a);

  bool is_identity() const { return z_.is_zero(); }
  bool is_on_curve() const;

  Point dbl() const;
  Point operator+(const Point& o) const;
  Point operator-() const;
  Point operator-(const Point& o) const { return *this + (-o); }
  Point mul(const U256& k) const;

  Affine to_affine() const;

  friend bool operator==(const Point& a, const Point& b) { return a.equals(b); }

 private:
  Point(const Field& x, const Field& y, const Field& z) : x_(x), y_(y), z_(z) {}
  bool equals(const Point& o) const;

  Field x_{}, y_{}, z_{};
};

using G1 = Point<G1Tag>;
using G2 = Point<G2Tag>;
using G1Affine = AffinePoint<Fp>;
using G2Affine = AffinePoint<Fp2>;

extern template class Point<G1Tag>;
extern template class Point<G2Tag>;

inline constexpr std::size_t kG1EncodedSize = 32;
inline constexpr std::size_t kG2EncodedSize = 64;

// Compressed encodings: big-endian x (G2: x.c1 || x.c0) with the two spare
// top bits of the first byte used as flags, 0x80 = infinity and 0x40 = y sign
// (parity of y for G1; Fp2::sign() for G2). Infinity is 0x80 followed by
// zeros. Decoding throws DecodeError on any non-canonical input, on points off
// the curve, and (G2) on points outside the order-r subgroup.
std::array<std::uint8_t, kG1EncodedSize> encode_g1(const G1& p);
G1 decode_g1(ByteSpan bytes);
std::array<std::uint8_t, kG2EncodedSize> encode_g2(const G2& p);
G2 decode_g2(ByteSpan bytes);

// Multiplication by the group order; identity iff the point is in G2.
bool g2_in_subgroup(const G2& p);

// Deterministic total map from bytes to a non-identity G1 point: two field
// elements are derived with SHA-256 and each is sent through the
// Shallue-van de Woestijne map for BN curves; the images are added.
G1 hash_to_g1(ByteSpan message);

// Single application of the map, exposed for tests.
G1Affine svdw_map(const Fp& t);

}  // namespace zkride::crypto::bn254

#endif  // ZKRIDE_CRYPTO_BN254_CURVE_HPP_
