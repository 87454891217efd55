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

#ifndef ZKRIDE_CRYPTO_BN254_FIELD_HPP_
#define ZKRIDE_CRYPTO_BN254_FIELD_HPP_

// Field tower for the BN254 (alt_bn128) pairing:
//   Fp   prime field, Montgomery form with R = 2^256
//   Fp2  = Fp[i]  / (i^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - xi),  xi = 9 + i
//   Fp12 = Fp6[w] / (w^2 - v)
// so w^6 = xi, and an Fp12 element has the Fp2 coefficients of
// 1, w, w^2, w^3, w^4, w^5 at c0.c0, c1.c0, c0.c1, c1.c1, c0.c2, c1.c2.

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "zkride/crypto/u256.hpp"

namespace zkride::crypto::bn254 {

// Field modulus p and group order r.
inline constexpr U256 kModulus{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                               0xb85045b68181585dULL, 0x30644e72e131a029ULL};
inline constexpr U256 kGroupOrder{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                  0xb85045b68181585dULL, 0x30644e72e131a029ULL};

namespace detail {

inline constexpr U256 kR{0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL, 0x666ea36f7879462cULL,
                         0x0e0a77c19a07df2fULL};  // 2^256 mod p
inline constexpr U256 kR2{0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL, 0x47ab1eff0a417ff6ULL,
                          0x06d89f71cab8351fULL};  // 2^512 mod p
inline constexpr std::uint64_t kInv = 0x87d20782e4866389ULL;  // -p^-1 mod 2^64

inline void reduce_once(U256& a) {
  U256 t;
  if (sub_with_borrow(a, kModulus, t) == 0) a = t;
}

// CIOS Montgomery multiplication. p < 2^254, so the result fits in four
// limbs before the final conditional subtraction.
inline U256 mont_mul(const U256& a, const U256& b) {
  using u128 = unsigned __int128;
  std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    u128 carry = 0;
    for (int j = 0; j < 4; ++j) {
      u128 s = static_cast<u128>(a.limb[j]) * b.limb[i] + t[j] + carry;
      t[j] = static_cast<std::uint64_t>(s);
      carry = s >> 64;
    }
    u128 s = static_cast<u128>(t[4]) + carry;
    t[4] = static_cast<std::uint64_t>(s);
    t[5] = static_cast<std::uint64_t>(s >> 64);

    std::uint64_t m = t[0] * kInv;
    s = static_cast<u128>(m) * kModulus.limb[0] + t[0];
    carry = s >> 64;
    for (int j = 1; j < 4; ++j) {
      s = static_cast<u128>(m) * kModulus.limb[j] + t[j] + carry;
      t[j - 1] = static_cast<std::uint64_t>(s);
      carry = s >> 64;
    }
    s = static_cast<u128>(t[4]) + carry;
    t[3] = static_cast<std::uint64_t>(s);
    t[4] = t[5] + static_cast<std::uint64_t>(s >> 64);
  }
  U256 out{t[0], t[1], t[2], t[3]};
  reduce_once(out);
  return out;
}

}  // namespace detail

class Fp {
 public:
  constexpr Fp() = default;

  static constexpr Fp zero() { return Fp(); }
  static Fp one();
  static Fp from_u64(std::uint64_t v) { return from_u256(U256(v)); }
  // Reduces any 256-bit value modulo p.
  static Fp from_u256(const U256& v);
  // 2^256 mod p, for folding in the high half of wide inputs.
  static Fp two_pow_256();
  // Strict decode: rejects values >= p.
  static std::optional<Fp> from_canonical(const U256& v);

  U256 to_u256() const;
  std::array<std::uint8_t, 32> to_be_bytes() const { return to_u256().to_be_bytes(); }

  bool is_zero() const { return mont_.is_zero(); }
  bool is_odd() const { return to_u256().limb[0] & 1u; }

  Fp operator+(const Fp& o) const {
    Fp f;
    add_with_carry(mont_, o.mont_, f.mont_);
    detail::reduce_once(f.mont_);
    return f;
  }
  Fp operator-(const Fp& o) const {
    Fp f;
    if (sub_with_borrow(mont_, o.mont_, f.mont_) != 0) add_with_carry(f.mont_, kModulus, f.mont_);
    return f;
  }
  Fp operator-() const { return zero() - *this; }
  Fp operator*(const Fp& o) const {
    Fp f;
    f.mont_ = detail::mont_mul(mont_, o.mont_);
    return f;
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp dbl() const { return *this + *this; }
  Fp square() const { return *this * *this; }

  // Exponent given as little-endian limbs.
  Fp pow(std::span<const std::uint64_t> exp) const;
  Fp pow(const U256& exp) const { return pow(std::span<const std::uint64_t>(exp.limb)); }
  // inverse(0) == 0.
  Fp inverse() const;
  // a^(p-2); reference for inverse().
  Fp inverse_by_exponentiation() const;
  // 1 for non-zero squares, -1 for non-squares, 0 for zero.
  int legendre() const;
  std::optional<Fp> sqrt() const;

  friend bool operator==(const Fp&, const Fp&) = default;

 private:
  U256 mont_;
};

struct Fp2 {
  Fp c0, c1;

  static Fp2 zero() { return {}; }
  static Fp2 one() { return {Fp::one(), Fp::zero()}; }
  static Fp2 xi() { return {Fp::from_u64(9), Fp::one()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  Fp2 operator*(const Fp2& o) const {
    Fp t0 = c0 * o.c0;
    Fp t1 = c1 * o.c1;
    return {t0 - t1, (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  Fp2 operator*(const Fp& s) const { return {c0 * s, c1 * s}; }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 square() const {
    Fp a = c0 * c1;
    return {(c0 + c1) * (c0 - c1), a.dbl()};
  }
  Fp2 conjugate() const { return {c0, -c1}; }
  Fp2 mul_by_xi() const {
    // (9 + i)(c0 + c1 i) = (9 c0 - c1) + (c0 + 9 c1) i
    Fp c0x8 = c0.dbl().dbl().dbl();
    Fp c1x8 = c1.dbl().dbl().dbl();
    return {c0x8 + c0 - c1, c1x8 + c1 + c0};
  }
  Fp norm() const { return c0.square() + c1.square(); }
  Fp2 inverse() const {
    Fp n = norm().inverse();
    return {c0 * n, -(c1 * n)};
  }
  Fp2 pow(std::span<const std::uint64_t> exp) const;
  Fp2 pow(const U256& exp) const { return pow(std::span<const std::uint64_t>(exp.limb)); }
  std::optional<Fp2> sqrt() const;
  // Sign convention for point compression: parity of c0, or of c1 when c0 == 0.
  bool sign() const { return c0.is_zero() ? c1.is_odd() : c0.is_odd(); }

  friend bool operator==(const Fp2&, const Fp2&) = default;
};

struct Fp6 {
  Fp2 c0, c1, c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  Fp6 operator*(const Fp6& o) const;
  Fp6 operator*(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }
  Fp6 operator*(const Fp& s) const { return {c0 * s, c1 * s, c2 * s}; }
  Fp6 square() const { return *this * *this; }
  // Multiplication by v: (c0, c1, c2) -> (xi c2, c0, c1).
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  // Multiplication by b0 + b1 v.
  Fp6 mul_by_01(const Fp2& b0, const Fp2& b1) const;
  Fp6 inverse() const;

  friend bool operator==(const Fp6&, const Fp6&) = default;
};

struct Fp12 {
  Fp6 c0, c1;

  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_one() const { return *this == one(); }

  Fp12 operator*(const Fp12& o) const;
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }
  Fp12 square() const;
  // Granger-Scott squaring; only valid in the cyclotomic subgroup
  // (e.g. after the easy part of the final exponentiation).
  Fp12 cyclotomic_square() const;
  Fp12 cyclotomic_pow(std::uint64_t exp) const;
  Fp12 inverse() const;
  // x^(p^6); the inverse for elements of the cyclotomic subgroup.
  Fp12 conjugate() const { return {c0, -c1}; }
  // x^p.
  Fp12 frobenius() const;
  Fp12 frobenius2() const { return frobenius().frobenius(); }
  Fp12 pow(std::span<const std::uint64_t> exp) const;
  Fp12 pow(std::uint64_t exp) const { return pow(std::span<const std::uint64_t>(&exp, 1)); }

  // Multiplication by a Miller-loop line a + b w + c w^3 (a in Fp).
  Fp12 mul_by_line(const Fp& a, const Fp2& b, const Fp2& c) const;

  // Coefficient of w^k, k in [0, 6).
  const Fp2& coeff(int k) const;
  Fp2& coeff(int k);

  friend bool operator==(const Fp12&, const Fp12&) = default;
};

}  // namespace zkride::crypto::bn254

#endif  // ZKRIDE_CRYPTO_BN254_FIELD_HPP_
