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

#include "zkride/crypto/bn254_field.hpp"

#include <utility>

namespace zkride::crypto::bn254 {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

using detail::kR;
using detail::kR2;
using detail::mont_mul;

constexpr U256 modulus_minus(u64 k) {
  U256 out;
  sub_with_borrow(kModulus, U256(k), out);
  return out;
}

// (p - 1) / 2 and (p + 1) / 4, computed by shifting.
constexpr U256 shift_right(const U256& v, unsigned n) {
  U256 out;
  for (int i = 0; i < 4; ++i) {
    u64 lo = v.limb[i] >> n;
    u64 hi = (i + 1 < 4 && n != 0) ? v.limb[i + 1] << (64 - n) : 0;
    out.limb[i] = lo | hi;
  }
  return out;
}

constexpr U256 kR3{0xb1cd6dafda1530dfULL, 0x62f210e6a7283db6ULL, 0xef7f0b0c0ada0afbULL,
                   0x20fd6e902d592544ULL};  // 2^768 mod p

inline bool is_even(const U256& v) { return (v.limb[0] & 1u) == 0; }

inline void halve(U256& v, std::uint64_t carry_in = 0) {
  for (int i = 0; i < 3; ++i) v.limb[i] = (v.limb[i] >> 1) | (v.limb[i + 1] << 63);
  v.limb[3] = (v.limb[3] >> 1) | (carry_in << 63);
}

// x / 2 mod p for x < p.
inline void halve_mod(U256& x) {
  if (is_even(x)) {
    halve(x);
  } else {
    std::uint64_t carry = add_with_carry(x, kModulus, x);
    halve(x, carry);
  }
}

inline void sub_mod(U256& a, const U256& b) {
  if (sub_with_borrow(a, b, a) != 0) add_with_carry(a, kModulus, a);
}

// Plain (non-Montgomery) inverse of a non-zero a < p by the binary
// extended Euclidean algorithm.
U256 binary_inverse(const U256& a) {
  U256 u = a;
  U256 v = kModulus;
  U256 x1(1);
  U256 x2(0);
  const U256 one(1);
  while (u != one && v != one) {
    while (is_even(u)) {
      halve(u);
      halve_mod(x1);
    }
    while (is_even(v)) {
      halve(v);
      halve_mod(x2);
    }
    if (u >= v) {
      sub_with_borrow(u, v, u);
      sub_mod(x1, x2);
    } else {
      sub_with_borrow(v, u, v);
      sub_mod(x2, x1);
    }
  }
  return u == one ? x1 : x2;
}

constexpr U256 kLegendreExp = shift_right(modulus_minus(1), 1);
constexpr U256 kSqrtExp = [] {
  U256 p1;
  add_with_carry(kModulus, U256(1), p1);
  return shift_right(p1, 2);
}();
constexpr U256 kPMinus3Div4 = shift_right(modulus_minus(3), 2);

template <typename F>
F pow_generic(const F& base, std::span<const u64> exp, const F& one) {
  F acc = one;
  bool started = false;
  for (std::size_t i = exp.size(); i-- > 0;) {
    for (int b = 63; b >= 0; --b) {
      if (started) acc = acc.square();
      if ((exp[i] >> b) & 1u) {
        acc = started ? acc * base : base;
        started = true;
      }
    }
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fp

Fp Fp::one() {
  Fp f;
  f.mont_ = kR;
  return f;
}

Fp Fp::from_u256(const U256& v) {
  U256 r = v;
  while (r >= kModulus) {
    U256 t;
    sub_with_borrow(r, kModulus, t);
    r = t;
  }
  Fp f;
  f.mont_ = mont_mul(r, kR2);
  return f;
}

Fp Fp::two_pow_256() { return from_u256(kR); }

std::optional<Fp> Fp::from_canonical(const U256& v) {
  if (v >= kModulus) return std::nullopt;
  return from_u256(v);
}

U256 Fp::to_u256() const { return mont_mul(mont_, U256(1)); }

Fp Fp::pow(std::span<const std::uint64_t> exp) const { return pow_generic(*this, exp, one()); }

Fp Fp::inverse() const {
  if (is_zero()) return zero();
  // mont_ = aR; (aR)^-1 * R^3 * R^-1 = a^-1 R.
  Fp f;
  f.mont_ = mont_mul(binary_inverse(mont_), kR3);
  return f;
}

Fp Fp::inverse_by_exponentiation() const { return pow(modulus_minus(2)); }

int Fp::legendre() const {
  if (is_zero()) return 0;
  return pow(kLegendreExp) == one() ? 1 : -1;
}

std::optional<Fp> Fp::sqrt() const {
  // p = 3 mod 4
  Fp r = pow(kSqrtExp);
  if (r.square() != *this) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------------------
// Fp2

Fp2 Fp2::pow(std::span<const std::uint64_t> exp) const { return pow_generic(*this, exp, one()); }

std::optional<Fp2> Fp2::sqrt() const {
  // Square root for p = 3 mod 4 (Adj and Rodriguez-Henriquez, algorithm 9).
  if (is_zero()) return zero();
  Fp2 a1 = pow(kPMinus3Div4);
  Fp2 alpha = a1.square() * *this;
  Fp2 a0 = alpha.conjugate() * alpha;  // alpha^(p+1)
  Fp2 minus_one = -one();
  if (a0 == minus_one) return std::nullopt;
  Fp2 x0 = a1 * *this;
  Fp2 x;
  if (alpha == minus_one) {
    x = Fp2{-x0.c1, x0.c0};  // i * x0
  } else {
    Fp2 b = (one() + alpha).pow(kLegendreExp);
    x = b * x0;
  }
  if (x.square() != *this) return std::nullopt;
  return x;
}

// ---------------------------------------------------------------------------
// Fp6

Fp6 Fp6::operator*(const Fp6& o) const {
  Fp2 t0 = c0 * o.c0;
  Fp2 t1 = c1 * o.c1;
  Fp2 t2 = c2 * o.c2;
  Fp2 r0 = ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi() + t0;
  Fp2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi();
  Fp2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
  return {r0, r1, r2};
}

Fp6 Fp6::mul_by_01(const Fp2& b0, const Fp2& b1) const {
  Fp2 t0 = c0 * b0;
  Fp2 t1 = c1 * b1;
  Fp2 r0 = (c2 * b1).mul_by_xi() + t0;
  Fp2 r1 = (c0 + c1) * (b0 + b1) - t0 - t1;
  Fp2 r2 = c2 * b0 + t1;
  return {r0, r1, r2};
}

Fp6 Fp6::inverse() const {
  Fp2 a = c0.square() - (c1 * c2).mul_by_xi();
  Fp2 b = c2.square().mul_by_xi() - c0 * c1;
  Fp2 c = c1.square() - c0 * c2;
  Fp2 f = c0 * a + (c2 * b + c1 * c).mul_by_xi();
  Fp2 finv = f.inverse();
  return {a * finv, b * finv, c * finv};
}

// ---------------------------------------------------------------------------
// Fp12

namespace {

// gamma[k] = xi^(k (p - 1) / 6): w^(k p) = gamma[k] w^k.
const std::array<Fp2, 6>& frobenius_coeffs() {
  static const std::array<Fp2, 6> coeffs = [] {
    U256 pm1;
    sub_with_borrow(kModulus, U256(1), pm1);
    // (p - 1) / 6 by long division on limbs.
    U256 e;
    u128 rem = 0;
    for (int i = 3; i >= 0; --i) {
      u128 cur = (rem << 64) | pm1.limb[i];
      e.limb[i] = static_cast<u64>(cur / 6);
      rem = cur % 6;
    }
    std::array<Fp2, 6> out;
    Fp2 g1 = Fp2::xi().pow(e);
    out[0] = Fp2::one();
    for (int k = 1; k < 6; ++k) out[k] = out[k - 1] * g1;
    return out;
  }();
  return coeffs;
}

}  // namespace

const Fp2& Fp12::coeff(int k) const {
  const Fp6& half = (k % 2 == 0) ? c0 : c1;
  switch (k / 2) {
    case 0:
      return half.c0;
    case 1:
      return half.c1;
    default:
      return half.c2;
  }
}

Fp2& Fp12::coeff(int k) { return const_cast<Fp2&>(std::as_const(*this).coeff(k)); }

Fp12 Fp12::operator*(const Fp12& o) const {
  Fp6 t0 = c0 * o.c0;
  Fp6 t1 = c1 * o.c1;
  return {t0 + t1.mul_by_v(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
}

Fp12 Fp12::square() const {
  Fp6 ab = c0 * c1;
  Fp6 r0 = (c0 + c1) * (c0 + c1.mul_by_v()) - ab - ab.mul_by_v();
  return {r0, ab + ab};
}

Fp12 Fp12::cyclotomic_square() const {
  // View the element as (z0 + z1 y) + (z2 + z3 y) s + (z4 + z5 y) s^2 over
  // Fp4 = Fp2[y] / (y^2 - xi).
  const Fp2& z0 = c0.c0;
  const Fp2& z4 = c0.c1;
  const Fp2& z3 = c0.c2;
  const Fp2& z2 = c1.c0;
  const Fp2& z1 = c1.c1;
  const Fp2& z5 = c1.c2;
  auto fp4_square = [](const Fp2& a, const Fp2& b, Fp2& lo, Fp2& hi) {
    Fp2 t = a * b;
    lo = (a + b) * (b.mul_by_xi() + a) - t - t.mul_by_xi();
    hi = t.dbl();
  };
  Fp2 t0, t1, t2, t3, t4, t5;
  fp4_square(z0, z1, t0, t1);
  fp4_square(z2, z3, t2, t3);
  fp4_square(z4, z5, t4, t5);
  Fp12 r;
  r.c0.c0 = (t0 - z0).dbl() + t0;
  r.c1.c1 = (t1 + z1).dbl() + t1;
  Fp2 x5 = t5.mul_by_xi();
  r.c1.c0 = (x5 + z2).dbl() + x5;
  r.c0.c2 = (t4 - z3).dbl() + t4;
  r.c0.c1 = (t2 - z4).dbl() + t2;
  r.c1.c2 = (t3 + z5).dbl() + t3;
  return r;
}

Fp12 Fp12::cyclotomic_pow(std::uint64_t exp) const {
  Fp12 acc = one();
  bool started = false;
  for (int b = 63; b >= 0; --b) {
    if (started) acc = acc.cyclotomic_square();
    if ((exp >> b) & 1u) {
      acc = started ? acc * *this : *this;
      started = true;
    }
  }
  return acc;
}

Fp12 Fp12::inverse() const {
  Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
  return {c0 * t, -(c1 * t)};
}

Fp12 Fp12::frobenius() const {
  const auto& g = frobenius_coeffs();
  Fp12 out;
  for (int k = 0; k < 6; ++k) out.coeff(k) = coeff(k).conjugate() * g[k];
  return out;
}

Fp12 Fp12::pow(std::span<const std::uint64_t> exp) const { return pow_generic(*this, exp, one()); }

Fp12 Fp12::mul_by_line(const Fp& a, const Fp2& b, const Fp2& c) const {
  // line = a + (b + c v) w
  Fp6 t0 = c0 * a;
  Fp6 t1 = c1.mul_by_01(b, c);
  Fp2 a_plus_b = b + Fp2{a, Fp::zero()};
  Fp6 r1 = (c0 + c1).mul_by_01(a_plus_b, c) - t0 - t1;
  return {t0 + t1.mul_by_v(), r1};
}

}  // namespace zkride::crypto::bn254
