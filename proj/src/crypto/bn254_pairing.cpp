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

#include "zkride/crypto/bn254_pairing.hpp"

#include <array>

namespace zkride::crypto::bn254 {
namespace {

// BN parameter u and the Miller loop length 6u + 2 (65 bits).
constexpr std::uint64_t kU = 4965661367192848881ULL;
constexpr unsigned __int128 kLoopCount =
    static_cast<unsigned __int128>(kU) * 6 + 2;  // 0x19d797039be763ba8
constexpr unsigned kLoopBits = 65;

// (p^4 - p^2 + 1) / r, little-endian limbs.
constexpr std::array<std::uint64_t, 12> kHardExponent = {
    0xe81bb482ccdf42b1ULL, 0x5abf5cc4f49c36d4ULL, 0xf1154e7e1da014fdULL, 0xdcc7b44c87cdbacfULL,
    0xaaa441e3954bcf8aULL, 0x6b887d56d5095f23ULL, 0x79581e16f3fd90c6ULL, 0x3b1b1355d189227dULL,
    0x4e529a5861876f6bULL, 0x6c0eb522d5b12278ULL, 0x331ec15183177fafULL, 0x01baaa710b0759adULL};

bool loop_bit(unsigned i) { return (kLoopCount >> i) & 1u; }

struct TwistFrobeniusCoeffs {
  Fp2 x;  // xi^((p-1)/3)
  Fp2 y;  // xi^((p-1)/2)
};

const TwistFrobeniusCoeffs& twist_coeffs() {
  static const TwistFrobeniusCoeffs c = [] {
    // gamma_k = xi^(k (p-1)/6); compute gamma_1 once by exponentiation.
    U256 pm1;
    sub_with_borrow(kModulus, U256(1), pm1);
    U256 e;
    unsigned __int128 rem = 0;
    for (int i = 3; i >= 0; --i) {
      unsigned __int128 cur = (rem << 64) | pm1.limb[i];
      e.limb[i] = static_cast<std::uint64_t>(cur / 6);
      rem = cur % 6;
    }
    Fp2 g1 = Fp2::xi().pow(e);
    Fp2 g2 = g1.square();
    return TwistFrobeniusCoeffs{g2, g2 * g1};
  }();
  return c;
}

// Tangent/chord line through T (and Q) evaluated at P on the untwisted
// curve: l(P) = yP - lambda xP w + (lambda xT - yT) w^3.
struct LineStep {
  Fp2 lambda;
  G2Affine next;
};

LineStep doubling_step(const G2Affine& t) {
  Fp2 x2 = t.x.square();
  Fp2 lambda = (x2.dbl() + x2) * t.y.dbl().inverse();
  Fp2 x3 = lambda.square() - t.x.dbl();
  Fp2 y3 = lambda * (t.x - x3) - t.y;
  return {lambda, {x3, y3, false}};
}

LineStep addition_step(const G2Affine& t, const G2Affine& q) {
  Fp2 lambda = (q.y - t.y) * (q.x - t.x).inverse();
  Fp2 x3 = lambda.square() - t.x - q.x;
  Fp2 y3 = lambda * (t.x - x3) - t.y;
  return {lambda, {x3, y3, false}};
}

Fp12 apply_line(const Fp12& f, const LineStep& s, const G2Affine& t, const G1Affine& p) {
  return f.mul_by_line(p.y, -(s.lambda * p.x), s.lambda * t.x - t.y);
}

}  // namespace

G2Affine twist_frobenius(const G2Affine& q) {
  if (q.infinity) return q;
  const auto& c = twist_coeffs();
  return {q.x.conjugate() * c.x, q.y.conjugate() * c.y, false};
}

Fp12 miller_loop(const G1Affine& p, const G2Affine& q) {
  if (p.infinity || q.infinity) return Fp12::one();
  Fp12 f = Fp12::one();
  G2Affine t = q;
  for (unsigned i = kLoopBits - 1; i-- > 0;) {
    LineStep d = doubling_step(t);
    f = apply_line(f.square(), d, t, p);
    t = d.next;
    if (loop_bit(i)) {
      LineStep a = addition_step(t, q);
      f = apply_line(f, a, t, p);
      t = a.next;
    }
  }
  // T = [6u+2]Q; finish with Q1 = pi(Q) and -Q2 = -pi^2(Q).
  G2Affine q1 = twist_frobenius(q);
  G2Affine q2 = twist_frobenius(q1);
  G2Affine minus_q2{q2.x, -q2.y, false};
  LineStep a1 = addition_step(t, q1);
  f = apply_line(f, a1, t, p);
  t = a1.next;
  LineStep a2 = addition_step(t, minus_q2);
  return apply_line(f, a2, t, p);
}

G2Prepared prepare_g2(const G2Affine& q) {
  G2Prepared out;
  if (q.infinity) return out;
  out.lines.reserve(2 * kLoopBits);
  auto record = [&](const LineStep& s, const G2Affine& t) {
    out.lines.push_back({s.lambda, s.lambda * t.x - t.y});
  };
  G2Affine t = q;
  for (unsigned i = kLoopBits - 1; i-- > 0;) {
    LineStep d = doubling_step(t);
    record(d, t);
    t = d.next;
    if (loop_bit(i)) {
      LineStep a = addition_step(t, q);
      record(a, t);
      t = a.next;
    }
  }
  G2Affine q1 = twist_frobenius(q);
  G2Affine q2 = twist_frobenius(q1);
  G2Affine minus_q2{q2.x, -q2.y, false};
  LineStep a1 = addition_step(t, q1);
  record(a1, t);
  t = a1.next;
  record(addition_step(t, minus_q2), t);
  return out;
}

Fp12 miller_loop(const G1Affine& p, const G2Prepared& q) {
  if (p.infinity || q.lines.empty()) return Fp12::one();
  Fp12 f = Fp12::one();
  std::size_t k = 0;
  auto apply = [&](const Fp12& g) {
    const auto& l = q.lines[k++];
    return g.mul_by_line(p.y, -(l.lambda * p.x), l.c);
  };
  for (unsigned i = kLoopBits - 1; i-- > 0;) {
    f = apply(f.square());
    if (loop_bit(i)) f = apply(f);
  }
  f = apply(f);
  return apply(f);
}

Fp12 final_exponentiation(const Fp12& in) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  Fp12 t1 = in.conjugate() * in.inverse();
  t1 = t1.frobenius2() * t1;

  // Hard part (p^4 - p^2 + 1)/r as an addition chain in u (Devegili et al.).
  Fp12 fp = t1.frobenius();
  Fp12 fp2 = t1.frobenius2();
  Fp12 fp3 = fp2.frobenius();
  Fp12 fu = t1.cyclotomic_pow(kU);
  Fp12 fu2 = fu.cyclotomic_pow(kU);
  Fp12 fu3 = fu2.cyclotomic_pow(kU);

  Fp12 y3 = fu.frobenius().conjugate();
  Fp12 fu2p = fu2.frobenius();
  Fp12 fu3p = fu3.frobenius();
  Fp12 y2 = fu2.frobenius2();
  Fp12 y0 = fp * fp2 * fp3;
  Fp12 y1 = t1.conjugate();
  Fp12 y5 = fu2.conjugate();
  Fp12 y4 = (fu * fu2p).conjugate();
  Fp12 y6 = (fu3 * fu3p).conjugate();

  Fp12 t0 = y6.cyclotomic_square() * y4 * y5;
  Fp12 s1 = y3 * y5 * t0;
  t0 = t0 * y2;
  s1 = s1.cyclotomic_square() * t0;
  s1 = s1.cyclotomic_square();
  t0 = s1 * y1;
  s1 = s1 * y0;
  t0 = t0.cyclotomic_square() * s1;
  return t0;
}

Fp12 final_exponentiation_reference(const Fp12& in) {
  Fp12 t1 = in.conjugate() * in.inverse();
  t1 = t1.frobenius2() * t1;
  return t1.pow(kHardExponent);
}

Fp12 pairing(const G1& p, const G2& q) {
  if (p.is_identity() || q.is_identity()) return Fp12::one();
  return final_exponentiation(miller_loop(p.to_affine(), q.to_affine()));
}

Fp12 pairing(const G1& p, const G2Prepared& q) {
  if (p.is_identity() || q.lines.empty()) return Fp12::one();
  return final_exponentiation(miller_loop(p.to_affine(), q));
}

}  // namespace zkride::crypto::bn254
