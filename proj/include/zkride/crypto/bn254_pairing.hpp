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

#ifndef ZKRIDE_CRYPTO_BN254_PAIRING_HPP_
#define ZKRIDE_CRYPTO_BN254_PAIRING_HPP_

#include <vector>

#include "zkride/crypto/bn254_curve.hpp"
#include "zkride/crypto/bn254_field.hpp"

namespace zkride::crypto::bn254 {

// Optimal ate pairing e: G1 x G2 -> GT, GT the order-r subgroup of Fp12*.
// e(identity, Q) = e(P, identity) = 1.
Fp12 pairing(const G1& p, const G2& q);

Fp12 miller_loop(const G1Affine& p, const G2Affine& q);

// Miller-loop line coefficients for a fixed G2 argument. Each line is
// stored as (lambda, lambda xT - yT), so evaluating it at P costs two Fp
// multiplications and no inversions.
struct G2Prepared {
  struct Line {
    Fp2 lambda;
    Fp2 c;
  };
  std::vector<Line> lines;  // empty for the identity
};

G2Prepared prepare_g2(const G2Affine& q);
Fp12 miller_loop(const G1Affine& p, const G2Prepared& q);
Fp12 pairing(const G1& p, const G2Prepared& q);

// f^((p^12 - 1) / r) with the BN addition chain in u for the hard part.
Fp12 final_exponentiation(const Fp12& f);

// Same exponent computed by plain square-and-multiply; slow, kept as the
// reference the addition chain is tested against.
Fp12 final_exponentiation_reference(const Fp12& f);

// pi(x, y) = (conj(x) xi^((p-1)/3), conj(y) xi^((p-1)/2)) on the twist.
G2Affine twist_frobenius(const G2Affine& q);

}  // namespace zkride::crypto::bn254

#endif  // ZKRIDE_CRYPTO_BN254_PAIRING_HPP_
