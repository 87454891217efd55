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

#include "zkride/crypto/batch_verify.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zkride::crypto {

std::vector<std::uint8_t> verify_batch_serial(std::span<const VerifyJob> jobs, const CryptoParams& params) {
  std::vector<std::uint8_t> out(jobs.size(), 0);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const VerifyJob& j = jobs[i];
    out[i] = verify_proof(*j.proof, j.digest, j.nonce, *j.vkey, params) ? 1 : 0;
  }
  return out;
}

std::vector<std::uint8_t> verify_batch(std::span<const VerifyJob> jobs, const CryptoParams& params) {
  std::vector<std::uint8_t> out(jobs.size(), 0);
  const auto n = static_cast<std::int64_t>(jobs.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const VerifyJob& j = jobs[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = verify_proof(*j.proof, j.digest, j.nonce, *j.vkey, params) ? 1 : 0;
    } catch (...) {
#pragma omp critical(zkride_batch_verify_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

int batch_verify_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace zkride::crypto
