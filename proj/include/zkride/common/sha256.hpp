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

#ifndef ZKRIDE_COMMON_SHA256_HPP_
#define ZKRIDE_COMMON_SHA256_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>

#include "zkride/common/bytes.hpp"

namespace zkride {

using Hash32 = std::array<std::uint8_t, 32>;

Hash32 sha256(ByteSpan data);

// Hash of the concatenation of `parts`, without materialising it.
Hash32 sha256_concat(std::initializer_list<ByteSpan> parts);

}  // namespace zkride

#endif  // ZKRIDE_COMMON_SHA256_HPP_
