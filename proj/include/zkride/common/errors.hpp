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

#ifndef ZKRIDE_COMMON_ERRORS_HPP_
#define ZKRIDE_COMMON_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace zkride {

// Base of every error the library throws. Protocol outcomes (a proof that
// fails to verify, a transaction without enough endorsements) are values,
// not exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed byte or text encodings, including group elements that are not on
// the curve or not in the prime-order subgroup.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Inputs that violate a documented precondition (bad config, k > n, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Objects from different crypto backends were mixed in one call.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

class RegistryError : public Error {
 public:
  enum class Kind { duplicate, not_found, wrong_role, invalid_id };
  RegistryError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace zkride

#endif  // ZKRIDE_COMMON_ERRORS_HPP_
