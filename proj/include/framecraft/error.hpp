// Copyright 2026 The Framecraft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FRAMECRAFT_ERROR_HPP_
#define FRAMECRAFT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace framecraft {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-finite numbers, wrong dimensions, beliefs off the
// simplex, unparseable files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A mathematically undefined request, e.g. the posterior on a signal that has
// zero probability.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The LP backend could not produce an optimum (infeasible or unbounded).
class LpError : public Error {
 public:
  using Error::Error;
};

// Oracle, scorer and generator failures. The kind distinguishes lookup,
// transport and parse problems so callers can decide whether to retry.
class OracleError : public Error {
 public:
  enum class Kind { kMissingEntry, kEndpoint, kParse, kExhausted };
  OracleError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace framecraft

#endif  // FRAMECRAFT_ERROR_HPP_
