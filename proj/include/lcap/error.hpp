// Copyright 2026 The lcap Authors
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
#pragma once

#include <stdexcept>
#include <string>

namespace lcap {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Gate kind, arity, or angle mismatch.
class InvalidGateError : public Error {
  public:
    using Error::Error;
};

/// A parameter binding refers to a parameter that does not exist.
class BindingError : public Error {
  public:
    using Error::Error;
};

/// Ansatz or experiment specification violates its invariants.
class SpecError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the domain of a numerical routine.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Malformed or inconsistent configuration / data file.
class ConfigError : public Error {
  public:
    using Error::Error;
};

#define LCAP_REQUIRE(cond, ErrorType, msg)                                     \
    do {                                                                       \
        if (!(cond)) {                                                         \
            throw ErrorType(msg);                                              \
        }                                                                      \
    } while (0)

} // namespace lcap
