// Copyright 2026 The qest Authors
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

#ifndef QEST_ERRORS_HPP
#define QEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qest {

/// Base class for all qest exceptions.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A model violates a domain contract (bad invariant, wrong branch, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// The quantum Fisher information is numerically singular: the two
/// parameters are not locally identifiable and every bound diverges.
class SingularModelError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// A mixed-state derivative has support outside supp(rho); the SLD
/// equation is unsolvable and the model is rejected.
class ModelNotRegularError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// An operation was called on the wrong incompatibility branch
/// (two-dimensional vs three-dimensional standard form).
class WrongBranchError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Internal consistency failure (should not happen for valid inputs).
class InternalError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file (JSON syntax or schema violation).
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace qest

#endif // QEST_ERRORS_HPP
