// Copyright 2026 The bellscan Authors
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

namespace bellscan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (bad m label, wrong spin, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Polynomial degree exceeds 2s, or an unsupported degree was requested.
class DegreeError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Observable coefficients violate the unit-norm bound.
class ConstraintError : public Error {
  public:
    using Error::Error;
};

/// A quantity that must be real (or Hermitian, or normalized) is not,
/// beyond tolerance.
class NumericalConsistencyError : public Error {
  public:
    using Error::Error;
};

} // namespace bellscan
