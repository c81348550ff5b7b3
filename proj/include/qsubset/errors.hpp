// Copyright 2026 The qsubset Authors
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

namespace qsubset {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Basis index or qubit position outside the state.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Unknown segment, duplicate segment name or dimension mismatch.
class LayoutError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the simulator or the enumeration guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Phase register too narrow for the instance.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Malformed problem instance (empty values, negative entries, ...).
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// The feasible set L is empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A forced collapse hit an outcome of (numerically) zero probability.
class ImpossibleOutcomeError : public Error {
 public:
  using Error::Error;
};

/// A stage was handed a state that violates its input contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments to an otherwise well-formed call.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed instance file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The quantum pipeline disagreed with the classical oracle where it must not.
class OracleMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsubset
