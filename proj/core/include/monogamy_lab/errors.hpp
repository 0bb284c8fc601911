// Copyright 2026 The monogamy_lab Authors
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

namespace monogamy {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible (matmul, partial trace, reshapes).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition or type invariant does not hold for the input.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A value that must hold by construction did not (e.g. Fourier outcome
/// probabilities drifting from 1/d). Indicates a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed state file or builtin spec.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace monogamy
