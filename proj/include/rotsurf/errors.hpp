// Copyright 2026 The Rotsurf Authors.
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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace rotsurf {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input handed to an operation (non-finite seed, bad argument).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation left the domain of a primitive: log of a non-positive value,
/// division by a zero jet, a non-finite intermediate. When the evaluation
/// went through a parsed expression, `offset` points at the failing node.
class DomainError : public Error {
 public:
  using Error::Error;
  std::optional<std::size_t> offset;
};

/// The metric degenerated (W^2 below the regularity floor) at a point.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

/// The normal space could not be spanned at a point.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// A chart was evaluated outside its parameter rectangle.
class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

/// A surface family rejected its parameters (invariant violated on the
/// probe grid); the message names the condition and a witness point.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Every sample of a grid computation was excluded; no value can be reported.
class UndeterminedError : public Error {
 public:
  using Error::Error;
};

/// Bad CLI input: file, schema, flag or projection syntax.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity came out non-finite where the pipeline requires a
/// finite number (report serialization, mesh projection).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rotsurf
