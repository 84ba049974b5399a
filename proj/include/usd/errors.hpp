/*
Copyright (c) 2026 The usd developers.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace usd {

// Base class for every error thrown by the library. Each subclass maps to one
// failure mode named in the operation contracts; the CLI turns them into
// nonzero exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// An operator whose entries fail the Hermiticity check.
class NonHermitianInput : public Error {
 public:
  explicit NonHermitianInput(const std::string &msg) : Error(msg) {}
};

// An operator with an eigenvalue below the allowed negative slack.
class NotPositiveSemidefinite : public Error {
 public:
  explicit NotPositiveSemidefinite(const std::string &msg) : Error(msg) {}
};

// Operands whose dimensions do not match.
class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string &msg) : Error(msg) {}
};

// A POVM violating completeness, positivity, or the no-error condition.
class InvalidPovm : public Error {
 public:
  explicit InvalidPovm(const std::string &msg) : Error(msg) {}
};

// A brute-force search whose parameter count or grid volume is out of range.
class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string &msg) : Error(msg) {}
};

// Outcome probabilities below the tolerated negative window.
class BadProbabilities : public Error {
 public:
  explicit BadProbabilities(const std::string &msg) : Error(msg) {}
};

// Malformed or inconsistent input files / parameters.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &msg) : Error(msg) {}
};

}  // namespace usd
