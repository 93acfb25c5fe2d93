// Copyright 2026 The oplab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oplab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or vector lengths do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an input that violates its documented
/// precondition (e.g. a non-Hermitian matrix passed to a Hermitian solver).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A point or parameter lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt met a vector that is (numerically) in the span of its
/// predecessors.
class DependenceError : public Error {
 public:
  DependenceError(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A user supplied evaluator returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class AliasingError : public Error {
 public:
  using Error::Error;
};

/// z is within tolerance of the spectrum.
class NearSingularError : public Error {
 public:
  using Error::Error;
};

class NotPositiveHarmonicError : public Error {
 public:
  using Error::Error;
};

/// The test function of a positive-definiteness check is not Hermitian
/// symmetric, f(-x) != conj(f(x)).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The Sturm-Liouville operator has 0 as an eigenvalue under the given
/// boundary conditions; a shift is required.
class NonInjectiveError : public Error {
 public:
  using Error::Error;
};

class ShiftNotFoundError : public Error {
 public:
  using Error::Error;
};

/// Iterative method did not converge within its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace oplab
