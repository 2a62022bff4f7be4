#pragma once

#include <stdexcept>
#include <string>

namespace qwass {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (dimension mismatch,
/// non-Hermitian input, state outside the Bloch ball, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or hit a conditioning limit.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A requested operator would exceed the dense dimension budget.
class DimensionBudgetError : public Error {
 public:
  using Error::Error;
};

/// The SDP solver did not return an optimal solution.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwass
