#pragma once

#include <stdexcept>
#include <string>

namespace ptwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver failed to meet its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The requested complex pair is still real at this coupling.
class BelowCriticalError : public Error {
 public:
  using Error::Error;
};

/// An elimination plan asks for a level the current spectrum does not have.
class IllegalPlanError : public Error {
 public:
  using Error::Error;
};

/// The intertwining operator was applied to the level it was built from.
class AnnihilationError : public Error {
 public:
  using Error::Error;
};

/// A superpotential was evaluated at a node of its seed eigenfunction.
class NodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptwell
