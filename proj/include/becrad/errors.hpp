#pragma once

#include <stdexcept>
#include <string>

namespace becrad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter values or arguments outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The grand-canonical Hamiltonian is not bounded below at the requested
/// chemical potential (mu above the critical value, or a Bogoliubov block
/// past the squeezing edge).
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// A series or lattice sum diverges at the requested point.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure hit its cap without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed sweep configuration or CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace becrad
