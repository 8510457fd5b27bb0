#pragma once

#include <stdexcept>
#include <string>

namespace maxcoh {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Degenerate denominators (a0 = 0, delta30 = 0, undefined adiabatic branch).
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

// A closed form was asked for a parameter set outside its regime.
class RegimeMismatch : public Error {
 public:
  using Error::Error;
};

// |b1^2 - 1| or |b2^2 - b2crit^2| too small for the elliptic parameterization.
class RegimeBoundary : public Error {
 public:
  using Error::Error;
};

// Integrators, root finders and quadratures that fail to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration input (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxcoh
