#pragma once

#include <stdexcept>
#include <string>

namespace robba {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result coefficient would depend on coefficients outside the available windows.
class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

/// A coefficient is not known to the precision the caller asked for.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

/// Inputs disagree on p, q, ring, rank or shape.
class Mismatch : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace robba
