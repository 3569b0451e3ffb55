#pragma once

#include <stdexcept>
#include <string>

namespace eliashberg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: non-finite matrix entries, length mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A spectral measure that is not a normalized positive measure.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain (T <= 0, s <= 1, gamma <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge or a closed form left its valid range.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Root finding was handed an interval that does not bracket the target.
class BracketError : public NumericalError {
 public:
  BracketError(const std::string& what, double f_lo, double f_hi)
      : NumericalError(what), f_lo_(f_lo), f_hi_(f_hi) {}

  double f_lo() const noexcept { return f_lo_; }
  double f_hi() const noexcept { return f_hi_; }

 private:
  double f_lo_;
  double f_hi_;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Integrand produced a non-finite value.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double abscissa)
      : NumericalError(what), abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace eliashberg
