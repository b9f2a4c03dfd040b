#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace operad {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (monomials, elements, presentation files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A mathematical hypothesis required by an operation does not hold
/// (shuffle regularity, symmetric regularity, f'(0) != 0, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// A configured resource limit was reached before the computation finished.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A series is too short for the requested verification to be meaningful.
class InsufficientOrder : public Error {
 public:
  using Error::Error;
};

/// Parses "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q == 1.
std::string format_rational(const Rational& q);

Integer factorial(unsigned n);

}  // namespace operad
