#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibera {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an operation does not hold
/// (not a complete intersection at infinity, non-isolated singularity, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an algorithm that cannot fail on valid input fails anyway.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// "a" or "a/b" in lowest terms.
std::string to_string(const Rational& r);

/// Accepts "a", "-a", "a/b". Throws Error on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace fibera
