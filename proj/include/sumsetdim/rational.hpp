#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumsetdim {

/// Exact rational; always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Malformed or out-of-range user input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured resource cap was hit; results would be incomplete.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "7", "-3", "8/9" (optionally surrounded by blanks).
/// Throws InputError("zero denominator") or InputError("malformed rational").
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// q^e for e >= 0.
Rational pow(const Rational& q, unsigned e);

}  // namespace sumsetdim
