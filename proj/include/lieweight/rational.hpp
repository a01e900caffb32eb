#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lieweight {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q" and "-p/q" with decimal integers.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned k);

}  // namespace lieweight
