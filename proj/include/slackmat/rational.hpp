#pragma once

#include <gmpxx.h>

#include <string>

namespace slackmat {

// All matrix entries are exact rationals. GMP keeps them canonical
// (gcd-reduced, positive denominator) after every operation.
using Rational = mpq_class;

// Accepts "p" or "p/q" with optional leading '-'; q must be positive.
// Throws std::invalid_argument on malformed tokens.
Rational parse_rational(const std::string& tok);

// Emits "p" when the denominator is 1, else "p/q", gcd-reduced.
std::string format_rational(const Rational& v);

inline bool is_zero_one(const Rational& v) { return v == 0 || v == 1; }

}  // namespace slackmat
