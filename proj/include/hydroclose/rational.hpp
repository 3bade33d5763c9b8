#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace hydroclose {

// GMP rationals are kept canonical by every arithmetic operator; values built
// from a raw numerator/denominator pair go through make_rational.
//
// Note: mpq_class uses expression templates, so never bind an arithmetic
// expression to `auto`.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "7", "-7", "7/2", "-7/2" (optional surrounding whitespace).
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Rational binomial(unsigned n, unsigned k);

// x^e for any integer e; throws std::domain_error for 0^(negative).
Rational rpow(const Rational& x, int e);

// Exact k-th root when x is the k-th power of a rational, otherwise empty.
// Negative x is accepted for odd k.
std::optional<Rational> exact_root(const Rational& x, unsigned k);

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hydroclose
