#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace regsimplex {

// Arbitrary-precision rational, always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Parses "p", "p/q", "-p/q". Throws ParseError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Exact rational square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

// Best rational approximation with denominator <= max_den, by continued fractions
// (convergents plus the admissible semiconvergent).
Rational best_rational(double x, std::int64_t max_den);

}  // namespace regsimplex
