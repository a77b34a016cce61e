#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hilltongue {

/// Exact rational number. GMP keeps every result of +, -, *, / in lowest
/// terms with a positive denominator.
using Rational = mpq_class;

/// A truncated power series in q with exact coefficients; index n holds the
/// coefficient of q^n.
using RationalSeries = std::vector<Rational>;

/// p / q in lowest terms. Prefer this to Rational(p, q), which gmpxx does not
/// canonicalize.
Rational ratio(long p, long q);

/// Parses "p", "-p" or "p/q" (optional surrounding whitespace). Throws
/// ValidationError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Fixed 17-significant-digit rendering used by every emitted table.
std::string to_decimal(const Rational& r);
std::string to_decimal(double x);

/// Larger of the numerator and denominator bit lengths.
std::size_t bit_size(const Rational& r);

/// Process-wide bound on coefficient size; exceeding it raises
/// CoefficientOverflow. Default is 1,000,000 bits.
std::size_t coefficient_bit_limit();
void set_coefficient_bit_limit(std::size_t bits);

/// Throws CoefficientOverflow if `r` is larger than the configured limit.
void check_coefficient(const Rational& r);

int sign(const Rational& r);

Rational binomial(unsigned n, unsigned k);
Rational factorial(unsigned n);
Rational pow(const Rational& base, unsigned exponent);

/// Cauchy product truncated at q^order.
RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b,
                          std::size_t order);

/// Multiplicative inverse of a series with a[0] != 0, truncated at q^order.
RationalSeries series_reciprocal(const RationalSeries& a, std::size_t order);

}  // namespace hilltongue
