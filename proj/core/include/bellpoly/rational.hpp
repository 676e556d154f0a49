#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <string>

namespace bellpoly {

// Arbitrary-precision rational, used wherever the library promises exact
// arithmetic (laboratory records, exact polytope membership).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

double to_double(const Rational& r);

/// Parses "3/8", "-2", or a plain decimal like "0.375".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

/// Least common multiple of the denominators, as a big integer.
BigInt denominator_lcm(std::span<const Rational> values);

}  // namespace bellpoly
