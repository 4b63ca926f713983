#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qfrag {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Natural log of a positive big integer, accurate to double precision
/// regardless of magnitude.
double log_of(const BigInt& value);

/// Natural log of a positive rational, computed as log(num) - log(den).
double log_of(const Rational& value);

/// Nearest double to `value`; does not overflow on huge numerators or
/// denominators as long as the quotient itself is representable.
double to_double(const Rational& value);

/// "num/den" with the fraction in lowest terms; integers render as "n/1".
std::string to_fraction_string(const Rational& value);

/// Parses "3/14", "0.01", "1e-2" or "7" into an exact rational.
/// Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

BigInt binomial(unsigned n, unsigned k);

}  // namespace qfrag
