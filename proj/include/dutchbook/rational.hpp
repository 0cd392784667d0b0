#ifndef DUTCHBOOK_RATIONAL_HPP
#define DUTCHBOOK_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace dutchbook {

/// Arbitrary-precision integer.  All arithmetic in this library is exact;
/// no operation ever rounds.
using Int = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, kept in lowest terms with the sign on the
/// numerator (the backing type canonicalizes on every operation).
using Rat = boost::multiprecision::cpp_rational;

/// Parse a rational literal.  Three forms are accepted:
///   - integer:   "3", "-2"
///   - fraction:  "3/5", "-7/10"   (denominator must be positive and nonzero)
///   - decimal:   "0.6", "1.25"    (read as an exact base-10 fraction, so
///                                  "0.1" is exactly 1/10, never a binary float)
/// Throws std::invalid_argument on anything else.
Rat parse_rational(const std::string& text);

/// Render in lowest terms: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rat& value);

/// Render a correctly rounded decimal with `digits` places after the point
/// (round half to even).  digits = 0 rounds to an integer.
std::string to_decimal_string(const Rat& value, unsigned digits);

/// x^e with the convention 0^0 = 1.  Exponent is a machine integer because
/// every use in this library has small exponents.
Rat pow_rat(const Rat& base, unsigned long long exponent);

/// Least common multiple of the denominators of `values` (1 for an empty
/// list).  Multiplying each value by it yields integers.
Int common_denominator(const std::vector<Rat>& values);

} // namespace dutchbook

#endif // DUTCHBOOK_RATIONAL_HPP
