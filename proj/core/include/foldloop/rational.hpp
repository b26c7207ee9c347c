#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace boost {

// Boost's mixed rational/integer equality recurses forever under C++20's
// reversed-operator rewriting when the integer type differs from the value
// type. Exact-match non-templates win overload resolution.
inline bool operator==(const rational<std::int64_t>& a, int b) {
  return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);
}

}  // namespace boost

namespace foldloop {

using Rational = boost::rational<std::int64_t>;

// "p/q" or "p" when q == 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

std::int64_t floor(const Rational& r);
std::int64_t ceil(const Rational& r);

// r mod 1, in [0, 1).
Rational frac(const Rational& r);

// Shortest distance between two positions on a unit circle.
Rational circular_distance(const Rational& a, const Rational& b);

// Parses "3", "-7/8", "0.125", "1e3" exactly. Decimals must terminate.
Rational parse_rational(const std::string& text);

// Decimal rendering with up to `digits` fractional digits, trailing zeros trimmed.
std::string to_decimal(const Rational& r, int digits = 6);

}  // namespace foldloop
