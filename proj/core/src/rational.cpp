#include "foldloop/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace foldloop {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t floor(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::int64_t ceil(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

Rational frac(const Rational& r) { return r - Rational(floor(r)); }

Rational circular_distance(const Rational& a, const Rational& b) {
  Rational d = frac(a - b);
  Rational other = Rational(1) - d;
  return d < other ? d : other;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::int64_t mantissa = 0;
  std::int64_t scale = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) scale *= 10;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("not a number: '" + text + "'");
  Rational value(mantissa, scale);
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw std::invalid_argument("not a number: '" + text + "'");
    std::size_t used = 0;
    int exponent = std::stoi(text.substr(i + 1), &used);
    if (i + 1 + used != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    std::int64_t p = 1;
    for (int k = 0; k < std::abs(exponent); ++k) p *= 10;
    value = exponent >= 0 ? value * p : value / p;
  }
  return negative ? -value : value;
}

std::string to_decimal(const Rational& r, int digits) {
  std::int64_t scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  Rational scaled = r * scale;
  std::int64_t rounded = floor(scaled + Rational(1, 2));
  bool negative = rounded < 0;
  std::uint64_t mag = negative ? static_cast<std::uint64_t>(-rounded) : static_cast<std::uint64_t>(rounded);
  std::string whole = std::to_string(mag / static_cast<std::uint64_t>(scale));
  std::string part = std::to_string(mag % static_cast<std::uint64_t>(scale));
  part.insert(0, static_cast<std::size_t>(digits) - part.size(), '0');
  while (!part.empty() && part.back() == '0') part.pop_back();
  std::string out = negative ? "-" + whole : whole;
  if (!part.empty()) out += "." + part;
  return out;
}

}  // namespace foldloop
