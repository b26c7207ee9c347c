#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "foldloop/rational.hpp"
#include "foldloop/timing.hpp"

namespace foldloop {

using SymbolValues = std::map<std::string, Rational>;

// Sum of rational multiples of named times plus a constant in ns.
class LinearExpr {
 public:
  LinearExpr() = default;
  static LinearExpr constant(const Rational& ns);
  static LinearExpr symbol(const std::string& name, const Rational& coefficient = Rational(1));

  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator-=(const LinearExpr& other);
  LinearExpr& operator*=(const Rational& k);
  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(const Rational& k, LinearExpr a) { return a *= k; }
  bool operator==(const LinearExpr& other) const = default;

  Rational coefficient(const std::string& name) const;
  const Rational& constant_term() const { return constant_; }
  // Terms in rendering order, zero coefficients dropped.
  std::vector<std::pair<std::string, Rational>> terms() const;

  // Throws std::invalid_argument when a symbol has no value.
  Rational evaluate(const SymbolValues& values) const;
  // Replaces a symbol by an expression.
  LinearExpr substitute(const std::string& name, const LinearExpr& value) const;

  // "27/8·T_loop + 2·T_1q + 4·T_2q + T_meas", constants as "12 ns".
  std::string str() const;
  // "<str> = <value> ns"
  std::string str(const SymbolValues& values) const;
  // Inverse of str(); accepts "·" or "*" between coefficient and symbol.
  static LinearExpr parse(const std::string& text);

 private:
  std::map<std::string, Rational> terms_;
  Rational constant_{0};
};

// T_loop, T_1q, T_2q, T_meas, T_int in ns.
SymbolValues symbol_values(const TimingParams& params);

// "3150 ns" or "3037/3 ns (1012.333333)".
std::string format_ns(const Rational& ns);

}  // namespace foldloop
