#include "foldloop/expr.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace foldloop {

namespace {

const std::vector<std::string>& symbol_order() {
  static const std::vector<std::string> order = {"T_cul", "T_cyc", "T_S", "T_H", "T_CNOT", "T_loop",
                                                 "T_1q", "T_2q", "T_meas", "T_int"};
  return order;
}

// Known base symbols first, in the order above; anything else alphabetically.
std::pair<std::size_t, std::string> sort_key(const std::string& name) {
  const auto& order = symbol_order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string& base = order[i];
    if (name == base || (name.rfind(base, 0) == 0 && (name[base.size()] == '*' || name[base.size()] == '(')))
      return {i, name};
  }
  return {order.size(), name};
}

const std::string kDot = "\xC2\xB7";

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

LinearExpr LinearExpr::constant(const Rational& ns) {
  LinearExpr e;
  e.constant_ = ns;
  return e;
}

LinearExpr LinearExpr::symbol(const std::string& name, const Rational& coefficient) {
  if (name.empty()) throw std::invalid_argument("empty symbol name");
  LinearExpr e;
  if (coefficient != 0) e.terms_[name] = coefficient;
  return e;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  for (const auto& [name, k] : other.terms_) {
    Rational& slot = terms_[name];
    slot += k;
    if (slot == 0) terms_.erase(name);
  }
  constant_ += other.constant_;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& other) { return *this += Rational(-1) * other; }

LinearExpr& LinearExpr::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [name, c] : terms_) c *= k;
  constant_ *= k;
  return *this;
}

Rational LinearExpr::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<std::string, Rational>> LinearExpr::terms() const {
  std::vector<std::pair<std::string, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return sort_key(a.first) < sort_key(b.first); });
  return out;
}

Rational LinearExpr::evaluate(const SymbolValues& values) const {
  Rational total = constant_;
  for (const auto& [name, k] : terms_) {
    auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("no value for symbol " + name);
    total += k * it->second;
  }
  return total;
}

LinearExpr LinearExpr::substitute(const std::string& name, const LinearExpr& value) const {
  LinearExpr out = *this;
  Rational k = out.coefficient(name);
  if (k == 0) return out;
  out.terms_.erase(name);
  return out + k * value;
}

std::string LinearExpr::str() const {
  std::string out;
  auto append = [&](Rational k, const std::string& body) {
    bool negative = k < 0;
    if (negative) k = -k;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += body.empty() ? to_string(k) + " ns" : (k == 1 ? body : to_string(k) + kDot + body);
  };
  for (const auto& [name, k] : terms()) append(k, name);
  if (constant_ != 0 || out.empty()) append(constant_, "");
  return out;
}

std::string LinearExpr::str(const SymbolValues& values) const {
  return str() + " = " + format_ns(evaluate(values));
}

LinearExpr LinearExpr::parse(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty expression");
  LinearExpr out;
  std::size_t i = 0;
  int sign = 1;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -sign;
      ++i;
      continue;
    }
    // A term runs until the next " + " or " - ".
    std::size_t j = i;
    while (j < s.size() && !(j > i && (s[j] == '+' || s[j] == '-') && s[j - 1] == ' ')) ++j;
    std::string term = trim(s.substr(i, j - i));
    i = j;
    std::size_t dot = term.find(kDot);
    std::size_t star = term.find('*');
    bool numeric = std::isdigit(static_cast<unsigned char>(term[0])) || term[0] == '.';
    if (numeric && dot != std::string::npos) {
      out += symbol(trim(term.substr(dot + kDot.size())), Rational(sign) * parse_rational(trim(term.substr(0, dot))));
    } else if (numeric && star != std::string::npos) {
      out += symbol(trim(term.substr(star + 1)), Rational(sign) * parse_rational(trim(term.substr(0, star))));
    } else if (numeric) {
      std::string num = term;
      if (num.size() > 2 && num.compare(num.size() - 2, 2, "ns") == 0) num = trim(num.substr(0, num.size() - 2));
      out.constant_ += Rational(sign) * parse_rational(num);
    } else {
      out += symbol(term, Rational(sign));
    }
    sign = 1;
  }
  return out;
}

SymbolValues symbol_values(const TimingParams& params) {
  return {{"T_loop", params.t_loop},
          {"T_1q", params.t_1q},
          {"T_2q", params.t_2q},
          {"T_meas", params.t_meas},
          {"T_int", params.t_int}};
}

std::string format_ns(const Rational& ns) {
  if (ns.denominator() == 1) return to_string(ns) + " ns";
  return to_string(ns) + " ns (" + to_decimal(ns) + ")";
}

}  // namespace foldloop
