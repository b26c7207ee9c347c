#include "foldloop/costs.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "foldloop/errors.hpp"
#include "foldloop/factory.hpp"

namespace foldloop {

namespace {

const Rational kMicro{1000};

Rational ceil_us(const Rational& ns) { return Rational(ceil(ns / kMicro)) * kMicro; }

// Nearest whole microsecond, halves rounded up.
Rational round_us(const Rational& ns) { return Rational(floor(ns / kMicro + Rational(1, 2))) * kMicro; }

std::string us(const Rational& ns) { return to_decimal(ns / kMicro, 4) + " us"; }

nlohmann::json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_double(r)}}; }

}  // namespace

std::string to_string(CostGate gate) {
  switch (gate) {
    case CostGate::kCycle: return "cycle";
    case CostGate::kS: return "S";
    case CostGate::kH: return "H";
    case CostGate::kCnot: return "CNOT";
    case CostGate::kSwap: return "SWAP";
    case CostGate::kSwapMove: return "SWAP_MOVE";
  }
  return "?";
}

std::string to_string(Architecture arch) {
  switch (arch) {
    case Architecture::kStandard: return "standard";
    case Architecture::kPipelinedRotated: return "pipelined_rotated";
    case Architecture::kPipelinedFolded: return "pipelined_folded";
    case Architecture::kInterloop: return "interloop";
  }
  return "?";
}

CostGate parse_cost_gate(const std::string& name) {
  for (CostGate g : {CostGate::kCycle, CostGate::kS, CostGate::kH, CostGate::kCnot, CostGate::kSwap, CostGate::kSwapMove})
    if (to_string(g) == name) return g;
  throw std::invalid_argument("unknown gate: " + name);
}

Architecture parse_architecture(const std::string& name) {
  for (Architecture a : {Architecture::kStandard, Architecture::kPipelinedRotated, Architecture::kPipelinedFolded,
                         Architecture::kInterloop})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown architecture: " + name);
}

std::string effective_cycle_symbol(int n) { return "T_cyc*(" + std::to_string(n) + ")"; }
std::string cnot_symbol(int n) { return "T_CNOT(" + std::to_string(n) + ")"; }

LinearExpr cycle_time_expr() {
  return LinearExpr::symbol("T_loop", Rational(27, 8)) + LinearExpr::symbol("T_1q", Rational(2)) +
         LinearExpr::symbol("T_2q", Rational(4)) + LinearExpr::symbol("T_meas");
}

Rational cycle_time(const TimingParams& params) { return cycle_time_expr().evaluate(symbol_values(params)); }

Rational effective_cycle_time(int n, const TimingParams& params) {
  if (n < 2) throw std::invalid_argument("effective cycle time needs n >= 2");
  Rational load = Rational(n, params.meas_devices) * params.t_meas;
  return ceil_us(std::max(cycle_time(params), load) + params.slack);
}

LinearExpr cnot_time_expr(int n) {
  if (n < 2) throw std::invalid_argument("CNOT time needs n >= 2");
  return LinearExpr::symbol("T_loop", Rational(9, 4) - Rational(7, 2 * n)) + LinearExpr::symbol("T_2q", Rational(2));
}

LinearExpr swap_time_expr() { return LinearExpr::symbol("T_loop", Rational(5, 4)) + LinearExpr::symbol("T_2q"); }

LinearExpr rearrange_worst(int n) {
  if (n < 2) throw std::invalid_argument("rearrangement needs n >= 2");
  Rational k = n % 2 == 0 ? Rational(n, 2) - Rational(3, 2 * n) : Rational(n, 2) - Rational(2, n);
  return LinearExpr::symbol("T_loop", k);
}

GateTime gate_time(CostGate gate, Architecture arch, int n, int d, const TimingParams& params) {
  params.validate();
  if (d < 1) throw std::invalid_argument("distance must be positive");
  GateTime out;
  out.values = symbol_values(params);
  const Rational dd(d);
  auto unsupported = [&]() {
    return UnsupportedCombination(to_string(gate) + " has no cost on the " + to_string(arch) + " architecture");
  };
  auto tstar = [&]() {
    std::string sym = effective_cycle_symbol(n);
    out.values[sym] = effective_cycle_time(n, params);
    return LinearExpr::symbol(sym);
  };
  auto tstd = [&]() {
    out.values["T_cyc"] = params.standard_cycle;
    return LinearExpr::symbol("T_cyc");
  };

  switch (arch) {
    case Architecture::kPipelinedFolded:
      switch (gate) {
        case CostGate::kCycle: out.expr = tstar(); break;
        case CostGate::kS: out.expr = tstar() + LinearExpr::symbol("T_loop", Rational(5, 4)) + LinearExpr::symbol("T_2q"); break;
        case CostGate::kH:
          out.expr = tstar() + LinearExpr::symbol("T_loop", Rational(5, 4)) + LinearExpr::symbol("T_2q") +
                     LinearExpr::symbol("T_1q");
          break;
        case CostGate::kCnot:
        case CostGate::kSwap: out.expr = cnot_time_expr(n); break;
        default: throw unsupported();
      }
      break;
    case Architecture::kPipelinedRotated:
      switch (gate) {
        case CostGate::kCycle: out.expr = tstar(); break;
        case CostGate::kS: out.expr = Rational(3, 2) * dd * tstar(); break;
        case CostGate::kH: out.expr = Rational(3) * dd * tstar(); break;
        case CostGate::kCnot:
        case CostGate::kSwap: out.expr = cnot_time_expr(n); break;
        default: throw unsupported();
      }
      break;
    case Architecture::kStandard:
      switch (gate) {
        case CostGate::kCycle: out.expr = tstd(); break;
        case CostGate::kS: out.expr = Rational(3, 2) * dd * tstd(); break;
        case CostGate::kH: out.expr = Rational(3) * dd * tstd(); break;
        case CostGate::kCnot: out.expr = Rational(2) * dd * tstd(); break;
        case CostGate::kSwap: out.expr = Rational(6) * dd * tstd(); break;
        case CostGate::kSwapMove: out.expr = Rational(2) * dd * tstd(); break;
      }
      break;
    case Architecture::kInterloop:
      switch (gate) {
        case CostGate::kH: out.expr = LinearExpr::symbol("T_int", dd - 1); break;
        case CostGate::kSwap: out.expr = LinearExpr::symbol("T_int", dd); break;
        case CostGate::kCnot: out.expr = LinearExpr::symbol("T_int", 2 * dd); break;
        case CostGate::kS:
          // |i> teleportation: two transversal CNOTs around a shuttled H.
          out.expr = LinearExpr::symbol("T_int", dd - 1) + Rational(2) * cnot_time_expr(n);
          break;
        default: throw unsupported();
      }
      break;
  }
  out.ns = out.expr.evaluate(out.values);
  return out;
}

std::string Affine::str() const {
  std::string out;
  if (per_d != 0) out = (per_d == 1 ? std::string() : to_string(per_d) + "\xC2\xB7") + "d";
  if (constant != 0 || out.empty()) {
    if (out.empty())
      out = to_string(constant);
    else
      out += (constant < 0 ? " - " : " + ") + to_string(constant < 0 ? -constant : constant);
  }
  return out;
}

std::string Affine::decimal(int digits) const {
  std::string out;
  if (per_d != 0) out = to_decimal(per_d, digits) + "\xC2\xB7" + "d";
  if (constant != 0 || out.empty()) {
    if (out.empty())
      out = to_decimal(constant, digits);
    else
      out += (constant < 0 ? " - " : " + ") + to_decimal(constant < 0 ? -constant : constant, digits);
  }
  return out;
}

const CostEntry& CostReport::entry(const std::string& gate, Architecture arch) const {
  for (const auto& e : entries)
    if (e.gate == gate && e.arch == arch) return e;
  throw std::out_of_range("no entry for " + gate + " on " + to_string(arch));
}

const Saving& CostReport::saving(const std::string& gate, Architecture versus) const {
  for (const auto& s : savings)
    if (s.gate == gate && s.versus == versus) return s;
  throw std::out_of_range("no saving for " + gate + " against " + to_string(versus));
}

CostReport table1(const TimingParams& params, int d) {
  params.validate();
  if (d < 1 || d % 2 == 0) throw std::invalid_argument("table1 needs an odd distance");
  CostReport r;
  r.distance = d;
  const Rational tc = params.standard_cycle;
  const Rational cnot_rot = round_us(cnot_time_expr(12).evaluate(symbol_values(params)));
  const Rational cnot_fold = round_us(cnot_time_expr(16).evaluate(symbol_values(params)));

  auto factory_cell = [&](FactoryVariant v) {
    FactoryForm f = factory_form(v, params, d);
    Rational tstar = effective_cycle_time(f.loop_occupancy, params);
    Rational extra = ceil_us(f.constant_ns);
    std::ostringstream formula;
    std::string coeff = f.t_star_per_d == 0 ? to_string(f.t_star_const)
                                            : "(" + Affine{f.t_star_per_d, f.t_star_const}.str() + ")";
    formula << coeff << "\xC2\xB7" << effective_cycle_symbol(f.loop_occupancy) << " + " << to_string(extra / kMicro)
            << " us";
    return std::make_pair(Affine{f.t_star_per_d * tstar, f.t_star_const * tstar + extra}, formula.str());
  };
  auto [rot_factory, rot_formula] = factory_cell(FactoryVariant::kRotated);
  auto [fold_factory, fold_formula] = factory_cell(FactoryVariant::kFolded);

  using A = Architecture;
  r.entries = {
      {"H", A::kStandard, "3d\xC2\xB7T_cyc", {3 * tc, 0}, Rational(2)},
      {"S", A::kStandard, "1.5d\xC2\xB7T_cyc", {Rational(3, 2) * tc, 0}, Rational(2)},
      {"CNOT", A::kStandard, "2d\xC2\xB7T_cyc", {2 * tc, 0}, Rational(3)},
      {"factory", A::kStandard, "5d\xC2\xB7T_cyc", {5 * tc, 0}, Rational(12)},
      {"H", A::kPipelinedRotated, "3d\xC2\xB7T_cyc", {3 * tc, 0}, Rational(2)},
      {"S", A::kPipelinedRotated, "1.5d\xC2\xB7T_cyc", {Rational(3, 2) * tc, 0}, Rational(1)},
      {"CNOT", A::kPipelinedRotated, "~" + cnot_symbol(12), {0, cnot_rot}, Rational(1)},
      {"factory", A::kPipelinedRotated, rot_formula, rot_factory, Rational(1)},
      {"H", A::kPipelinedFolded, "~T_cyc", {0, tc}, Rational(1, 2)},
      {"S", A::kPipelinedFolded, "~T_cyc", {0, tc}, Rational(1, 2)},
      {"CNOT", A::kPipelinedFolded, "~" + cnot_symbol(16), {0, cnot_fold}, Rational(1, 2)},
      {"factory", A::kPipelinedFolded, fold_formula, fold_factory, Rational(1, 2)},
  };
  for (const char* gate : {"H", "S", "CNOT", "factory"}) {
    const CostEntry& f = r.entry(gate, A::kPipelinedFolded);
    if (f.runtime.per_d != 0) throw std::logic_error("folded runtime should not grow with d");
    Rational denom = f.runtime.constant * f.space;
    for (A other : {A::kStandard, A::kPipelinedRotated}) {
      const CostEntry& o = r.entry(gate, other);
      r.savings.push_back({gate, other, {o.runtime.per_d * o.space / denom, o.runtime.constant * o.space / denom}});
    }
  }
  return r;
}

std::string CostReport::table() const {
  std::ostringstream out;
  const std::vector<std::string> gates = {"H", "S", "CNOT", "factory"};
  const std::vector<Architecture> archs = {Architecture::kStandard, Architecture::kPipelinedRotated,
                                           Architecture::kPipelinedFolded};
  auto pad = [](const std::string& s, std::size_t width) {
    // Display width counts code points, not bytes.
    std::size_t shown = static_cast<std::size_t>(
        std::count_if(s.begin(), s.end(), [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; }));
    return s + std::string(shown < width ? width - shown : 1, ' ');
  };
  auto row = [&](const std::string& a, const std::string& b, const std::vector<std::string>& cells) {
    std::string line = pad(a, 9) + pad(b, 24);
    for (std::size_t k = 0; k < cells.size(); ++k) line += k + 1 < cells.size() ? pad(cells[k], 38) : cells[k];
    out << line << "\n";
  };
  row("", "d = " + std::to_string(distance), gates);
  for (Architecture a : archs) {
    std::vector<std::string> cells;
    for (const auto& g : gates) {
      const CostEntry& e = entry(g, a);
      cells.push_back(e.formula + " = " + us(e.runtime.at(distance)));
    }
    row("runtime", to_string(a), cells);
  }
  for (Architecture a : archs) {
    std::vector<std::string> cells;
    for (const auto& g : gates) cells.push_back(to_decimal(entry(g, a).space));
    row("space", to_string(a), cells);
  }
  for (Architecture a : {Architecture::kStandard, Architecture::kPipelinedRotated}) {
    std::vector<std::string> cells;
    for (const auto& g : gates) {
      const Affine& f = saving(g, a).factor;
      cells.push_back(f.decimal() + " = " + to_decimal(f.at(distance), 3));
    }
    row("saving", "vs " + to_string(a), cells);
  }
  return out.str();
}

nlohmann::json CostReport::to_json() const {
  nlohmann::json doc;
  doc["distance"] = distance;
  for (const auto& e : entries) {
    doc["entries"].push_back({{"gate", e.gate},
                              {"architecture", to_string(e.arch)},
                              {"formula", e.formula},
                              {"runtime_ns", rational_json(e.runtime.at(distance))},
                              {"runtime_per_d_ns", rational_json(e.runtime.per_d)},
                              {"runtime_constant_ns", rational_json(e.runtime.constant)},
                              {"space", rational_json(e.space)},
                              {"spacetime", rational_json(e.runtime.at(distance) * e.space)}});
  }
  for (const auto& s : savings) {
    doc["savings"].push_back({{"gate", s.gate},
                              {"versus", to_string(s.versus)},
                              {"formula", s.factor.str()},
                              {"formula_decimal", s.factor.decimal()},
                              {"value", rational_json(s.factor.at(distance))}});
  }
  return doc;
}

}  // namespace foldloop
