#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foldloop/expr.hpp"
#include "foldloop/timing.hpp"

namespace foldloop {

enum class CostGate { kCycle, kS, kH, kCnot, kSwap, kSwapMove };
enum class Architecture { kStandard, kPipelinedRotated, kPipelinedFolded, kInterloop };

std::string to_string(CostGate gate);
std::string to_string(Architecture arch);
CostGate parse_cost_gate(const std::string& name);
Architecture parse_architecture(const std::string& name);

// Symbol for T_cyc*(n), e.g. "T_cyc*(16)".
std::string effective_cycle_symbol(int n);
std::string cnot_symbol(int n);

// 27/8·T_loop + 2·T_1q + 4·T_2q + T_meas
LinearExpr cycle_time_expr();
Rational cycle_time(const TimingParams& params);

// ceil_us(max(T_cyc(2), (n/m)·T_meas) + slack), in ns. Throws std::invalid_argument for n < 2.
Rational effective_cycle_time(int n, const TimingParams& params);

// (9/4 - 7/(2n))·T_loop + 2·T_2q. Throws std::invalid_argument for n < 2.
LinearExpr cnot_time_expr(int n);

// 5/4·T_loop + T_2q
LinearExpr swap_time_expr();

// Even n: (n/2 - 3/(2n))·T_loop; odd n: (n/2 - 2/n)·T_loop.
LinearExpr rearrange_worst(int n);

struct GateTime {
  LinearExpr expr;
  SymbolValues values;
  Rational ns{0};

  std::string str() const { return expr.str(values); }
};

// n is the loop occupancy used for T_cyc*(n) and T_CNOT(n); d the code distance.
// Throws UnsupportedCombination when the gate has no cost on that architecture.
GateTime gate_time(CostGate gate, Architecture arch, int n, int d, const TimingParams& params);

// y = per_d·d + constant
struct Affine {
  Rational per_d{0};
  Rational constant{0};

  Rational at(int d) const { return per_d * Rational(d) + constant; }
  std::string str() const;  // "5/108·d + 77/54"
  std::string decimal(int digits = 3) const;  // "0.046·d + 1.426"
};

struct CostEntry {
  std::string gate;  // H, S, CNOT, factory
  Architecture arch = Architecture::kStandard;
  std::string formula;  // table wording, e.g. "3d·T_cyc"
  Affine runtime;       // ns
  Rational space{0};    // unit patch areas
};

struct Saving {
  std::string gate;
  Architecture versus = Architecture::kStandard;
  Affine factor;
};

struct CostReport {
  int distance = 0;
  std::vector<CostEntry> entries;
  std::vector<Saving> savings;

  const CostEntry& entry(const std::string& gate, Architecture arch) const;
  const Saving& saving(const std::string& gate, Architecture versus) const;
  std::string table() const;
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument for even d.
CostReport table1(const TimingParams& params, int d);

}  // namespace foldloop
