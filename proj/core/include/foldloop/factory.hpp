#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "foldloop/circuit.hpp"
#include "foldloop/expr.hpp"
#include "foldloop/loopsim.hpp"
#include "foldloop/timing.hpp"

namespace foldloop {

enum class FactoryVariant { kFolded, kRotated };

std::string to_string(FactoryVariant variant);
FactoryVariant parse_factory_variant(const std::string& name);

// Logical-level 8T-to-CCZ circuit. Conditions index the measurement record in
// slice order. Outputs: CCZ on q0..q2, q3 post-selected on <+|.
struct FactoryCircuit {
  FactoryVariant variant = FactoryVariant::kFolded;
  std::size_t logical_qubits = 0;
  std::vector<std::uint32_t> t_inputs;
  std::vector<std::uint32_t> zero_inputs;
  std::vector<std::vector<Op>> slices;  // one check round after each
  std::vector<Op> final_layer;          // Pauli frame, no check round

  std::size_t count(Gate g) const;
  std::size_t num_measurements() const;
  // Preparation at time 0, slice k at time k, final layer after the last slice.
  // T inputs are prepared as H then T on |0>; zero inputs as R.
  ScheduledCircuit circuit(bool t_inputs_as_t = true) const;
  // Throws std::logic_error if a slice reuses a qubit or a condition points forward.
  void validate() const;
};

FactoryCircuit ccz_factory_spec(FactoryVariant variant);

struct FactoryVerification {
  bool pass = false;
  std::size_t branches = 0;          // measurement records enumerated
  double min_fidelity = 1.0;
  double min_postselection = 1.0;    // probability of <+| on q3, worst branch
  std::vector<bool> worst_record;
  std::string message;
};

// Dense brute force over every measurement record. With t_inputs = false the
// inputs are left in |0>, which cannot distill.
FactoryVerification verify_factory(const FactoryCircuit& circuit, bool t_inputs = true, double tolerance = 1e-9);

// round(num_states * 3e4 / (num_qubits * 2 * (d + 1)^2)), halves up.
// Throws std::invalid_argument for any target other than 1e-7.
int cultivation_cycles(double p_target, int d, int num_states, int num_qubits);

// runtime = (t_star_per_d * d + t_star_const) * T_cyc*(n) + constant_ns
struct FactoryForm {
  int loop_occupancy = 0;
  Rational t_star_per_d{0};
  Rational t_star_const{0};
  Rational constant_ns{0};
};
FactoryForm factory_form(FactoryVariant variant, const TimingParams& params, int d);

struct FactoryReport {
  FactoryVariant variant = FactoryVariant::kFolded;
  int distance = 0;
  int loop_occupancy = 0;
  int cultivation_cycles = 0;
  LinearExpr runtime_expr;  // in T_cul, T_CNOT(n), T_cyc*(n), T_meas, T_S / T_cyc*(n)
  LinearExpr expanded;      // in T_cyc*(n), T_loop, T_1q, T_2q, T_meas
  SymbolValues values;
  Rational runtime{0};      // ns
  Rational space{0};
  Rational spacetime{0};
  Rational output_error{0};
  FactoryForm form;
  TimedSchedule timeline;   // serial per-port schedule

  std::string summary() const;
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument for even d.
FactoryReport factory_runtime(FactoryVariant variant, const TimingParams& params, int d);

}  // namespace foldloop
