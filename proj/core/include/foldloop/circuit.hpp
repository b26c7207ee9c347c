#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "foldloop/rational.hpp"

namespace foldloop {

enum class Gate {
  kH,
  kS,
  kSDag,
  kX,
  kY,
  kZ,
  kT,
  kTDag,
  kCnot,
  kCz,
  kSwap,
  kReset,    // prepare |0>
  kMeasure,  // Z basis, appends one record bit
  kMeasureY, // Y basis, appends one record bit
  kMeasurePauli,  // one Pauli product over all targets, appends one record bit
};

const char* gate_name(Gate g);
Gate gate_from_name(const std::string& name);
std::size_t gate_arity(Gate g);
bool is_measurement(Gate g);
bool is_clifford(Gate g);

// Classical control: the op fires only when every listed record bit matches.
struct Condition {
  std::size_t record = 0;
  bool value = true;
  bool operator==(const Condition&) const = default;
};

struct Op {
  Gate gate = Gate::kH;
  std::vector<std::uint32_t> targets;  // pairs for two-qubit gates
  Rational time{0};
  std::vector<Condition> conditions;
  std::string paulis;  // kMeasurePauli only: one of X/Y/Z per target
  bool operator==(const Op&) const = default;
};

// Time-stamped gate list. Measurements append to a record in op order.
class ScheduledCircuit {
 public:
  ScheduledCircuit() = default;
  explicit ScheduledCircuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  void set_num_qubits(std::size_t n) { num_qubits_ = n; }
  const std::vector<Op>& ops() const { return ops_; }
  std::size_t num_measurements() const { return num_measurements_; }

  // Returns the record index of the first measurement appended, if any.
  std::size_t append(Gate g, std::vector<std::uint32_t> targets, Rational time = Rational(0),
                     std::vector<Condition> conditions = {});
  std::size_t append_pauli_measurement(const std::string& paulis, std::vector<std::uint32_t> targets,
                                       Rational time = Rational(0));
  void append_circuit(const ScheduledCircuit& other, Rational time_offset = Rational(0));

  std::size_t count(Gate g) const;
  Rational makespan() const;

  // One op per line: "<time> <GATE> t0 t1 ... [if m3=1 m4=0]"; products as "MPP X0 Y3".
  void dump(std::ostream& out) const;
  std::string str() const;
  static ScheduledCircuit parse(std::istream& in);

 private:
  std::size_t num_qubits_ = 0;
  std::size_t num_measurements_ = 0;
  std::vector<Op> ops_;
};

}  // namespace foldloop
