#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foldloop/circuit.hpp"
#include "foldloop/dense.hpp"
#include "foldloop/pauli.hpp"
#include "foldloop/surface_code.hpp"

namespace foldloop {

// Encoded input for a logical-action check.
struct LogicalSpec {
  std::size_t width = 0;                        // physical register size
  std::vector<PauliString> input_stabilizers;   // fixed +1 before the circuit
  std::vector<PauliString> output_stabilizers;  // must be +1 after the circuit
  std::vector<PauliString> logical_x;           // one per logical qubit
  std::vector<PauliString> logical_z;
  std::set<std::size_t> free_records;  // measurements allowed to be random

  std::size_t num_logical() const { return logical_x.size(); }
  // Physical operator for a Pauli over the logical qubits, Y read as i*X*Z.
  PauliString lift(const PauliString& logical) const;
};

// One patch per block, blocks laid out back to back; ancillas start in |0>.
LogicalSpec stack_spec(const std::vector<PatchSpec>& patches);

struct LogicalAction {
  std::vector<PauliString> x_images;  // over the logical qubits
  std::vector<PauliString> z_images;
  std::string name;  // "I", "S", "H", "CNOT(0->1)", ... or "unknown"
  std::vector<bool> record;

  // Same images up to signs, i.e. equal up to a Pauli frame.
  bool same_up_to_pauli(const LogicalAction& other) const;
};

// Runs the circuit on a Choi state of the code against reference qubits and
// reads off the induced logical Clifford. Throws CodespaceViolation if a
// syndrome is random or flipped, an output stabilizer is lost, or a logical
// image is not a logical operator.
LogicalAction logical_action(const ScheduledCircuit& circuit, const LogicalSpec& spec, std::uint64_t seed = 0);

// Names a logical Clifford from its Pauli images.
std::string clifford_name(const std::vector<PauliString>& x_images, const std::vector<PauliString>& z_images);
// Images of a named gate on k logical qubits.
std::pair<std::vector<PauliString>, std::vector<PauliString>> clifford_images(const std::string& name, std::size_t k);

// Named logical gate as a sum of logical Paulis: S, S_DAG, H, X, Y, Z, I, CNOT(0->1), SWAP.
std::vector<std::pair<Amplitude, PauliString>> logical_pauli_sum(const std::string& name, std::size_t k);

struct DenseCheck {
  double fidelity = 0;              // against the expected logical action, phase-free
  double min_record_probability = 1;  // smallest probability of a deterministic record
};

// Statevector oracle for register width + logical count <= 20 qubits.
DenseCheck dense_logical_check(const ScheduledCircuit& circuit, const LogicalSpec& spec, const std::string& expected,
                               std::uint64_t seed = 0);

}  // namespace foldloop
