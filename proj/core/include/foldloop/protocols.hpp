#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "foldloop/circuit.hpp"
#include "foldloop/logical.hpp"
#include "foldloop/surface_code.hpp"

namespace foldloop {

enum class PhaseGate { kS, kSDag };

// Phase gates laid along the crease of a folded patch, one per crease qubit
// (d diagonal data qubits interleaved with d-1 diagonal ancillas).
using Alternation = std::vector<PhaseGate>;

// S, S_DAG, S, ... starting on data (0, 0). Implements logical S.
Alternation canonical_alternation(int distance);
// S_DAG, S, S_DAG, ... Implements logical S_DAG.
Alternation inverted_alternation(int distance);

// Two CNOT layers, crease phase gates, CZ on fold pairs, two CNOT layers, measurement.
// Throws std::invalid_argument for a rotated patch or an alternation of length != 2d-1.
ScheduledCircuit transversal_s_circuit(const PatchSpec& patch, const Alternation& alternation);

// Two CNOT layers, H on data and absorbed ancillas, SWAP on fold pairs, two CNOT layers, measurement.
ScheduledCircuit transversal_h_circuit(const PatchSpec& patch);

enum class TwoQubitGate { kCnot, kSwap };

// Per-loop physical gates between patches i and j of a stack: a pass over the
// layer-0 slots then a pass over the layer-1 slots. Patch p occupies register
// block p. Throws std::invalid_argument when i == j or an index is out of range.
ScheduledCircuit transversal_two_qubit(const LoopEmbedding& stack, int i, int j, TwoQubitGate gate);

enum class STeleportVariant { kYMeasure, kIState };

// Two physical qubits: 0 carries |psi>, 1 is the resource.
// y_measure: reset, CNOT, Y measurement, Z correction on the +1 outcome.
// i_state: prepare |i>, CNOT, H, CNOT; the resource ends in Z|i>.
ScheduledCircuit s_teleport_circuit(STeleportVariant variant);

// Logical version of y_measure on two patches: patch 1 starts in logical |0>,
// transversal CNOT, one check round on both, ideal logical Y measurement of
// patch 1, conditional logical Z on patch 0, one more check round on patch 0.
struct LogicalSTeleport {
  ScheduledCircuit circuit;
  LogicalSpec spec;  // one logical qubit: patch 0
};
LogicalSTeleport s_teleport_logical(const PatchSpec& patch);

// Appends one full check round for a patch placed at `offset`.
int append_check_round(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int step);

// Checks run by `foldloop verify`; each entry names the claim and whether it held.
struct VerifyResult {
  std::string check;
  std::string expected;
  std::string observed;
  bool pass = false;
};
// gate in {S, H, CNOT, SWAP, all}. Uses the dense oracle when the register fits.
std::vector<VerifyResult> verify_protocols(int distance, const std::string& gate, std::uint64_t seed);

}  // namespace foldloop
