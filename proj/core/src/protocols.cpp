#include "foldloop/protocols.hpp"

#include <stdexcept>

#include "foldloop/errors.hpp"

namespace foldloop {

namespace {

void require_folded(const PatchSpec& patch) {
  if (patch.kind != PatchKind::kFolded) throw std::invalid_argument("protocol needs a folded patch");
}

std::vector<std::uint32_t> flatten(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::uint32_t> out;
  for (auto [a, b] : pairs) {
    out.push_back(static_cast<std::uint32_t>(a));
    out.push_back(static_cast<std::uint32_t>(b));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> fold_pairs(const PatchSpec& patch) {
  auto pairs = patch.data_fold_pairs();
  for (auto p : patch.ancilla_fold_pairs()) pairs.push_back(p);
  return pairs;
}

Alternation alternating(int distance, PhaseGate first) {
  if (distance < 3 || distance % 2 == 0) throw std::invalid_argument("distance must be odd and at least 3");
  Alternation a;
  PhaseGate g = first;
  for (int k = 0; k < 2 * distance - 1; ++k) {
    a.push_back(g);
    g = g == PhaseGate::kS ? PhaseGate::kSDag : PhaseGate::kS;
  }
  return a;
}

}  // namespace

Alternation canonical_alternation(int distance) { return alternating(distance, PhaseGate::kS); }
Alternation inverted_alternation(int distance) { return alternating(distance, PhaseGate::kSDag); }

ScheduledCircuit transversal_s_circuit(const PatchSpec& patch, const Alternation& alternation) {
  require_folded(patch);
  auto crease = patch.crease_qubits();
  if (alternation.size() != crease.size())
    throw std::invalid_argument("alternation must have one entry per crease qubit (" + std::to_string(crease.size()) +
                                "), got " + std::to_string(alternation.size()));
  ScheduledCircuit c(patch.num_qubits());
  int step = append_check_prefix(c, patch, 0, 0);
  step = append_check_layers(c, patch, 0, 0, 1, step);
  std::vector<std::uint32_t> s, s_dag;
  for (std::size_t k = 0; k < crease.size(); ++k)
    (alternation[k] == PhaseGate::kS ? s : s_dag).push_back(static_cast<std::uint32_t>(crease[k]));
  if (!s.empty()) c.append(Gate::kS, s, Rational(step));
  if (!s_dag.empty()) c.append(Gate::kSDag, s_dag, Rational(step));
  c.append(Gate::kCz, flatten(fold_pairs(patch)), Rational(step));
  step = append_check_layers(c, patch, 0, 2, 3, step + 1);
  append_check_suffix(c, patch, 0, step);
  return c;
}

ScheduledCircuit transversal_h_circuit(const PatchSpec& patch) {
  require_folded(patch);
  ScheduledCircuit c(patch.num_qubits());
  int step = append_check_prefix(c, patch, 0, 0);
  step = append_check_layers(c, patch, 0, 0, 1, step);
  std::vector<std::uint32_t> h;
  for (std::size_t q = 0; q < patch.num_data(); ++q) h.push_back(static_cast<std::uint32_t>(q));
  for (const auto& pl : patch.plaquettes)
    if (!pl.boundary) h.push_back(static_cast<std::uint32_t>(pl.ancilla));
  c.append(Gate::kH, h, Rational(step));
  c.append(Gate::kSwap, flatten(fold_pairs(patch)), Rational(step + 1));
  step = append_check_layers(c, patch, 0, 2, 3, step + 2);
  append_check_suffix(c, patch, 0, step);
  return c;
}

ScheduledCircuit transversal_two_qubit(const LoopEmbedding& stack, int i, int j, TwoQubitGate gate) {
  if (i == j) throw std::invalid_argument("transversal two-qubit gate needs two distinct patches");
  if (i < 0 || j < 0 || i >= stack.num_patches || j >= stack.num_patches)
    throw std::invalid_argument("patch index outside the stack");
  const std::size_t block = 2 * static_cast<std::size_t>(stack.distance * stack.distance) - 1;
  ScheduledCircuit c(block * static_cast<std::size_t>(stack.num_patches));
  Gate g = gate == TwoQubitGate::kCnot ? Gate::kCnot : Gate::kSwap;
  for (int layer = 0; layer < 2; ++layer) {
    std::vector<std::uint32_t> targets;
    for (const auto& loop : stack.loops) {
      if (loop.role != LoopRole::kData) continue;
      const LoopSlot* a = nullptr;
      const LoopSlot* b = nullptr;
      for (const auto& s : loop.slots) {
        if (s.layer != layer) continue;
        if (s.patch == i) a = &s;
        if (s.patch == j) b = &s;
      }
      if (a == nullptr || b == nullptr) continue;
      targets.push_back(static_cast<std::uint32_t>(block * static_cast<std::size_t>(i) + a->qubit));
      targets.push_back(static_cast<std::uint32_t>(block * static_cast<std::size_t>(j) + b->qubit));
    }
    if (!targets.empty()) c.append(g, targets, Rational(layer));
  }
  return c;
}

ScheduledCircuit s_teleport_circuit(STeleportVariant variant) {
  ScheduledCircuit c(2);
  if (variant == STeleportVariant::kYMeasure) {
    c.append(Gate::kReset, {1}, Rational(0));
    c.append(Gate::kCnot, {0, 1}, Rational(1));
    std::size_t m = c.append(Gate::kMeasureY, {1}, Rational(2));
    c.append(Gate::kZ, {0}, Rational(3), {Condition{m, false}});
  } else {
    c.append(Gate::kReset, {1}, Rational(0));
    c.append(Gate::kH, {1}, Rational(1));
    c.append(Gate::kS, {1}, Rational(2));
    c.append(Gate::kCnot, {0, 1}, Rational(3));
    c.append(Gate::kH, {1}, Rational(4));
    c.append(Gate::kCnot, {0, 1}, Rational(5));
  }
  return c;
}

int append_check_round(ScheduledCircuit& c, const PatchSpec& patch, std::size_t offset, int step) {
  step = append_check_prefix(c, patch, offset, step);
  step = append_check_layers(c, patch, offset, 0, 3, step);
  return append_check_suffix(c, patch, offset, step);
}

LogicalSTeleport s_teleport_logical(const PatchSpec& patch) {
  LogicalSpec pair = stack_spec({patch, patch});
  const std::size_t block = patch.num_qubits();
  LogicalSTeleport out;
  out.spec.width = pair.width;
  out.spec.input_stabilizers = pair.input_stabilizers;
  out.spec.input_stabilizers.push_back(pair.logical_z[1]);
  for (std::size_t k = 0; k < patch.stabilizers.size(); ++k)
    out.spec.output_stabilizers.push_back(patch.stabilizer_pauli(k, pair.width, 0));
  out.spec.logical_x = {pair.logical_x[0]};
  out.spec.logical_z = {pair.logical_z[0]};

  ScheduledCircuit& c = out.circuit;
  c.set_num_qubits(pair.width);
  std::vector<std::uint32_t> cnot;
  for (std::size_t q = 0; q < patch.num_data(); ++q) {
    cnot.push_back(static_cast<std::uint32_t>(q));
    cnot.push_back(static_cast<std::uint32_t>(block + q));
  }
  c.append(Gate::kCnot, cnot, Rational(0));
  int step = append_check_round(c, patch, 0, 1);
  step = append_check_round(c, patch, block, step);

  PauliString y = patch.logical_y_pauli(patch.num_qubits());
  std::string paulis;
  std::vector<std::uint32_t> targets;
  for (auto q : y.support()) {
    paulis += y.pauli_at(q);
    targets.push_back(static_cast<std::uint32_t>(block + q));
  }
  std::size_t m = c.append_pauli_measurement(paulis, targets, Rational(step));
  out.spec.free_records.insert(m);
  std::vector<std::uint32_t> zl;
  for (auto q : patch.logical_z) zl.push_back(static_cast<std::uint32_t>(q));
  c.append(Gate::kZ, zl, Rational(step + 1), {Condition{m, false}});
  append_check_round(c, patch, 0, step + 2);
  return out;
}

namespace {

VerifyResult expect_gate(const std::string& check, const std::string& expected, const ScheduledCircuit& circuit,
                         const LogicalSpec& spec, std::uint64_t seed) {
  VerifyResult r{check, expected, "", false};
  try {
    r.observed = logical_action(circuit, spec, seed).name;
    r.pass = r.observed == expected;
  } catch (const CodespaceViolation& e) {
    r.observed = std::string("codespace violation: ") + e.what();
  }
  return r;
}

VerifyResult expect_dense(const std::string& check, const std::string& expected, const ScheduledCircuit& circuit,
                          const LogicalSpec& spec, std::uint64_t seed) {
  DenseCheck dc = dense_logical_check(circuit, spec, expected, seed);
  VerifyResult r{check, expected + " (fidelity 1)", "fidelity " + std::to_string(dc.fidelity), false};
  r.pass = std::abs(dc.fidelity - 1.0) < 1e-9 && dc.min_record_probability > 1 - 1e-9;
  return r;
}

ScheduledCircuit twice(const ScheduledCircuit& c) {
  ScheduledCircuit out(c.num_qubits());
  out.append_circuit(c);
  out.append_circuit(c, c.makespan() + 1);
  return out;
}

}  // namespace

std::vector<VerifyResult> verify_protocols(int distance, const std::string& gate, std::uint64_t seed) {
  if (gate != "S" && gate != "H" && gate != "CNOT" && gate != "SWAP" && gate != "all")
    throw std::invalid_argument("unknown gate '" + gate + "'; expected S, H, CNOT, SWAP or all");
  std::vector<VerifyResult> out;
  const std::string d = "d=" + std::to_string(distance);
  PatchSpec folded = build_patch(distance, PatchKind::kFolded);
  LogicalSpec single = stack_spec({folded});
  const bool dense_fits = single.width + 1 <= DenseState::kMaxQubits;

  if (gate == "S" || gate == "all") {
    auto s = transversal_s_circuit(folded, canonical_alternation(distance));
    auto sd = transversal_s_circuit(folded, inverted_alternation(distance));
    out.push_back(expect_gate("transversal S " + d + " tableau", "S", s, single, seed));
    out.push_back(expect_gate("inverted alternation " + d + " tableau", "S_DAG", sd, single, seed));
    out.push_back(expect_gate("transversal S twice " + d + " tableau", "Z", twice(s), single, seed));
    if (dense_fits) {
      out.push_back(expect_dense("transversal S " + d + " dense", "S", s, single, seed));
      out.push_back(expect_dense("inverted alternation " + d + " dense", "S_DAG", sd, single, seed));
    }
  }
  if (gate == "H" || gate == "all") {
    auto h = transversal_h_circuit(folded);
    out.push_back(expect_gate("transversal H " + d + " tableau", "H", h, single, seed));
    out.push_back(expect_gate("transversal H twice " + d + " tableau", "I", twice(h), single, seed));
    if (dense_fits) out.push_back(expect_dense("transversal H " + d + " dense", "H", h, single, seed));
  }
  if (gate == "CNOT" || gate == "SWAP" || gate == "all") {
    TimingParams params;
    auto stack = embed_stack({folded, folded}, params);
    LogicalSpec two = stack_spec({folded, folded});
    auto with_rounds = [&](const ScheduledCircuit& g) {
      ScheduledCircuit c(two.width);
      c.append_circuit(g);
      int step = static_cast<int>(to_double(g.makespan())) + 1;
      step = append_check_round(c, folded, 0, step);
      append_check_round(c, folded, folded.num_qubits(), step);
      return c;
    };
    if (gate != "SWAP") {
      auto cx = with_rounds(transversal_two_qubit(stack, 0, 1, TwoQubitGate::kCnot));
      out.push_back(expect_gate("transversal CNOT " + d + " tableau", "CNOT(0->1)", cx, two, seed));
    }
    if (gate != "CNOT") {
      auto sw = with_rounds(transversal_two_qubit(stack, 0, 1, TwoQubitGate::kSwap));
      out.push_back(expect_gate("transversal SWAP " + d + " tableau", "SWAP", sw, two, seed));
      out.push_back(expect_gate("transversal SWAP twice " + d + " tableau", "I", twice(sw), two, seed));
    }
  }
  return out;
}

}  // namespace foldloop
