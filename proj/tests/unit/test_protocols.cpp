#include <gtest/gtest.h>

#include <map>

#include "foldloop/logical.hpp"
#include "foldloop/protocols.hpp"
#include "foldloop/surface_code.hpp"

using namespace foldloop;

namespace {

LogicalAction run_single(const ScheduledCircuit& c, const PatchSpec& p) { return logical_action(c, stack_spec({p}), 5); }

}  // namespace

TEST(Protocols, CanonicalAlternationIsS) {
  for (int d : {3, 5}) {
    PatchSpec p = build_patch(d, PatchKind::kFolded);
    EXPECT_EQ(canonical_alternation(d).size(), static_cast<std::size_t>(2 * d - 1));
    EXPECT_EQ(run_single(transversal_s_circuit(p, canonical_alternation(d)), p).name, "S");
    EXPECT_EQ(run_single(transversal_s_circuit(p, inverted_alternation(d)), p).name, "S_DAG");
  }
}

TEST(Protocols, HadamardAndItsSquare) {
  PatchSpec p = build_patch(3, PatchKind::kFolded);
  ScheduledCircuit h = transversal_h_circuit(p);
  EXPECT_EQ(run_single(h, p).name, "H");
  ScheduledCircuit hh(h.num_qubits());
  hh.append_circuit(h);
  hh.append_circuit(h, h.makespan() + Rational(1));
  EXPECT_EQ(run_single(hh, p).name, "I");
}

TEST(Protocols, RejectsRotatedOrWrongAlternation) {
  EXPECT_THROW(transversal_s_circuit(build_patch(3, PatchKind::kRotated), canonical_alternation(3)),
               std::invalid_argument);
  EXPECT_THROW(transversal_s_circuit(build_patch(3, PatchKind::kFolded), canonical_alternation(5)),
               std::invalid_argument);
}

TEST(Protocols, StackCnotAndSwap) {
  TimingParams t;
  PatchSpec p = build_patch(3, PatchKind::kFolded);
  LoopEmbedding e = embed_stack({p, p}, t);
  LogicalSpec spec = stack_spec({p, p});
  ScheduledCircuit cnot = transversal_two_qubit(e, 0, 1, TwoQubitGate::kCnot);
  EXPECT_EQ(logical_action(cnot, spec).name, "CNOT(0->1)");
  ScheduledCircuit rev = transversal_two_qubit(e, 1, 0, TwoQubitGate::kCnot);
  EXPECT_EQ(logical_action(rev, spec).name, "CNOT(1->0)");

  ScheduledCircuit sw = transversal_two_qubit(e, 0, 1, TwoQubitGate::kSwap);
  EXPECT_EQ(logical_action(sw, spec).name, "SWAP");
  ScheduledCircuit twice(sw.num_qubits());
  twice.append_circuit(sw);
  twice.append_circuit(sw, sw.makespan() + Rational(1));
  EXPECT_EQ(logical_action(twice, spec).name, "I");
}

TEST(Protocols, StackGateTouchesEachDataQubitOnce) {
  TimingParams t;
  PatchSpec p = build_patch(3, PatchKind::kFolded);
  LoopEmbedding e = embed_stack(std::vector<PatchSpec>(8, p), t);
  ScheduledCircuit c = transversal_two_qubit(e, 0, 7, TwoQubitGate::kCnot);
  EXPECT_EQ(c.count(Gate::kCnot), 9u);
  std::map<std::uint32_t, int> uses;
  for (const Op& op : c.ops())
    if (op.gate == Gate::kCnot)
      for (auto q : op.targets) ++uses[q];
  EXPECT_EQ(uses.size(), 18u);
  for (auto [q, k] : uses) {
    EXPECT_EQ(k, 1);
    EXPECT_TRUE(q < p.num_data() || (q >= 7 * p.num_qubits() && q < 7 * p.num_qubits() + p.num_data()));
  }
}

TEST(Protocols, StackErrors) {
  TimingParams t;
  PatchSpec p = build_patch(3, PatchKind::kFolded);
  LoopEmbedding e = embed_stack({p, p}, t);
  EXPECT_THROW(transversal_two_qubit(e, 0, 0, TwoQubitGate::kCnot), std::invalid_argument);
  EXPECT_THROW(transversal_two_qubit(e, 0, 2, TwoQubitGate::kCnot), std::invalid_argument);
}

TEST(Protocols, LogicalSTeleport) {
  PatchSpec p = build_patch(3, PatchKind::kFolded);
  LogicalSTeleport s = s_teleport_logical(p);
  EXPECT_EQ(logical_action(s.circuit, s.spec, 3).name, "S");
}

TEST(Protocols, VerifyAllPassesAtD3) {
  auto results = verify_protocols(3, "all", 7);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.pass) << r.check << ": " << r.observed;
  EXPECT_THROW(verify_protocols(3, "T", 7), std::invalid_argument);
}

TEST(Logical, CliffordNames) {
  auto [xs, zs] = clifford_images("H", 1);
  EXPECT_EQ(clifford_name(xs, zs), "H");
  auto [cx, cz] = clifford_images("CNOT(0->1)", 2);
  EXPECT_EQ(cx[0], PauliString::from_text("XX"));
  EXPECT_EQ(cz[1], PauliString::from_text("ZZ"));
  EXPECT_EQ(clifford_name(cx, cz), "CNOT(0->1)");
}
