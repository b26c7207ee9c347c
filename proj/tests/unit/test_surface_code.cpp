#include <gtest/gtest.h>

#include <random>
#include <set>

#include "foldloop/pauli_group.hpp"
#include "foldloop/surface_code.hpp"
#include "foldloop/tableau.hpp"

using namespace foldloop;

namespace {

// Symplectic product computed from the letters alone.
bool letters_commute(const PauliString& a, const PauliString& b) {
  int anti = 0;
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    char p = a.pauli_at(q), r = b.pauli_at(q);
    if (p != 'I' && p != '_' && r != 'I' && r != '_' && p != r) ++anti;
  }
  return anti % 2 == 0;
}

}  // namespace

class PatchTest : public ::testing::TestWithParam<std::tuple<int, PatchKind>> {};

TEST_P(PatchTest, CountsAndCommutation) {
  auto [d, kind] = GetParam();
  PatchSpec p = build_patch(d, kind);
  const std::size_t n = p.num_data();
  EXPECT_EQ(p.stabilizers.size(), n - 1);
  EXPECT_EQ(p.num_qubits(), 2 * n - 1);
  EXPECT_EQ(p.logical_x.size(), static_cast<std::size_t>(d));
  EXPECT_EQ(p.logical_z.size(), static_cast<std::size_t>(d));

  std::vector<PauliString> stabs;
  for (std::size_t k = 0; k < p.stabilizers.size(); ++k) stabs.push_back(p.stabilizer_pauli(k, n));
  PauliString lx = p.logical_x_pauli(n), lz = p.logical_z_pauli(n);
  for (std::size_t a = 0; a < stabs.size(); ++a) {
    for (std::size_t b = a + 1; b < stabs.size(); ++b) EXPECT_TRUE(letters_commute(stabs[a], stabs[b]));
    EXPECT_TRUE(letters_commute(stabs[a], lx));
    EXPECT_TRUE(letters_commute(stabs[a], lz));
  }
  EXPECT_FALSE(letters_commute(lx, lz));
  PauliGroup g(n, stabs);
  EXPECT_EQ(g.rank(), n - 1);
  EXPECT_FALSE(g.contains_up_to_sign(lx));
  EXPECT_FALSE(g.contains_up_to_sign(lz));
}

TEST_P(PatchTest, CheckCircuitShape) {
  auto [d, kind] = GetParam();
  PatchSpec p = build_patch(d, kind);
  ScheduledCircuit c = check_circuit(p);
  EXPECT_EQ(c.count(Gate::kCnot), static_cast<std::size_t>(4 * d * (d - 1)));
  auto layers = check_layers(p);
  for (const auto& layer : layers) {
    std::set<std::uint32_t> used;
    for (auto [a, b] : layer) {
      EXPECT_TRUE(used.insert(a).second);
      EXPECT_TRUE(used.insert(b).second);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Distances, PatchTest,
                         ::testing::Combine(::testing::Values(3, 5, 7),
                                            ::testing::Values(PatchKind::kRotated, PatchKind::kFolded)));

TEST(Patch, RejectsBadDistance) {
  EXPECT_THROW(build_patch(4, PatchKind::kRotated), std::invalid_argument);
  EXPECT_THROW(build_patch(1, PatchKind::kFolded), std::invalid_argument);
}

TEST(Patch, FoldMapIsInvolutionWithDiagonalFixed) {
  for (int d : {3, 5, 7}) {
    PatchSpec p = build_patch(d, PatchKind::kFolded);
    ASSERT_EQ(p.fold_map.size(), p.num_data());
    int fixed = 0;
    for (std::size_t q = 0; q < p.num_data(); ++q) {
      EXPECT_EQ(p.fold_map[p.fold_map[q]], q);
      Site s = p.data_site(q), t = p.data_site(p.fold_map[q]);
      EXPECT_EQ(s.row, t.col);
      EXPECT_EQ(s.col, t.row);
      if (p.fold_map[q] == q) ++fixed;
    }
    EXPECT_EQ(fixed, d);
    EXPECT_EQ(p.crease_qubits().size(), static_cast<std::size_t>(2 * d - 1));
  }
}

TEST(Patch, SecondRoundRepeatsFirst) {
  for (PatchKind kind : {PatchKind::kRotated, PatchKind::kFolded}) {
    PatchSpec p = build_patch(3, kind);
    ScheduledCircuit c = check_circuit(p);
    ScheduledCircuit twice(p.num_qubits());
    twice.append_circuit(c);
    twice.append_circuit(c, c.makespan() + Rational(1));
    Tableau t(p.num_qubits());
    std::mt19937_64 rng(9);
    TableauRun run = run_tableau(twice, t, rng);
    const std::size_t m = c.num_measurements();
    ASSERT_EQ(run.record.size(), 2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      EXPECT_TRUE(run.deterministic[m + k]);
      EXPECT_EQ(run.record[m + k], run.record[k]);
    }
  }
}

TEST(Patch, MidcycleGroupD3) {
  MidcycleGroup g = midcycle_group(build_patch(3, PatchKind::kRotated));
  EXPECT_EQ(g.active_qubits.size(), 13u);
  EXPECT_EQ(g.x_generators.size() + g.z_generators.size(), 12u);
  for (const auto& a : g.x_generators)
    for (const auto& b : g.z_generators) EXPECT_TRUE(letters_commute(a, b));
}

TEST(Embedding, StackSizes) {
  TimingParams t;
  std::vector<PatchSpec> folded(8, build_patch(3, PatchKind::kFolded));
  LoopEmbedding e = embed_stack(folded, t);
  EXPECT_EQ(e.qubits_per_loop, 16);
  const Loop& diag = e.loop_at(LoopRole::kData, 1, 1);
  EXPECT_EQ(diag.speed, SpeedClass::kDouble);
  EXPECT_EQ(diag.lap_time, t.t_loop / Rational(2));
  EXPECT_EQ(diag.slots.size(), 8u);

  std::vector<PatchSpec> rotated(12, build_patch(3, PatchKind::kRotated));
  EXPECT_EQ(embed_stack(rotated, t).qubits_per_loop, 12);
}

TEST(Embedding, RejectsMixedStacks) {
  TimingParams t;
  EXPECT_THROW(embed_stack({}, t), std::invalid_argument);
  EXPECT_THROW(embed_stack({build_patch(3, PatchKind::kFolded), build_patch(3, PatchKind::kRotated)}, t),
               std::invalid_argument);
  EXPECT_THROW(embed_stack({build_patch(3, PatchKind::kFolded), build_patch(5, PatchKind::kFolded)}, t),
               std::invalid_argument);
}

TEST(Embedding, JsonRoundTrip) {
  TimingParams t;
  PatchSpec p = build_patch(5, PatchKind::kFolded);
  PatchSpec q = patch_from_json(to_json(p));
  EXPECT_EQ(q.distance, 5);
  EXPECT_EQ(q.fold_map, p.fold_map);
  EXPECT_EQ(q.num_qubits(), p.num_qubits());
  LoopEmbedding e = embed_stack({p, p}, t);
  EXPECT_EQ(to_json(embedding_from_json(to_json(e))), to_json(e));
}
