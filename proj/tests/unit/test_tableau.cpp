#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "foldloop/dense.hpp"
#include "foldloop/errors.hpp"
#include "foldloop/protocols.hpp"
#include "foldloop/tableau.hpp"

using namespace foldloop;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

DenseState random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Amplitude> a = {{g(rng), g(rng)}, {g(rng), g(rng)}};
  double n = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
  a[0] /= n;
  a[1] /= n;
  return DenseState::from_amplitudes(a);
}

// |psi> (qubit 0) tensor |phi> (qubit 1), qubit q is bit q of the index.
DenseState product(const DenseState& psi, Amplitude phi0, Amplitude phi1) {
  std::vector<Amplitude> a(4);
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1) a[static_cast<std::size_t>(b0 | (b1 << 1))] = psi.amplitude(b0) * (b1 ? phi1 : phi0);
  return DenseState::from_amplitudes(a);
}

ScheduledCircuit random_clifford(std::size_t n, int depth, std::mt19937_64& rng) {
  ScheduledCircuit c(n);
  const Gate one[] = {Gate::kH, Gate::kS, Gate::kSDag, Gate::kX, Gate::kZ, Gate::kY};
  const Gate two[] = {Gate::kCnot, Gate::kCz, Gate::kSwap};
  for (int k = 0; k < depth; ++k) {
    std::uint32_t a = static_cast<std::uint32_t>(rng() % n);
    if (rng() % 2) {
      c.append(one[rng() % 6], {a}, Rational(k));
    } else {
      std::uint32_t b = static_cast<std::uint32_t>(rng() % (n - 1));
      if (b >= a) ++b;
      c.append(two[rng() % 3], {a, b}, Rational(k));
    }
  }
  return c;
}

}  // namespace

TEST(Tableau, HadamardTwiceIsIdentity) {
  Tableau t(1);
  std::mt19937_64 rng(1);
  t.h(0);
  t.h(0);
  MeasureResult m = t.measure_z(0, rng);
  EXPECT_TRUE(m.deterministic);
  EXPECT_FALSE(m.outcome);
}

TEST(Tableau, CnotConjugatesXI) {
  PauliString p = PauliString::from_text("XI");
  conjugate(p, Gate::kCnot, {0, 1});
  EXPECT_EQ(p, PauliString::from_text("XX"));
  PauliString z = PauliString::from_text("IZ");
  conjugate(z, Gate::kCnot, {0, 1});
  EXPECT_EQ(z, PauliString::from_text("ZZ"));
}

TEST(Tableau, RejectsNonClifford) {
  Tableau t(2);
  EXPECT_THROW(t.apply(Gate::kT, {0}), UnsupportedGateError);
}

TEST(Tableau, YMeasurementOfIState) {
  Tableau t(1);
  std::mt19937_64 rng(3);
  t.h(0);
  t.s(0);
  MeasureResult m = t.measure_y(0, rng);
  EXPECT_TRUE(m.deterministic);
  EXPECT_FALSE(m.outcome);
  MeasureResult z = t.measure_z(0, rng);
  EXPECT_FALSE(z.deterministic);
}

TEST(Dense, SOnPlus) {
  DenseState s(1);
  s.apply(Gate::kH, {0});
  s.apply(Gate::kS, {0});
  EXPECT_NEAR(std::abs(s.amplitude(0) - Amplitude(kR, 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(s.amplitude(1) - Amplitude(0, kR)), 0, 1e-12);
}

TEST(Dense, NormIsPreserved) {
  std::mt19937_64 rng(5);
  DenseState s(8);
  s.apply(Gate::kH, {0});
  for (int k = 0; k < 200; ++k) {
    s.apply(Gate::kT, {static_cast<std::uint32_t>(rng() % 8)});
    s.apply(Gate::kCnot, {static_cast<std::uint32_t>(k % 8), static_cast<std::uint32_t>((k + 3) % 8)});
    s.apply(Gate::kH, {static_cast<std::uint32_t>(rng() % 8)});
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Engines, AgreeOnRandomCliffordCircuits) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 11;
    ScheduledCircuit c = random_clifford(n, 60, rng);
    Tableau t(n);
    DenseState s(n);
    std::mt19937_64 r1(trial), r2(trial);
    run_tableau(c, t, r1);
    run_dense(c, s, r2);
    EXPECT_TRUE(t.valid());
    EXPECT_NEAR(fidelity_with_stabilizer_state(s, t), 1.0, 1e-9) << "trial " << trial;
    for (std::size_t q = 0; q < n; ++q) {
      PauliString z = PauliString::single(n, q, 'Z');
      auto det = t.peek(z);
      if (det) EXPECT_NEAR(s.probability(z, *det), 1.0, 1e-9);
      else EXPECT_NEAR(s.probability(z, false), 0.5, 1e-9);
    }
  }
}

TEST(Engines, MeasurementsMatchWithForcedOutcomes) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6;
    ScheduledCircuit c = random_clifford(n, 30, rng);
    for (std::uint32_t q = 0; q < n; ++q) c.append(Gate::kMeasure, {q}, Rational(100));
    Tableau t(n);
    std::mt19937_64 r1(trial);
    TableauRun tr = run_tableau(c, t, r1);
    DenseState s(n);
    std::mt19937_64 r2(trial + 1000);
    DenseRun dr = run_dense(c, s, r2, tr.record);
    for (std::size_t k = 0; k < tr.record.size(); ++k) {
      EXPECT_EQ(dr.record[k], tr.record[k]);
      if (tr.deterministic[k]) EXPECT_NEAR(dr.probability[k], 1.0, 1e-9);
      else EXPECT_NEAR(dr.probability[k], 0.5, 1e-9);
    }
  }
}

TEST(STeleport, YMeasureImplementsS) {
  std::mt19937_64 rng(23);
  ScheduledCircuit c = s_teleport_circuit(STeleportVariant::kYMeasure);
  for (int trial = 0; trial < 50; ++trial) {
    DenseState psi = random_qubit(rng);
    DenseState expect_psi = psi;
    expect_psi.apply(Gate::kS, {0});
    DenseState s = product(psi, 1, 0);
    DenseRun run = run_dense(c, s, rng);
    Amplitude y = run.record[0] ? Amplitude(0, -kR) : Amplitude(0, kR);
    EXPECT_NEAR(s.fidelity(product(expect_psi, kR, y)), 1.0, 1e-9) << "seed trial " << trial;
  }
}

TEST(STeleport, IStateImplementsSAndLeavesZi) {
  std::mt19937_64 rng(29);
  ScheduledCircuit c = s_teleport_circuit(STeleportVariant::kIState);
  for (int trial = 0; trial < 50; ++trial) {
    DenseState psi = random_qubit(rng);
    DenseState expect_psi = psi;
    expect_psi.apply(Gate::kS, {0});
    DenseState s = product(psi, 1, 0);
    run_dense(c, s, rng);
    EXPECT_NEAR(s.fidelity(product(expect_psi, kR, Amplitude(0, -kR))), 1.0, 1e-9) << "trial " << trial;
  }
}

TEST(Circuit, DumpParseRoundTrip) {
  ScheduledCircuit c(3);
  c.append(Gate::kH, {0}, Rational(0));
  c.append(Gate::kCnot, {0, 1}, Rational(1, 2));
  std::size_t m = c.append(Gate::kMeasure, {1}, Rational(1));
  c.append(Gate::kX, {2}, Rational(2), {Condition{m, true}});
  std::istringstream in(c.str());
  ScheduledCircuit back = ScheduledCircuit::parse(in);
  EXPECT_EQ(back.ops(), c.ops());
}
