#include <gtest/gtest.h>

#include <set>

#include "foldloop/factory.hpp"

using namespace foldloop;

TEST(Factory, CircuitCounts) {
  FactoryCircuit f = ccz_factory_spec(FactoryVariant::kFolded);
  FactoryCircuit r = ccz_factory_spec(FactoryVariant::kRotated);
  EXPECT_EQ(f.count(Gate::kCnot), 13u);
  EXPECT_EQ(r.count(Gate::kCnot), 17u);
  EXPECT_EQ(f.slices.size(), 7u);
  EXPECT_EQ(r.slices.size(), 8u);
  EXPECT_EQ(f.t_inputs.size(), 8u);
  f.validate();
  r.validate();
}

TEST(Factory, FoldedSliceFourFansOut) {
  FactoryCircuit f = ccz_factory_spec(FactoryVariant::kFolded);
  std::set<std::uint32_t> targets;
  for (const Op& op : f.slices[3])
    if (op.gate == Gate::kCnot) targets.insert(op.targets[1]);
  EXPECT_EQ(targets, (std::set<std::uint32_t>{4, 5, 6, 7}));
}

TEST(Factory, ValidateCatchesSharedQubit) {
  FactoryCircuit f = ccz_factory_spec(FactoryVariant::kFolded);
  Op dup = f.slices[0].front();
  f.slices[0].push_back(dup);
  EXPECT_THROW(f.validate(), std::logic_error);
}

TEST(Factory, DistillsOnlyFromTStates) {
  for (FactoryVariant v : {FactoryVariant::kFolded, FactoryVariant::kRotated}) {
    FactoryCircuit c = ccz_factory_spec(v);
    FactoryVerification ok = verify_factory(c);
    EXPECT_TRUE(ok.pass) << ok.message;
    EXPECT_NEAR(ok.min_fidelity, 1.0, 1e-9);
    EXPECT_GT(ok.branches, 1u);
    FactoryVerification zero = verify_factory(c, false);
    EXPECT_FALSE(zero.pass);
  }
}

TEST(Factory, CultivationCycles) {
  EXPECT_EQ(cultivation_cycles(1e-7, 25, 8, 8), 22);
  EXPECT_EQ(cultivation_cycles(1e-7, 25, 8, 12), 15);
  EXPECT_EQ(cultivation_cycles(1e-7, 25, 8, 16), 11);
  EXPECT_THROW(cultivation_cycles(1e-6, 25, 8, 16), std::invalid_argument);
}

TEST(Factory, ExactRuntimes) {
  TimingParams p;
  FactoryReport f = factory_runtime(FactoryVariant::kFolded, p, 25);
  FactoryReport r = factory_runtime(FactoryVariant::kRotated, p, 25);
  EXPECT_EQ(f.runtime, Rational(431125, 2));
  EXPECT_EQ(r.runtime, Rational(836150, 3));
  EXPECT_EQ(f.cultivation_cycles, 22);
  EXPECT_EQ(r.cultivation_cycles, 15);
  EXPECT_EQ(f.output_error, Rational(28, 100'000'000'000'000LL));
  EXPECT_EQ(f.spacetime, f.runtime * f.space);
  EXPECT_EQ(f.runtime_expr.evaluate(f.values), f.runtime);
  EXPECT_EQ(f.expanded.evaluate(f.values), f.runtime);
  const FactoryForm& form = f.form;
  EXPECT_EQ((form.t_star_per_d * 25 + form.t_star_const) * 6000 + form.constant_ns, f.runtime);
}

TEST(Factory, TimelineIsSerial) {
  TimingParams p;
  FactoryReport f = factory_runtime(FactoryVariant::kFolded, p, 25);
  Rational t(0);
  for (const Event& e : f.timeline.events()) {
    EXPECT_GE(e.start, t);
    t = e.end();
  }
  EXPECT_EQ(f.timeline.makespan(), f.runtime);
  EXPECT_THROW(factory_runtime(FactoryVariant::kFolded, p, 24), std::invalid_argument);
}
