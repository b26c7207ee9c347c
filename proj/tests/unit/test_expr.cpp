#include <gtest/gtest.h>

#include "foldloop/costs.hpp"
#include "foldloop/expr.hpp"

using namespace foldloop;

TEST(LinearExpr, RendersInCanonicalOrder) {
  LinearExpr e = LinearExpr::symbol("T_meas") + LinearExpr::symbol("T_2q", Rational(4)) +
                 LinearExpr::symbol("T_loop", Rational(27, 8)) + LinearExpr::symbol("T_1q", Rational(2));
  EXPECT_EQ(e.str(), "27/8·T_loop + 2·T_1q + 4·T_2q + T_meas");
  EXPECT_EQ(e.str(symbol_values(TimingParams{})), "27/8·T_loop + 2·T_1q + 4·T_2q + T_meas = 3150 ns");
}

TEST(LinearExpr, ParseRoundTrip) {
  for (const std::string text : {"27/8·T_loop + 2·T_1q + 4·T_2q + T_meas", "T_cyc*(16) + 5/4·T_loop + T_2q",
                                 "33·T_cyc*(16) - 1/2·T_loop + 18000 ns", "0 ns"}) {
    LinearExpr e = LinearExpr::parse(text);
    EXPECT_EQ(LinearExpr::parse(e.str()), e) << text;
  }
  EXPECT_EQ(LinearExpr::parse("2*T_loop"), LinearExpr::symbol("T_loop", Rational(2)));
  EXPECT_THROW(LinearExpr::parse("2·"), std::invalid_argument);
}

TEST(LinearExpr, EvaluateAndSubstitute) {
  LinearExpr e = LinearExpr::symbol("T_S", Rational(4)) + LinearExpr::constant(Rational(10));
  LinearExpr s = e.substitute("T_S", LinearExpr::symbol("T_loop", Rational(5, 4)) + LinearExpr::symbol("T_2q"));
  EXPECT_EQ(s.coefficient("T_loop"), Rational(5));
  EXPECT_EQ(s.coefficient("T_2q"), Rational(4));
  EXPECT_EQ(s.evaluate({{"T_loop", Rational(400)}, {"T_2q", Rational(100)}}), Rational(2410));
  EXPECT_THROW(e.evaluate({}), std::invalid_argument);
}

TEST(LinearExpr, ArithmeticDropsZeroTerms) {
  LinearExpr a = LinearExpr::symbol("T_loop", Rational(1, 2));
  LinearExpr z = a - a;
  EXPECT_TRUE(z.terms().empty());
  EXPECT_EQ((Rational(3) * a).coefficient("T_loop"), Rational(3, 2));
}

TEST(FormatNs, ShowsExactAndDecimal) {
  EXPECT_EQ(format_ns(Rational(3150)), "3150 ns");
  EXPECT_EQ(format_ns(Rational(2025, 2)), "2025/2 ns (1012.5)");
}
