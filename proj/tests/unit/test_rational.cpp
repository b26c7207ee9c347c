#include <gtest/gtest.h>

#include "foldloop/rational.hpp"

using namespace foldloop;

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-7/8"), Rational(-7, 8));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("1e3"), Rational(1000));
  EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Rational, MixedIntegerComparisonTerminates) {
  Rational r(6, 3);
  EXPECT_TRUE(r == 2);
  EXPECT_TRUE(2 == r);
  EXPECT_TRUE(r != 0);
  EXPECT_FALSE(Rational(1, 2) == 0);
}

TEST(Rational, Rendering) {
  EXPECT_EQ(to_string(Rational(61, 16)), "61/16");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(Rational(5, 2)), "2.5");
}

TEST(Rational, FloorCeilFrac) {
  EXPECT_EQ(floor(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(frac(Rational(-1, 4)), Rational(3, 4));
  EXPECT_EQ(circular_distance(Rational(1, 8), Rational(7, 8)), Rational(1, 4));
  EXPECT_EQ(circular_distance(Rational(0), Rational(1, 2)), Rational(1, 2));
}
