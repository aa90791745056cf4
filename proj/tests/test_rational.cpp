#include <gtest/gtest.h>

#include "mmr/rational.hpp"

using mmr::Rational;

TEST(Rational, NormalisesSignAndGcd) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.str(), "-3/2");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_LT(Rational(-1, 2), Rational(-1, 3));
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("17"), Rational(17));
  EXPECT_EQ(Rational::parse(" 3/6 "), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-2.75"), Rational(-11, 4));
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
}

TEST(Rational, Decimal) {
  EXPECT_EQ(Rational(1, 3).decimal(4), "0.3333");
  EXPECT_EQ(Rational(-5, 2).decimal(2), "-2.50");
}

TEST(Rational, OverflowIsReported) {
  Rational big(static_cast<long long>(1) << 62);
  EXPECT_THROW(
      {
        for (int i = 0; i < 4; ++i) big = big * big;
      },
      std::overflow_error);
}
