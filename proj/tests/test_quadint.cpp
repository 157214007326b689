// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "sbpgreen/error.hpp"
#include "sbpgreen/quadint.hpp"

using namespace sbpgreen;

TEST(QuadInt, UnitsHaveNormOne) {
  EXPECT_EQ(QuadInt::phi().norm(), 1);
  EXPECT_EQ(QuadInt::psi().norm(), 1);
}

TEST(QuadInt, NegativePowerIsConjugatePower) {
  const QuadInt p = QuadInt::phi();
  EXPECT_EQ(p.pow(-3), p.conj().pow(3));
  EXPECT_EQ(p.pow(5) * p.pow(-5), QuadInt(1, 0, 15));
}

TEST(QuadInt, ToDoubleHandlesCancellation) {
  // psi^-20 = a - b sqrt(3) with a, b ~ 1e22; naive evaluation loses everything.
  const QuadInt tiny = QuadInt::psi().pow(-20);
  const double expected = std::pow(7.0 + 4.0 * std::sqrt(3.0), -20.0);
  EXPECT_NEAR(tiny.to_double() / expected, 1.0, 1e-14);
  EXPECT_EQ(tiny.sign(), 1);
}

TEST(QuadInt, OrderingIsExact) {
  const QuadInt s = QuadInt(0, 1, 3);
  EXPECT_TRUE(QuadInt(1, 0, 3) < s);
  EXPECT_TRUE(s < QuadInt(2, 0, 3));
  EXPECT_EQ((QuadInt(7, 0, 3) - QuadInt::psi()).sign(), -1);
}

TEST(QuadInt, RejectsOtherRadicands) { EXPECT_THROW(QuadInt(1, 1, 5), Error); }

TEST(Rational, DoubleRoundTripIsExact) {
  for (double v : {0.1, -3.75, 1e-300, 123456789.125, 5e-324}) {
    EXPECT_EQ(to_double(to_rational(v)), v);
  }
  EXPECT_EQ(to_rational(0.5), BigRational(1, 2));
}
