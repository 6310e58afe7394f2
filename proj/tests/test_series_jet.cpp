#include <gtest/gtest.h>

#include <cmath>

#include "kgaim/series_jet.hpp"

using namespace kgaim;

TEST(SeriesJet, ExpMatchesTaylorCoefficients) {
  const Jet x = Jet::variable(0.3, 6);
  const Jet e = (2.0 * x).exp();
  double fact = 1;
  for (int k = 0; k <= 6; ++k) {
    if (k) fact *= k;
    EXPECT_NEAR(e.coeff(k), std::exp(0.6) * std::pow(2.0, k) / fact, 1e-12);
  }
}

TEST(SeriesJet, ReciprocalTimesSelfIsOne) {
  const Jet x = Jet::variable(0.7, 8);
  const Jet f = 1.0 + x * x + (x * 0.5).exp();
  const Jet one = f * f.reciprocal();
  EXPECT_NEAR(one.coeff(0), 1.0, 1e-15);
  for (int k = 1; k <= 8; ++k) EXPECT_NEAR(one.coeff(k), 0.0, 1e-13);
}

TEST(SeriesJet, LogInvertsExp) {
  const Jet x = Jet::variable(-0.4, 7);
  const Jet f = (x * x + 2.0).log().exp();
  const Jet g = x * x + 2.0;
  for (int k = 0; k <= 7; ++k) EXPECT_NEAR(f.coeff(k), g.coeff(k), 1e-13);
}

TEST(SeriesJet, FractionalPowerDerivatives) {
  // d^k/dx^k (1 + x)^{1/2} at x = 0.
  const Jet x = Jet::variable(0.0, 3);
  const Jet s = (1.0 + x).pow(0.5);
  EXPECT_NEAR(s.derivative_value(0), 1.0, 1e-15);
  EXPECT_NEAR(s.derivative_value(1), 0.5, 1e-15);
  EXPECT_NEAR(s.derivative_value(2), -0.25, 1e-15);
  EXPECT_NEAR(s.derivative_value(3), 0.375, 1e-14);
}

TEST(SeriesJet, MixedOrdersTruncateToTheSmaller) {
  const Jet a = Jet::variable(1.0, 5);
  const Jet b = Jet::variable(1.0, 2);
  EXPECT_EQ((a * b).order(), 2);
  EXPECT_EQ((a + b).order(), 2);
  EXPECT_EQ(a.truncated(3).order(), 3);
}

TEST(SeriesJet, DerivativeLowersOrder) {
  const Jet x = Jet::variable(2.0, 4);
  const Jet d = (x * x * x).derivative();
  EXPECT_EQ(d.order(), 3);
  EXPECT_NEAR(d.value(), 12.0, 1e-14);
  EXPECT_NEAR(d.derivative_value(1), 12.0, 1e-14);
}

TEST(SeriesJet, ErrorPaths) {
  const Jet c = Jet::constant(0.0, 1.0, 0);
  try {
    c.derivative();
    FAIL() << "expected JetOrderExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::JetOrderExhausted);
  }
  EXPECT_THROW(Jet::constant(0.0, 0.0, 3).reciprocal(), Error);
  EXPECT_THROW(Jet::constant(0.0, -1.0, 3).log(), Error);
}
