#include <gtest/gtest.h>

#include <cmath>

#include "kgaim/model.hpp"

using namespace kgaim;

TEST(Deformation, SignAndLogMagnitude) {
  const Deformation d(-2.5);
  EXPECT_EQ(d.sign(), -1);
  EXPECT_DOUBLE_EQ(d.value(), -2.5);
  EXPECT_DOUBLE_EQ(d.log_magnitude(), std::log(2.5));
}

TEST(Deformation, HulthenValueKeepsLogFormForLargeX) {
  const Deformation d = hulthen_q(800.0);  // e^800 overflows a double
  EXPECT_EQ(d.sign(), -1);
  EXPECT_DOUBLE_EQ(d.log_magnitude(), 800.0);
}

TEST(PotentialParams, RejectsZeroDeformation) {
  PotentialParams p;
  p.q = 0.0;
  try {
    p.validate();
    FAIL() << "expected InvalidParameter";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
    EXPECT_NE(std::string(e.what()).find("q must be nonzero"), std::string::npos);
  }
}

TEST(PotentialParams, RejectsNonPositiveScales) {
  for (auto set : {+[](PotentialParams& p) { p.a = 0; }, +[](PotentialParams& p) { p.r0 = -1; },
                   +[](PotentialParams& p) { p.v0 = std::nan(""); }}) {
    PotentialParams p;
    set(p);
    EXPECT_THROW(p.validate(), Error);
  }
  ParticleContext c;
  c.hbarc = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(WoodsSaxon, StandardShapeAtRadius) {
  PotentialParams p;
  EXPECT_NEAR(eval_woods_saxon(p.r0, p), -p.v0 / 2.0, 1e-12);
  EXPECT_NEAR(eval_woods_saxon(0.0, p), -p.v0 / (1.0 + std::exp(-p.r0 / p.a)), 1e-12);
}

TEST(WoodsSaxon, YAndComplementSumToOne) {
  PotentialParams p;
  p.q = 0.7;
  for (double r : {0.0, 3.0, 7.61, 12.0, 40.0})
    EXPECT_NEAR(woods_saxon_y(r, p) + woods_saxon_one_minus_y(r, p), 1.0, 1e-15);
}

TEST(WoodsSaxon, HulthenFormIsScreenedCoulomb) {
  PotentialParams p;
  p.v0 = 30;
  p.a = 2.5;
  p.q = hulthen_q(p.diffuseness_ratio());
  for (double r : {0.5, 2.0, 9.0}) {
    const double hulthen = p.v0 / (std::exp(r / p.a) - 1.0);
    EXPECT_NEAR(eval_woods_saxon(r, p), hulthen, 1e-10 * hulthen);
  }
}

TEST(WoodsSaxon, PoleIsReported) {
  PotentialParams p;
  p.q = -1.0;
  try {
    eval_woods_saxon(p.r0, p);
    FAIL() << "expected PoleAtRadius";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleAtRadius);
  }
}

TEST(RingShape, ValueAndAxisSingularity) {
  PotentialParams p;
  p.alpha_ring = 0.3;
  p.beta_ring = 0.2;
  const double r = 2.0, th = 0.7, s = std::sin(th), c = std::cos(th);
  EXPECT_NEAR(eval_ring_shape(r, th, p), (0.3 + 0.2 * c * c) / (r * r * s * s), 1e-14);
  try {
    eval_ring_shape(r, 0.0, p);
    FAIL() << "expected AxisSingularity";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AxisSingularity);
  }
}

TEST(Pekeris, ReferencePointCoefficients) {
  const PekerisCoefficients red = pekeris_rederived(1.0, 10.0);
  const PekerisCoefficients pap = pekeris_paper(1.0, 10.0);
  EXPECT_NEAR(red.c0, 0.72, 1e-12);
  EXPECT_NEAR(red.c1, 0.32, 1e-12);
  EXPECT_NEAR(red.c2, 0.48, 1e-12);
  EXPECT_NEAR(pap.c0, 0.72, 1e-12);
  EXPECT_NEAR(pap.c1, 0.32, 1e-12);
  EXPECT_NEAR(pap.c2, 0.08, 1e-12);
}

TEST(Pekeris, RederivedMatchesValueSlopeCurvature) {
  for (double q = 0.5; q <= 4.0; q += 0.25)
    for (double x = 5.0; x <= 20.0; x += 1.5) {
      const auto res = pekeris_matching_residuals(pekeris_rederived(q, x), q, x);
      for (double r : res) EXPECT_LT(std::abs(r), 1e-12) << "q=" << q << " X=" << x;
    }
}

TEST(Pekeris, AlternateSetMissesCurvature) {
  const auto res = pekeris_matching_residuals(pekeris_paper(1.0, 10.0), 1.0, 10.0);
  EXPECT_GT(std::abs(res[0]) + std::abs(res[1]) + std::abs(res[2]), 1e-3);
}

TEST(Pekeris, RederivedRequiresPositiveQ) {
  EXPECT_THROW(pekeris_rederived(-1.0, 10.0), Error);
  EXPECT_THROW(pekeris_paper(0.0, 10.0), Error);
}

TEST(Pekeris, HulthenSourceIsPlainCoulombTail) {
  const PekerisCoefficients c = pekeris(PekerisSource::HulthenLimit, -1.0, 3.0);
  EXPECT_EQ(c.c0, 1.0);
  EXPECT_EQ(c.c1, 0.0);
  EXPECT_EQ(c.c2, 0.0);
}

TEST(RadialScaled, NaturalUnitsIdentity) {
  // With hbarc = 1 and a = 1 the scaled parameters reduce to the bare forms.
  PotentialParams p;
  p.v0 = 0.3;
  p.r0 = 4.0;
  p.a = 1.0;
  ParticleContext ctx;
  ctx.m0c2 = 1.0;
  ctx.hbarc = 1.0;
  const PekerisCoefficients c{0.5, 0.2, 0.1, PekerisSource::Rederived};
  const double e = 0.8, l = 1.0, x = 4.0, lw = l * (l + 1) / (x * x);
  const RadialScaledParams s = radial_scaled(e, l, p, ctx, c);
  EXPECT_NEAR(s.eps2, -(e * e - 1.0) + lw * 0.5, 1e-14);
  EXPECT_NEAR(s.b2, -2.0 * e * 0.3 + lw * 0.2, 1e-14);
  EXPECT_NEAR(s.g2, -0.09 + lw * 0.1, 1e-14);
}

TEST(AngularParams, ScaleCarriesHbarc) {
  PotentialParams p;
  p.alpha_ring = 0.05;
  p.beta_ring = 0.02;
  ParticleContext ctx;
  const double e = 920.0;
  const AngularParams a = angular_params(1, e, p, ctx);
  const double s = (e + ctx.m0c2) / (ctx.hbarc * ctx.hbarc);
  EXPECT_NEAR(a.alpha_prime, s * 0.05, 1e-15);
  EXPECT_NEAR(a.beta_prime, s * 0.02, 1e-15);
  EXPECT_NEAR(a.mu_ang * a.mu_ang, 1.0 + a.alpha_prime + a.beta_prime, 1e-14);
}
