#include <gtest/gtest.h>

#include <cmath>

#include "kgaim/aim.hpp"
#include "kgaim/spectrum.hpp"
#include "kgaim/validation.hpp"

using namespace kgaim;

namespace {

// Terminates after n_r + 1 iterations; a few more keep rounding small.
constexpr int kRadialIterations = 5;
constexpr int kAngularIterations = 6;

AimFamily mu_family(double sigma, double nu2, double eval_point) {
  return [=](double mu) { return radial_aim_problem(mu, sigma, nu2, eval_point); };
}

}  // namespace

TEST(Aim, RadialExponentRootsMatchQuantization) {
  // mu + sigma = N_k with N_k = -k - 1/2 + sqrt(1 + 4 nu^2)/2; nu^2 = 30 gives N_k = 5 - k.
  const double sigma = 0.5, nu2 = 30.0;
  for (double ep : {1.5, 2.0, 2.5}) {
    const auto roots = aim_roots(mu_family(sigma, nu2, ep), 1.0, 5.0, kRadialIterations);
    ASSERT_EQ(roots.size(), 4u) << "eval point " << ep;
    for (int k = 0; k < 4; ++k) {
      const double expect = big_n(3 - k, nu2).n_cap - sigma;
      EXPECT_NEAR(roots[k], expect, 1e-8 * expect);
    }
  }
}

TEST(Aim, RootsInvariantUnderEvaluationPoint) {
  const auto ref = aim_roots(mu_family(0.5, 30.0, 2.0), 1.0, 5.0, kRadialIterations);
  for (double ep : {1.5, 2.5}) {
    const auto r = aim_roots(mu_family(0.5, 30.0, ep), 1.0, 5.0, kRadialIterations);
    ASSERT_EQ(r.size(), ref.size());
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(r[i], ref[i], 1e-9 * ref[i]);
  }
}

TEST(Aim, EnergyFamilyReproducesRootSolve) {
  const PotentialParams p = solvable_reference();
  const ParticleContext ctx;
  const PekerisCoefficients c = pekeris(PekerisSource::Rederived, 1.0, p.diffuseness_ratio());
  const auto roots = aim_roots(radial_energy_family(1.0, p, ctx, c), 900.0, 939.0, kRadialIterations);
  ASSERT_GE(roots.size(), 2u);
  EXPECT_NEAR(roots[0], radial_energy_rootsolve(0, 1.0, p, ctx, c).energy, 1e-8 * 922);
  EXPECT_NEAR(roots[1], radial_energy_rootsolve(1, 1.0, p, ctx, c).energy, 1e-8 * 929);
}

TEST(Aim, AngularSequenceAtUnitOrder) {
  const auto roots = aim_roots(angular_family(1.0), 0.5, 25.0, kAngularIterations);
  ASSERT_GE(roots.size(), 4u);
  const double expect[] = {2, 6, 12, 20};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(roots[k], expect[k], 1e-8 * expect[k]);
}

TEST(Aim, AngularEigenvaluesOverOrders) {
  for (double mu : {0.0, 0.5, 1.0, 2.0, 3.3}) {
    const double hi = (mu + 4.5) * (mu + 5.5);
    const auto roots = aim_roots(angular_family(mu), -0.5, hi, kAngularIterations);
    ASSERT_GE(roots.size(), 5u) << "mu " << mu;
    for (int k = 0; k < 5; ++k) {
      const double v = (mu + k) * (mu + k + 1);
      EXPECT_NEAR(roots[k], v, 1e-8 * std::max(1.0, v)) << "mu " << mu << " n " << k;
    }
  }
}

TEST(Aim, DeltaVanishesAtExactEigenvalue) {
  const AimProblem p = angular_aim_problem(2.0, 12.0);
  EXPECT_LT(std::abs(aim_delta_relative(p, 3)), 1e-12);
  const AimResult r = aim_run(p, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations_used, 3);
}

TEST(Aim, NonEigenvalueDoesNotConverge) {
  const AimResult r = aim_run(angular_aim_problem(2.0, 13.0), 6);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations_used, 6);
}

TEST(Aim, ErrorPaths) {
  const AimProblem p = angular_aim_problem(1.0, 2.0, 2.0, 8);
  EXPECT_THROW(aim_delta(p, 0), Error);
  EXPECT_THROW(aim_delta(p, 9), Error);
  try {
    aim_quantize(angular_family(1.0), 2.5, 5.0, 4);
    FAIL() << "expected NoSignChange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSignChange);
  }
}
