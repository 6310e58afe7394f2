#pragma once

// Potential parameters, unit conventions and the Pekeris treatment of the
// centrifugal barrier for the q-deformed Woods-Saxon plus ring-shaped problem.
//
// Units are MeV and fm throughout; the conversion constant hbar*c is explicit
// so that hbarc = 1 reproduces natural units.

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "kgaim/errors.hpp"
#include "kgaim/series_jet.hpp"

namespace kgaim {

inline constexpr double kHbarcCodata = 197.3269804;  // MeV fm
inline constexpr double kNucleonRestEnergy = 939.565;  // MeV

/// Deformation parameter q, stored as sign and log-magnitude.
///
/// The Woods-Saxon denominator is 1 + q exp((r - R0)/a); keeping ln|q| exact
/// lets q = -exp(R0/a) (the Hulthen substitution) cancel the R0/a shift
/// without rounding.
class Deformation {
 public:
  constexpr Deformation() = default;
  Deformation(double q)  // NOLINT: implicit, q is a plain number to callers
      : sign_(q > 0 ? 1 : (q < 0 ? -1 : 0)),
        log_magnitude_(q == 0 ? -std::numeric_limits<double>::infinity()
                              : std::log(std::abs(q))) {}

  static Deformation from_log(int sign, double log_magnitude) {
    Deformation d;
    d.sign_ = sign < 0 ? -1 : 1;
    d.log_magnitude_ = log_magnitude;
    return d;
  }

  double value() const {
    return sign_ == 0 ? 0.0 : sign_ * std::exp(log_magnitude_);
  }
  int sign() const { return sign_; }
  double log_magnitude() const { return log_magnitude_; }
  bool is_zero() const { return sign_ == 0; }

 private:
  int sign_ = 1;
  double log_magnitude_ = 0.0;
};

struct PotentialParams {
  double v0 = 67.5;    // MeV, well depth
  double r0 = 7.61;    // fm, radius
  double a = 0.65;     // fm, surface thickness
  Deformation q = 1.0;
  double alpha_ring = 0.0;  // MeV fm^2
  double beta_ring = 0.0;   // MeV fm^2

  /// R0/a, the dimensionless diffuseness ratio X.
  double diffuseness_ratio() const { return r0 / a; }
  bool has_ring() const { return alpha_ring != 0.0 || beta_ring != 0.0; }

  void validate() const {
    if (q.is_zero()) fail(ErrorCode::InvalidParameter, "q must be nonzero");
    if (!(v0 > 0)) fail(ErrorCode::InvalidParameter, "v0 must be positive");
    if (!(r0 > 0)) fail(ErrorCode::InvalidParameter, "r0 must be positive");
    if (!(a > 0)) fail(ErrorCode::InvalidParameter, "a must be positive");
    if (!std::isfinite(alpha_ring) || !std::isfinite(beta_ring))
      fail(ErrorCode::InvalidParameter, "ring strengths must be finite");
  }
};

struct ParticleContext {
  double m0c2 = kNucleonRestEnergy;  // MeV
  double hbarc = kHbarcCodata;       // MeV fm

  void validate() const {
    if (!(m0c2 > 0)) fail(ErrorCode::InvalidParameter, "mass must be positive");
    if (!(hbarc > 0)) fail(ErrorCode::InvalidParameter, "hbarc must be positive");
  }
};

enum class PekerisSource { PaperPrinted, Rederived, HulthenLimit };

inline std::string to_string(PekerisSource s) {
  switch (s) {
    case PekerisSource::PaperPrinted: return "paper";
    case PekerisSource::Rederived: return "rederived";
    case PekerisSource::HulthenLimit: return "hulthen";
  }
  return "?";
}

/// Expansion 1/(1+x)^2 ~ c0 + c1 y + c2 y^2 of the centrifugal factor.
struct PekerisCoefficients {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  PekerisSource provenance = PekerisSource::Rederived;

  double at(double y) const { return c0 + y * (c1 + y * c2); }
};

struct RadialScaledParams {
  double eps2 = 0;
  double b2 = 0;
  double g2 = 0;
  double mu = 0;     // sqrt(eps2), NaN when eps2 < 0
  double sigma = 0;  // sqrt(eps2 + b2 + g2), NaN when negative
  double nu = 0;     // sqrt(g2), NaN when g2 < 0
  bool complex_exponent = false;

  double sigma2() const { return eps2 + b2 + g2; }
};

struct AngularParams {
  int m = 0;
  double alpha_prime = 0;
  double beta_prime = 0;
  double mu_ang = 0;
  double v_ang = 0;
};

// ---------------------------------------------------------------------------
// Potential evaluation

/// 1 + q exp((r - R0)/a), with the q < 0 branch evaluated through expm1.
inline double woods_saxon_denominator(double r, const PotentialParams& p) {
  const double s = (p.q.log_magnitude() - p.r0 / p.a) + r / p.a;
  if (p.q.sign() > 0) return 1.0 + std::exp(s);
  return -std::expm1(s);
}

/// Occupation-like variable y = 1/(1 + q exp((r - R0)/a)).
inline double woods_saxon_y(double r, const PotentialParams& p) {
  return 1.0 / woods_saxon_denominator(r, p);
}

/// 1 - y, computed without cancellation.
inline double woods_saxon_one_minus_y(double r, const PotentialParams& p) {
  const double s = (p.q.log_magnitude() - p.r0 / p.a) + r / p.a;
  // 1 - y = q e^s / (1 + q e^s) = 1 / (1 + e^{-s}/q)
  if (p.q.sign() > 0) return 1.0 / (1.0 + std::exp(-s));
  return 1.0 / (1.0 - std::exp(-s));
}

inline double eval_woods_saxon(double r, const PotentialParams& p) {
  if (r < 0) fail(ErrorCode::InvalidParameter, "radius must be nonnegative");
  const double den = woods_saxon_denominator(r, p);
  if (std::abs(den) < 1e-14)
    fail(ErrorCode::PoleAtRadius,
         "Woods-Saxon denominator vanishes at r = " + format_number(r));
  return -p.v0 / den;
}

inline double eval_ring_shape(double r, double theta, const PotentialParams& p) {
  if (!(r > 0)) fail(ErrorCode::InvalidParameter, "radius must be positive");
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12)
    fail(ErrorCode::AxisSingularity, "ring-shaped term is singular on the z axis");
  const double c = std::cos(theta);
  return (p.alpha_ring + p.beta_ring * c * c) / (r * r * s * s);
}

/// q that turns the deformed Woods-Saxon well into the Hulthen form
/// V0/(e^{r/a} - 1).
inline Deformation hulthen_q(double x) {
  if (!(x > 0)) fail(ErrorCode::InvalidParameter, "X must be positive");
  return Deformation::from_log(-1, x);
}

// ---------------------------------------------------------------------------
// Pekeris coefficients

/// The alternative closed-form coefficient set, evaluated as it stands. Its C2
/// does not reproduce the curvature of 1/r^2 at R0.
inline PekerisCoefficients pekeris_paper(double q, double x) {
  if (q == 0) fail(ErrorCode::InvalidParameter, "q must be nonzero");
  if (!(x > 0)) fail(ErrorCode::InvalidParameter, "X must be positive");
  const double iq = 1.0 / q, iq2 = iq * iq;
  const double ix = 1.0 / x, ix2 = ix * ix;
  PekerisCoefficients c;
  c.c0 = 1.0 - (3.0 + 2.0 * iq - iq2) * ix + 3.0 * (1.0 + 2.0 * iq + iq2) * ix2;
  c.c1 = 2.0 * (3.0 + 2.0 * q - iq2) * ix -
         6.0 * (3.0 + q + 3.0 * iq + iq2) * ix2;
  c.c2 = -(2.0 * q + 3.0 * q * q - 2.0 * iq + iq2) * ix +
         3.0 * (6.0 + 4.0 * q + q * q + 4.0 * iq + iq2) * ix2;
  c.provenance = PekerisSource::PaperPrinted;
  return c;
}

/// Matches value, slope and curvature of 1/(1+x)^2 at x = 0.
inline PekerisCoefficients pekeris_rederived(double q, double x) {
  if (!(q > 0))
    fail(ErrorCode::InvalidParameter, "rederived Pekeris coefficients need q > 0");
  if (!(x > 0)) fail(ErrorCode::InvalidParameter, "X must be positive");

  // y(0), y'(0), y''(0) with y' = -X y (1-y).
  const double y0 = 1.0 / (1.0 + q);
  const double p = y0 * (1.0 - y0);
  const double dy = -x * p;
  const double d2y = x * x * p * (1.0 - 2.0 * y0);

  // h = c0 + c1 y + c2 y^2, h' = (c1 + 2 c2 y) y', h'' = (c1 + 2 c2 y) y'' + 2 c2 y'^2
  Eigen::Matrix3d m;
  m << 1.0, y0, y0 * y0,
       0.0, dy, 2.0 * y0 * dy,
       0.0, d2y, 2.0 * y0 * d2y + 2.0 * dy * dy;
  const Eigen::Vector3d g(1.0, -2.0, 6.0);

  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  lu.setThreshold(1e-14);
  if (!lu.isInvertible())
    fail(ErrorCode::SingularMatchingSystem, "Pekeris matching system is singular");
  const Eigen::Vector3d c = lu.solve(g);

  PekerisCoefficients out;
  out.c0 = c(0);
  out.c1 = c(1);
  out.c2 = c(2);
  out.provenance = PekerisSource::Rederived;
  return out;
}

inline PekerisCoefficients pekeris(PekerisSource source, double q, double x) {
  switch (source) {
    case PekerisSource::PaperPrinted: return pekeris_paper(q, x);
    case PekerisSource::Rederived: return pekeris_rederived(q, x);
    case PekerisSource::HulthenLimit: break;
  }
  return PekerisCoefficients{1.0, 0.0, 0.0, PekerisSource::HulthenLimit};
}

/// Value, slope and curvature of c0 + c1 y + c2 y^2 - 1/(1+x)^2 at x = 0,
/// with x = (r - R0)/R0 and y = 1/(1 + q e^{X x}). Zero for an exact match.
inline std::array<double, 3> pekeris_matching_residuals(const PekerisCoefficients& c, double q,
                                                        double x) {
  if (!(q > 0)) fail(ErrorCode::InvalidParameter, "matching residuals need q > 0");
  const Jet t = Jet::variable(0.0, 2);
  const Jet y = 1.0 / (1.0 + q * (t * x).exp());
  const Jet target = 1.0 / ((1.0 + t) * (1.0 + t));
  const Jet r = c.c0 + c.c1 * y + c.c2 * y * y - target;
  return {r.derivative_value(0), r.derivative_value(1), r.derivative_value(2)};
}

// ---------------------------------------------------------------------------
// Dimensionless radial parameters

/// eps^2, beta^2, gamma^2 at energy E and the ansatz exponents built from them.
/// l_eff may be non-integer; only l(l+1) enters.
inline RadialScaledParams radial_scaled(double energy, double l_eff,
                                        const PotentialParams& p,
                                        const ParticleContext& ctx,
                                        const PekerisCoefficients& c) {
  const double k = p.a / ctx.hbarc;
  const double k2 = k * k;
  const double x = p.diffuseness_ratio();
  const double lw = l_eff * (l_eff + 1.0) / (x * x);
  const double m = ctx.m0c2;

  RadialScaledParams s;
  s.eps2 = -(energy * energy - m * m) * k2 + lw * c.c0;
  s.b2 = -2.0 * energy * p.v0 * k2 + lw * c.c1;
  s.g2 = -p.v0 * p.v0 * k2 + lw * c.c2;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double sig2 = s.sigma2();
  s.mu = s.eps2 >= 0 ? std::sqrt(s.eps2) : nan;
  s.sigma = sig2 >= 0 ? std::sqrt(sig2) : nan;
  s.nu = s.g2 >= 0 ? std::sqrt(s.g2) : nan;
  s.complex_exponent = s.eps2 < 0 || sig2 < 0;
  return s;
}

/// alpha', beta' and mu_ang at energy E. The ring term enters the angular
/// equation as (E + m0c^2) V_RS / (hbar c)^2, which makes alpha', beta'
/// dimensionless.
inline AngularParams angular_params(int m, double energy, const PotentialParams& p,
                                    const ParticleContext& ctx) {
  const double scale = (energy + ctx.m0c2) / (ctx.hbarc * ctx.hbarc);
  AngularParams a;
  a.m = m;
  a.alpha_prime = scale * p.alpha_ring;
  a.beta_prime = scale * p.beta_ring;
  const double mu2 = double(m) * m + a.alpha_prime + a.beta_prime;
  a.mu_ang = mu2 >= 0 ? std::sqrt(mu2) : std::numeric_limits<double>::quiet_NaN();
  return a;
}

}  // namespace kgaim
