#pragma once

// Eigenfunctions: Jacobi-polynomial radial functions, terminating-series
// angular functions, the azimuthal factor, and sampling.
//
// Radial: R(y) = N |y|^mu |1-y|^sigma P_n^{(2mu, 2sigma)}(1 - 2y) with
// y = 1/(1 + q e^{(r-R0)/a}). For q > 0 the function lives on the whole x line
// (0 < y < 1); for q < 0 it lives on r > r_pole (y < 0) and sigma is the
// negative root. Normalization is numerical in the measure dr.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "kgaim/errors.hpp"
#include "kgaim/model.hpp"
#include "kgaim/series_jet.hpp"
#include "kgaim/spectrum.hpp"

namespace kgaim {

// ---------------------------------------------------------------------------
// Polynomials

/// Generalized binomial coefficient x over k for real x.
inline double binomial_real(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (x - i) / (i + 1);
  return r;
}

/// Explicit sum P_n^{(a,b)}(z) = sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^{n-s}.
template <typename T>
T jacobi_poly_sum(int n, double a, double b, const T& z) {
  const T u = (z - 1.0) * 0.5, w = (z + 1.0) * 0.5;
  T acc = u * 0.0;
  for (int s = 0; s <= n; ++s) {
    T term = (u * 0.0) + binomial_real(n + a, n - s) * binomial_real(n + b, s);
    for (int i = 0; i < s; ++i) term = term * u;
    for (int i = 0; i < n - s; ++i) term = term * w;
    acc = acc + term;
  }
  return acc;
}

/// P_n^{(a,b)}(z) by the three-term recurrence. Falls back to the explicit sum
/// on the measure-zero parameter set where the recurrence divides by zero.
template <typename T>
T jacobi_poly(int n, double a, double b, const T& z) {
  if (n < 0) fail(ErrorCode::InvalidParameter, "Jacobi degree must be nonnegative");
  const T one = z * 0.0 + 1.0;
  if (n == 0) return one;
  T p0 = one;
  T p1 = (a + 1.0) + (a + b + 2.0) * (z - 1.0) * 0.5;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double den = 2.0 * k * (k + a + b) * (s - 2.0);
    if (den == 0.0) return jacobi_poly_sum(n, a, b, z);
    const T pk = ((s - 1.0) * (s * (s - 2.0) * z + (a * a - b * b)) * p1 -
                  2.0 * (k + a - 1.0) * (k + b - 1.0) * s * p0) /
                 den;
    p0 = std::move(p1);
    p1 = pk;
  }
  return p1;
}

inline double jacobi_poly(int n, double a, double b, double z) {
  return jacobi_poly<double>(n, a, b, z);
}

/// 2F1(-n, B; C; y) as a finite sum of n+1 terms. The terms alternate in sign
/// and cancel, so they are accumulated in extended precision.
inline double hypergeometric_terminating(int n, double b, double c, double y) {
  if (n < 0) fail(ErrorCode::InvalidParameter, "series length must be nonnegative");
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < n; ++k) {
    const long double ck = (long double)c + k;
    if (ck == 0.0L)
      fail(ErrorCode::PoleInDenominator,
           "C + " + std::to_string(k) + " vanishes inside the terminating series");
    term *= (long double)(k - n) * ((long double)b + k) / (ck * (k + 1)) * (long double)y;
    sum += term;
  }
  return double(sum);
}

/// P_n^{(a,b)}(1 - 2y) = (a+1)_n / n! 2F1(-n, n+a+b+1; a+1; y).
inline double jacobi_via_hypergeometric(int n, double a, double b, double y) {
  long double poch = 1.0L;
  for (int k = 0; k < n; ++k) poch *= ((long double)a + 1.0L + k) / (k + 1.0L);
  const long double bb = (long double)n + a + b + 1.0L;
  return double(poch * hypergeometric_terminating(n, double(bb), a + 1.0, y));
}

/// Integer-order associated Legendre function from the Rodrigues form
///   (-1)^m / (2^l l!) (1-z^2)^{m/2} d^{l+m}/dz^{l+m} (z^2 - 1)^l.
inline double associated_legendre_rodrigues(int l, int m, double z) {
  if (l < 0 || m < 0) fail(ErrorCode::InvalidParameter, "l and m must be nonnegative");
  if (m > l) return 0.0;
  // (z^2 - 1)^l = sum_k C(l,k) (-1)^{l-k} z^{2k}
  std::vector<long double> c(2 * l + 1, 0.0L);
  long double binom = 1.0L;
  for (int k = 0; k <= l; ++k) {
    c[2 * k] = binom * (((l - k) % 2) ? -1.0L : 1.0L);
    binom = binom * (l - k) / (k + 1);
  }
  for (int d = 0; d < l + m; ++d) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = c[i + 1] * (long double)(i + 1);
    c.pop_back();
  }
  long double poly = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) poly = poly * z + *it;
  long double scale = 1.0L;
  for (int i = 1; i <= l; ++i) scale *= 2.0L * i;
  const long double sign = (m % 2) ? -1.0L : 1.0L;
  return double(sign / scale * std::pow(1.0L - (long double)z * z, 0.5L * m) * poly);
}

// ---------------------------------------------------------------------------
// Radial

struct OdeResidual {
  double residual = 0;  // |R'' + k R|
  double scale = 0;     // |R''| + |k R|
};

struct RadialWavefunction {
  int n_r = 0;
  double energy = 0;
  double l_eff = 0;
  double mu = 0;
  double sigma = 0;  // signed: negative on the q < 0 geometry
  double nu = 0;     // sqrt(gamma^2), NaN when gamma^2 < 0
  double norm = 1;
  double a_nl = std::numeric_limits<double>::quiet_NaN();  // closed-form constant
  double a_nl_ratio = std::numeric_limits<double>::quiet_NaN();  // norm / a_nl
  double support_lo = -std::numeric_limits<double>::infinity();  // r_pole for q < 0
  double r_lo = 0;  // default sampling window
  double r_hi = 0;
  double weight_below_origin = 0;  // integral of R^2 over r < 0
  PotentialParams params;
  ParticleContext ctx;
  PekerisCoefficients coeffs;

  /// Unnormalized shape given y and 1 - y.
  double shape(double y, double one_minus_y) const {
    return std::pow(std::abs(y), mu) * std::pow(std::abs(one_minus_y), sigma) *
           jacobi_poly(n_r, 2.0 * mu, 2.0 * sigma, 1.0 - 2.0 * y);
  }

  double operator()(double r) const {
    if (r <= support_lo) return 0.0;
    return norm * shape(woods_saxon_y(r, params), woods_saxon_one_minus_y(r, params));
  }

  /// Taylor jet of R about r.
  Jet jet(double r, int order) const {
    const Jet s = Jet::variable(r, order) / params.a +
                  (params.q.log_magnitude() - params.r0 / params.a);
    const double sg = params.q.sign();
    const Jet e = s.exp();
    const Jet y = (1.0 + sg * e).reciprocal();
    const Jet omy = (1.0 + sg * (-s).exp()).reciprocal();  // 1 - y
    const Jet abs_y = sg > 0 ? y : -y;
    return norm * abs_y.pow(mu) * omy.pow(sigma) *
           jacobi_poly<Jet>(n_r, 2.0 * mu, 2.0 * sigma, 1.0 - 2.0 * y);
  }

  /// k(r) of R'' + k R = 0 with the Pekeris-substituted centrifugal term.
  double k_of_r(double r) const {
    const double y = woods_saxon_y(r, params);
    const double v = -params.v0 * y;
    const double hc2 = ctx.hbarc * ctx.hbarc;
    const double ll = l_eff * (l_eff + 1.0);
    return ((energy - v) * (energy - v) - ctx.m0c2 * ctx.m0c2) / hc2 -
           ll / (params.r0 * params.r0) * coeffs.at(y);
  }

  OdeResidual ode_residual(double r) const {
    const Jet j = jet(r, 2);
    const double d2 = j.derivative_value(2);
    const double kr = k_of_r(r) * j.value();
    return {std::abs(d2 + kr), std::abs(d2) + std::abs(kr)};
  }

  /// Sign changes on a uniform grid over the sampling window.
  int node_count(int points = 10000) const {
    int nodes = 0;
    double prev = 0.0;
    for (int i = 0; i < points; ++i) {
      const double r = r_lo + (r_hi - r_lo) * (i + 0.5) / points;
      const double v = (*this)(r);
      if (v != 0.0) {
        if (prev != 0.0 && (v > 0) != (prev > 0)) ++nodes;
        prev = v;
      }
    }
    return nodes;
  }
};

namespace detail {

/// Integral of R^2 dr = a * integral of R(y)^2 / |y(1-y)| dy over the support.
/// The integrand is written in terms of (y, 1-y) so endpoints keep full precision.
inline double radial_norm_integral(const RadialWavefunction& w, double y_from, double y_to) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  const double a = w.params.a;
  double val;
  if (w.params.q.sign() > 0) {
    const double mid = 0.5 * (y_from + y_to);
    auto f = [&](double y, double yc) {
      // yc is the signed distance to the nearer endpoint
      const double d_lo = (y < mid && yc != 0) ? -yc : y - y_from;
      const double d_hi = (y >= mid && yc != 0) ? yc : y_to - y;
      const double yy = y_from == 0.0 ? d_lo : y;
      const double omy = y_to == 1.0 ? d_hi : 1.0 - y;
      if (yy <= 0 || omy <= 0) return 0.0;
      const double s = w.shape(yy, omy);
      return a * s * s / (yy * omy);
    };
    val = ts.integrate(f, y_from, y_to, 1e-14);
  } else {
    // t = -y/(1-y) maps (-inf, 0) onto (0, 1); there
    //   R = t^mu (1-t)^{-(mu+sigma+n)} sum_s C(n+2mu, n-s) C(n+2sigma, s) t^s
    //   dr = a dt / t
    const int n = w.n_r;
    const double pa = 2.0 * w.mu, pb = 2.0 * w.sigma;
    const double tail = -(w.mu + w.sigma + n);
    auto f = [&](double t, double tc) {
      const double omt = (t >= 0.5 && tc != 0) ? tc : 1.0 - t;
      if (t <= 0 || omt <= 0) return 0.0;
      double poly = 0;
      for (int k = n; k >= 0; --k)
        poly = poly * t + binomial_real(n + pa, n - k) * binomial_real(n + pb, k);
      const double s = std::pow(t, w.mu) * std::pow(omt, tail) * poly;
      return a * s * s / t;
    };
    const auto to_t = [](double y) { return std::isinf(y) ? 1.0 : -y / (1.0 - y); };
    val = std::abs(ts.integrate(f, to_t(y_to), to_t(y_from), 1e-14));
  }
  if (!std::isfinite(val) || !(val >= 0))
    fail(ErrorCode::QuadratureFailure, "radial normalization integral is not finite");
  return val;
}

inline double closed_form_anl(int n, double mu, double sigma) {
  using boost::math::tgamma;
  const double pre = tgamma(2.0 * mu + n) / tgamma(2.0 * mu);
  const double br = (n + mu + sigma + 0.5) / tgamma(n + 1.0) *
                    tgamma(n + 2.0 * (mu + sigma) + 1.0) /
                    (tgamma(n + 2.0 * mu + 1.0) * tgamma(n + 2.0 * sigma + 1.0));
  return br >= 0 ? pre * std::sqrt(br) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

/// Builds and normalizes the radial eigenfunction of a bound level.
inline RadialWavefunction radial_wavefunction(const EnergyLevel& level,
                                              const PotentialParams& params,
                                              const ParticleContext& ctx,
                                              const PekerisCoefficients& coeffs,
                                              double tail = 1e-12) {
  if (!level.bound || !std::isfinite(level.energy))
    fail(ErrorCode::NotBound, "level is not bound: " + level.status);
  params.validate();
  RadialWavefunction w;
  w.n_r = level.qn.n_r;
  w.energy = level.energy;
  w.l_eff = level.qn.l_eff;
  w.params = params;
  w.ctx = ctx;
  w.coeffs = coeffs;
  const RadialScaledParams s = radial_scaled(level.energy, level.qn.l_eff, params, ctx, coeffs);
  w.mu = s.mu;
  w.nu = s.nu;
  // sigma from the quantization relation keeps the sign of the chosen root
  w.sigma = level.n_cap - s.mu;
  if (!(w.mu > 0)) fail(ErrorCode::NotBound, "mu is not positive");

  const double shift = params.r0 - params.a * params.q.log_magnitude();
  const double decade = -std::log(tail);
  w.r_hi = std::max(params.r0 + 20.0 * params.a, shift + params.a * decade / w.mu);
  if (params.q.sign() > 0) {
    w.r_lo = shift - params.a * decade / std::max(w.sigma, 1e-3);
    w.support_lo = -std::numeric_limits<double>::infinity();
  } else {
    w.r_lo = shift;
    w.support_lo = shift;
  }

  const double y_end = params.q.sign() > 0 ? 1.0 : -std::numeric_limits<double>::infinity();
  double total = params.q.sign() > 0 ? detail::radial_norm_integral(w, 0.0, 1.0)
                                     : detail::radial_norm_integral(w, y_end, 0.0);
  if (!(total > 0)) fail(ErrorCode::QuadratureFailure, "radial norm integral vanishes");
  w.norm = 1.0 / std::sqrt(total);

  // P_n^{(a,b)}(1) > 0, so the outer tail is already positive

  if (params.q.sign() > 0) {
    const double y0 = woods_saxon_y(0.0, params);
    if (y0 < 1.0) w.weight_below_origin = detail::radial_norm_integral(w, y0, 1.0) / total;
  }

  w.a_nl = detail::closed_form_anl(w.n_r, w.mu, w.sigma);
  w.a_nl_ratio = std::abs(w.norm) / w.a_nl;
  return w;
}

/// Plain overlap integral of R1 R2 dr over the shared support.
inline double radial_overlap(const RadialWavefunction& w1, const RadialWavefunction& w2,
                             bool klein_gordon_weight = false) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  const double a = w1.params.a;
  auto f = [&](double y, double omy) {
    const double v = -w1.params.v0 * y;
    const double weight =
        klein_gordon_weight ? (w1.energy + w2.energy - 2.0 * v) / (2.0 * w1.ctx.m0c2) : 1.0;
    return a * w1.norm * w1.shape(y, omy) * w2.norm * w2.shape(y, omy) * weight /
           std::abs(y * omy);
  };
  if (w1.params.q.sign() > 0) {
    return ts.integrate(
        [&](double y, double yc) {
          const double yy = (y < 0.5 && yc != 0) ? -yc : y;
          const double om = (y >= 0.5 && yc != 0) ? yc : 1.0 - y;
          if (yy <= 0 || om <= 0) return 0.0;
          return f(yy, om);
        },
        0.0, 1.0, 1e-14);
  }
  return ts.integrate(
      [&](double y) { return y >= 0 ? 0.0 : f(y, 1.0 - y); },
      -std::numeric_limits<double>::infinity(), 0.0, 1e-14);
}

// ---------------------------------------------------------------------------
// Angular

struct AngularWavefunction {
  int n_theta = 0;
  int m = 0;
  double mu_ang = 0;
  double v_ang = 0;
  double l_eff = std::numeric_limits<double>::quiet_NaN();
  double l_prime = 0;
  double norm = 1;
  std::vector<double> poly;  // f(z) = sum poly[k] z^k

  template <typename T>
  T f(const T& z) const {
    T acc = z * 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  double operator()(double z) const {
    const double w = 1.0 - z * z;
    if (w < 0) return 0.0;
    return norm * std::pow(w, 0.5 * mu_ang) * f(z);
  }

  Jet jet(double z, int order) const {
    const Jet zz = Jet::variable(z, order);
    const Jet w = 1.0 - zz * zz;
    const Jet env = mu_ang == 0.0 ? Jet::constant(z, 1.0, order) : w.pow(0.5 * mu_ang);
    return norm * env * f(zz);
  }

  /// Residual of (1-z^2) H'' - 2z H' + [v - mu^2/(1-z^2)] H = 0.
  OdeResidual ode_residual(double z) const {
    const Jet h = jet(z, 2);
    const double w = 1.0 - z * z;
    const double t2 = w * h.derivative_value(2);
    const double t1 = -2.0 * z * h.derivative_value(1);
    const double t0 = (v_ang - mu_ang * mu_ang / w) * h.value();
    return {std::abs(t2 + t1 + t0), std::abs(t2) + std::abs(t1) + std::abs(t0)};
  }

  int node_count(int points = 10000) const {
    int nodes = 0;
    double prev = 0.0;
    for (int i = 0; i < points; ++i) {
      const double z = -1.0 + 2.0 * (i + 0.5) / points;
      const double v = f(z);
      if (v != 0.0) {
        if (prev != 0.0 && (v > 0) != (prev > 0)) ++nodes;
        prev = v;
      }
    }
    return nodes;
  }
};

/// Angular eigenfunction H(z) = N (1-z^2)^{mu/2} f(z) with f the terminating
/// series c_{k+2} = [(k+mu)(k+mu+1) - v] c_k / ((k+2)(k+1)). The phase makes
/// f(1) > 0; normalization is over z in [-1, 1].
inline AngularWavefunction angular_wavefunction(int n_theta, int m, double alpha_prime,
                                                double beta_prime) {
  if (n_theta < 0) fail(ErrorCode::InvalidParameter, "n_theta must be nonnegative");
  const double mu2 = double(m) * m + alpha_prime + beta_prime;
  if (mu2 < 0) fail(ErrorCode::ComplexOrder, "m^2 + alpha' + beta' < 0");
  AngularWavefunction w;
  w.n_theta = n_theta;
  w.m = m;
  w.mu_ang = std::sqrt(mu2);
  const double k = n_theta + w.mu_ang;
  w.v_ang = k * (k + 1.0);
  w.l_prime = k;
  const double disc = (k + 0.5) * (k + 0.5) - beta_prime;
  if (disc >= 0) w.l_eff = -0.5 + std::sqrt(disc);

  w.poly.assign(n_theta + 1, 0.0);
  w.poly[n_theta % 2] = 1.0;
  for (int j = n_theta % 2; j + 2 <= n_theta; j += 2) {
    const double jm = j + w.mu_ang;
    w.poly[j + 2] = (jm * (jm + 1.0) - w.v_ang) / ((j + 2.0) * (j + 1.0)) * w.poly[j];
  }
  double at_one = 0;
  for (double c : w.poly) at_one += c;
  if (at_one < 0)
    for (double& c : w.poly) c = -c;

  boost::math::quadrature::tanh_sinh<double> ts(15);
  const double total = ts.integrate(
      [&](double z, double zc) {
        const double d = (zc != 0) ? std::abs(zc) : 1.0 - std::abs(z);
        const double w1 = d * (2.0 - d);  // 1 - z^2 without cancellation
        const double fz = w.f(z);
        return std::pow(w1, w.mu_ang) * fz * fz;
      },
      -1.0, 1.0, 1e-14);
  if (!std::isfinite(total) || !(total > 0))
    fail(ErrorCode::QuadratureFailure, "angular normalization integral failed");
  w.norm = 1.0 / std::sqrt(total);
  return w;
}

// ---------------------------------------------------------------------------
// Azimuthal and sampling

inline std::complex<double> azimuthal(int m, double phi) {
  return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), m * phi);
}

enum class GridKind { Uniform, Log };

struct GridSpec {
  GridKind kind = GridKind::Uniform;
  double lo = std::numeric_limits<double>::quiet_NaN();  // default: wavefunction window
  double hi = std::numeric_limits<double>::quiet_NaN();
  int points = 1000;
};

struct Sample {
  double x = 0;
  double value = 0;
};

namespace detail {

inline std::vector<double> make_grid(const GridSpec& g, double lo, double hi) {
  if (g.points < 1) fail(ErrorCode::InvalidParameter, "grid needs at least one point");
  if (!(hi >= lo)) fail(ErrorCode::InvalidParameter, "grid upper bound below lower bound");
  std::vector<double> xs(g.points);
  if (g.points == 1) {
    xs[0] = hi;
    return xs;
  }
  for (int i = 0; i < g.points; ++i) {
    const double t = double(i) / (g.points - 1);
    if (g.kind == GridKind::Uniform) {
      xs[i] = lo + (hi - lo) * t;
    } else {
      // geometric in the offset from lo, first step 1e-4 of the span
      const double span = hi - lo;
      const double first = 1e-4 * span;
      xs[i] = i == 0 ? lo : lo + first * std::pow(span / first, double(i - 1) / (g.points - 2));
    }
  }
  xs.back() = hi;
  return xs;
}

}  // namespace detail

inline std::vector<Sample> sample_wavefunction(const RadialWavefunction& w, const GridSpec& g) {
  const double lo = std::isnan(g.lo) ? w.r_lo : g.lo;
  const double hi = std::isnan(g.hi) ? w.r_hi : g.hi;
  std::vector<Sample> out;
  for (double r : detail::make_grid(g, lo, hi)) out.push_back({r, w(r)});
  return out;
}

inline std::vector<Sample> sample_wavefunction(const AngularWavefunction& w, const GridSpec& g) {
  const double lo = std::isnan(g.lo) ? -1.0 : g.lo;
  const double hi = std::isnan(g.hi) ? 1.0 : g.hi;
  std::vector<Sample> out;
  for (double z : detail::make_grid(g, lo, hi)) out.push_back({z, w(z)});
  return out;
}

}  // namespace kgaim
