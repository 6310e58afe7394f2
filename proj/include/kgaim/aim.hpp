#pragma once

// Asymptotic Iteration Method for f'' = lambda0(y) f' + s0(y) f.
//
//   lambda_n = lambda_{n-1}' + s_{n-1} + lambda0 lambda_{n-1}
//   s_n      = s_{n-1}' + s0 lambda_{n-1}
//   delta_n  = s_n lambda_{n-1} - lambda_n s_{n-1}
//
// Derivatives are carried exactly by Taylor jets about the evaluation point,
// so lambda0 and s0 are supplied as jet-valued functions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "kgaim/errors.hpp"
#include "kgaim/model.hpp"
#include "kgaim/series_jet.hpp"

namespace kgaim {

using JetFunction = std::function<Jet(double center, int order)>;

struct AimProblem {
  JetFunction lambda0;
  JetFunction s0;
  double eval_point = 2.0;
  int max_iterations = 30;

  int jet_order() const { return max_iterations + 4; }
};

struct AimSequences {
  Jet lambda;
  Jet s;
};

struct AimResult {
  std::vector<double> delta_values;  // delta_1 .. delta_{iterations_used}
  bool converged = false;
  int iterations_used = 0;
};

namespace detail {

inline void check_iteration_count(const AimProblem& p, int n) {
  if (n < 0) fail(ErrorCode::InvalidParameter, "iteration count must be nonnegative");
  if (n > p.max_iterations)
    fail(ErrorCode::InvalidParameter,
         "iteration " + std::to_string(n) + " exceeds max_iterations " +
             std::to_string(p.max_iterations));
}

/// Runs the recursion, calling visit(k, lambda_{k-1}, s_{k-1}, lambda_k, s_k)
/// after each step.
template <typename Visit>
AimSequences iterate(const AimProblem& p, int n, Visit&& visit) {
  check_iteration_count(p, n);
  const int order = std::max(p.jet_order(), n + 2);
  const Jet l0 = p.lambda0(p.eval_point, order);
  const Jet s0 = p.s0(p.eval_point, order);
  Jet l = l0, s = s0;
  for (int k = 1; k <= n; ++k) {
    if (l.order() < 1)
      fail(ErrorCode::JetOrderExhausted,
           "jet order exhausted at iteration " + std::to_string(k));
    Jet ln = l.derivative() + s + l0 * l;
    Jet sn = s.derivative() + s0 * l;
    if (!visit(k, l, s, ln, sn)) return {std::move(ln), std::move(sn)};
    l = std::move(ln);
    s = std::move(sn);
  }
  return {std::move(l), std::move(s)};
}

}  // namespace detail

/// (lambda_n, s_n) as jets about the evaluation point.
inline AimSequences aim_iterate(const AimProblem& p, int n) {
  return detail::iterate(p, n, [](int, const Jet&, const Jet&, const Jet&, const Jet&) {
    return true;
  });
}

/// delta_n at the evaluation point.
inline double aim_delta(const AimProblem& p, int n) {
  if (n < 1) fail(ErrorCode::InvalidParameter, "delta needs n >= 1");
  double delta = 0;
  detail::iterate(p, n, [&](int k, const Jet& lp, const Jet& sp, const Jet& l, const Jet& s) {
    if (k == n) delta = s.value() * lp.value() - l.value() * sp.value();
    return true;
  });
  return delta;
}

/// delta_n divided by the larger of its two products; small values mean the
/// products cancel to within rounding.
inline double aim_delta_relative(const AimProblem& p, int n) {
  if (n < 1) fail(ErrorCode::InvalidParameter, "delta needs n >= 1");
  double rel = 0;
  detail::iterate(p, n, [&](int k, const Jet& lp, const Jet& sp, const Jet& l, const Jet& s) {
    if (k == n) {
      const double a = s.value() * lp.value();
      const double b = l.value() * sp.value();
      const double scale = std::max(std::abs(a), std::abs(b));
      rel = scale > 0 ? (a - b) / scale : 0.0;
    }
    return true;
  });
  return rel;
}

/// Iterates until the termination condition holds to rel_tol or n iterations
/// have run.
inline AimResult aim_run(const AimProblem& p, int n, double rel_tol = 1e-10) {
  AimResult r;
  detail::iterate(p, n, [&](int k, const Jet& lp, const Jet& sp, const Jet& l, const Jet& s) {
    const double a = s.value() * lp.value();
    const double b = l.value() * sp.value();
    r.delta_values.push_back(a - b);
    r.iterations_used = k;
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::abs(a - b) <= rel_tol * scale) {
      r.converged = true;
      return false;
    }
    return true;
  });
  return r;
}

using AimFamily = std::function<AimProblem(double)>;

struct QuantizeOptions {
  double rel_tol = 1e-10;
  std::uintmax_t max_evaluations = 200;
  int scan_points = 400;
};

/// Root of delta_n(t) inside [lo, hi]. Bracketing with secant/interpolation
/// steps (TOMS 748).
inline double aim_quantize(const AimFamily& family, double lo, double hi, int n,
                           const QuantizeOptions& opt = {}) {
  auto f = [&](double t) { return aim_delta(family(t), n); };
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0) == (fhi > 0))
    fail(ErrorCode::NoSignChange, "delta_" + std::to_string(n) + " has no sign change in [" +
                                      format_number(lo) + ", " + format_number(hi) + "]");
  std::uintmax_t iters = opt.max_evaluations;
  auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= opt.max_evaluations)
    fail(ErrorCode::MaxIterations, "AIM root refinement did not converge");
  return 0.5 * (a + b);
}

/// All sign changes of delta_n on a uniform scan of [lo, hi], refined and
/// sorted ascending.
inline std::vector<double> aim_roots(const AimFamily& family, double lo, double hi, int n,
                                     const QuantizeOptions& opt = {}) {
  std::vector<double> roots;
  const int m = std::max(2, opt.scan_points);
  double t_prev = lo;
  double f_prev = aim_delta(family(lo), n);
  for (int i = 1; i <= m; ++i) {
    const double t = lo + (hi - lo) * i / m;
    const double ft = aim_delta(family(t), n);
    if (std::isfinite(f_prev) && std::isfinite(ft) && f_prev != 0 &&
        (ft == 0 || (f_prev > 0) != (ft > 0))) {
      roots.push_back(ft == 0 ? t : aim_quantize(family, t_prev, t, n, opt));
    }
    t_prev = t;
    f_prev = ft;
  }
  return roots;
}

// ---------------------------------------------------------------------------
// The two problems of the Klein-Gordon separation

/// Radial problem after R = y^mu (1-y)^sigma f(y):
///   lambda0 = -(1 + 2mu - 2(mu+sigma+1) y) / (y(1-y))
///   s0      = ((mu+sigma)(mu+sigma+1) - nu^2) / (y(1-y))
inline AimProblem radial_aim_problem(double mu, double sigma, double nu2,
                                     double eval_point = 2.0, int max_iterations = 30) {
  AimProblem p;
  p.eval_point = eval_point;
  p.max_iterations = max_iterations;
  p.lambda0 = [=](double y0, int order) {
    const Jet y = Jet::variable(y0, order);
    const Jet inv_d = (y * (1.0 - y)).reciprocal();
    return -((1.0 + 2.0 * mu) - 2.0 * (mu + sigma + 1.0) * y) * inv_d;
  };
  p.s0 = [=](double y0, int order) {
    const Jet y = Jet::variable(y0, order);
    const Jet inv_d = (y * (1.0 - y)).reciprocal();
    return ((mu + sigma) * (mu + sigma + 1.0) - nu2) * inv_d;
  };
  return p;
}

/// Angular problem after H = (1-z^2)^{mu/2} f(z):
///   lambda0 = 2(mu+1) z / ((1+z)(1-z)),  s0 = (mu^2 + mu - v) / ((1+z)(1-z))
inline AimProblem angular_aim_problem(double mu_ang, double v, double eval_point = 2.0,
                                      int max_iterations = 30) {
  AimProblem p;
  p.eval_point = eval_point;
  p.max_iterations = max_iterations;
  p.lambda0 = [=](double z0, int order) {
    const Jet z = Jet::variable(z0, order);
    return 2.0 * (mu_ang + 1.0) * z / ((1.0 + z) * (1.0 - z));
  };
  p.s0 = [=](double z0, int order) {
    const Jet z = Jet::variable(z0, order);
    return (mu_ang * mu_ang + mu_ang - v) / ((1.0 + z) * (1.0 - z));
  };
  return p;
}

/// Angular family in t = v at fixed mu_ang.
inline AimFamily angular_family(double mu_ang, double eval_point = 2.0,
                                int max_iterations = 30) {
  return [=](double v) { return angular_aim_problem(mu_ang, v, eval_point, max_iterations); };
}

/// Radial family in t = E. mu and sigma follow from the scaled parameters at
/// E; sigma_sign selects the branch of sigma (negative for the q < 0
/// geometry). Outside the window where both exponents are real the family
/// yields NaN deltas.
inline AimFamily radial_energy_family(double l_eff, const PotentialParams& params,
                                      const ParticleContext& ctx,
                                      const PekerisCoefficients& coeffs, int sigma_sign = 1,
                                      double eval_point = 2.0, int max_iterations = 30) {
  return [=](double energy) {
    const RadialScaledParams s = radial_scaled(energy, l_eff, params, ctx, coeffs);
    return radial_aim_problem(s.mu, sigma_sign * s.sigma, s.g2, eval_point, max_iterations);
  };
}

}  // namespace kgaim
