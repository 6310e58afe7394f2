#pragma once

// Bound-state energies of the radial and angular problems and of the coupled
// ring-shaped system.
//
// The radial levels follow from eps + sigma = N with
//   N = -n - 1/2 +- sqrt(1 + 4 gamma^2)/2,   eps = (N^2 - beta^2 - gamma^2)/(2N).
// The canonical path solves that relation for E by bracketing; the expanded
// closed form is evaluated separately and cross-checked.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "kgaim/errors.hpp"
#include "kgaim/model.hpp"

namespace kgaim {

enum class Branch { Minus, Plus };
enum class Method { ClosedForm24, RootSolve23, SelfConsistent37, Oracle };

/// Which sign of sqrt(1 + 4 gamma^2) defines N.
///
/// For q > 0 the solution lives on 0 < y < 1 (the whole x line) and needs
/// sigma > 0, which only the upper root allows. For q < 0 the physical
/// interval is y < 0, ending at the pole of the potential, and the regular
/// solution there, R ~ |y|^{N+n}, needs the lower root.
enum class QuantizationRoot { Upper, Lower };

inline std::string to_string(Branch b) { return b == Branch::Minus ? "minus" : "plus"; }

inline std::string to_string(Method m) {
  switch (m) {
    case Method::ClosedForm24: return "closed";
    case Method::RootSolve23: return "rootsolve";
    case Method::SelfConsistent37: return "selfconsistent";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

struct QuantumNumbers {
  int n_r = 0;
  int n_theta = 0;
  int m = 0;
  double l_eff = 0;
};

struct EnergyLevel {
  QuantumNumbers qn;
  double energy = std::numeric_limits<double>::quiet_NaN();
  Branch branch = Branch::Minus;
  Method method = Method::RootSolve23;
  bool bound = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::quiet_NaN();  // |eps + sigma - N|
  double angular_residual = 0.0;  // |l(l+1) + beta' - v|, coupled solve only
  double n_cap = std::numeric_limits<double>::quiet_NaN();
  RadialScaledParams scaled;  // at the level energy
  std::string status;         // "bound" or the reason it is not
};

struct BigN {
  double n_cap = 0;
  double n_prime = 0;
};

inline QuantizationRoot natural_root(const PotentialParams& p) {
  return p.q.sign() > 0 ? QuantizationRoot::Upper : QuantizationRoot::Lower;
}

inline BigN big_n(int n_r, double g2, QuantizationRoot root = QuantizationRoot::Upper) {
  if (n_r < 0) fail(ErrorCode::InvalidParameter, "n_r must be nonnegative");
  const double disc = 1.0 + 4.0 * g2;
  if (disc < 0) fail(ErrorCode::NoBoundWindow, "1 + 4 gamma^2 < 0");
  const double s = root == QuantizationRoot::Upper ? 0.5 : -0.5;
  BigN b;
  b.n_cap = -n_r - 0.5 + s * std::sqrt(disc);
  b.n_prime = 2.0 * b.n_cap;
  return b;
}

namespace detail {

inline double root_sign(QuantizationRoot r) { return r == QuantizationRoot::Upper ? 1.0 : -1.0; }

/// Fills the derived fields of a level at its energy and decides whether it
/// is a normalizable state.
inline void classify(EnergyLevel& lv, QuantizationRoot root, const PotentialParams& p,
                     const ParticleContext& ctx, const PekerisCoefficients& c) {
  lv.scaled = radial_scaled(lv.energy, lv.qn.l_eff, p, ctx, c);
  const auto& s = lv.scaled;
  const double n = lv.n_cap;
  const double sig2 = s.sigma2();
  lv.residual = std::abs(std::sqrt(std::max(s.eps2, 0.0)) +
                         root_sign(root) * std::sqrt(std::max(sig2, 0.0)) - n);

  const double eps_rhs = (n * n - s.b2 - s.g2) / (2.0 * n);
  const double sigma = n - eps_rhs;
  if (!std::isfinite(lv.energy)) {
    lv.bound = false;
    lv.status = "no energy";
  } else if (!(std::abs(lv.energy) < ctx.m0c2)) {
    lv.bound = false;
    lv.status = "energy outside (-m0c2, m0c2)";
  } else if (!(s.eps2 > 0) || !(eps_rhs > 0)) {
    lv.bound = false;
    lv.status = "no decaying tail (eps <= 0)";
  } else if (root == QuantizationRoot::Upper && !(n > 0 && sigma > 0)) {
    lv.bound = false;
    lv.status = "sigma <= 0: solution grows at y -> 1";
  } else if (root == QuantizationRoot::Lower && !(n + lv.qn.n_r < 0)) {
    lv.bound = false;
    lv.status = "irregular at the potential pole";
  } else {
    lv.bound = true;
    lv.status = "bound";
  }
}

inline double bracket_tolerance(double x) {
  return std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(x));
}

/// Center and half-width of the pair of energies solving the quantization
/// relation, in the expanded closed form. The literal reading divides the first
/// radicand term by D instead of multiplying.
struct ClosedFormTerms {
  double center;
  double half_width;  // N'/D sqrt(radicand), signed with N'
  double radicand;
};

inline ClosedFormTerms closed_form_terms(double n_prime, double l_eff, const PotentialParams& p,
                                    const ParticleContext& ctx, const PekerisCoefficients& c,
                                    bool literal) {
  const double hc = ctx.hbarc, a = p.a, r0 = p.r0, v0 = p.v0, m = ctx.m0c2;
  const double ll = l_eff * (l_eff + 1.0);
  const double d = n_prime * n_prime + 4.0 * v0 * v0 * a * a / (hc * hc);
  const double c12 = c.c1 + c.c2;
  ClosedFormTerms t;
  t.center = -0.5 * v0 * (1.0 - 4.0 * c12 * a * a * ll / (r0 * r0 * d));
  const double first =
      m * m + hc * hc * ll * (c.c0 + 0.5 * c.c1 + 0.5 * c.c2) / (r0 * r0);
  const double last = hc * a * ll * c12 / (r0 * r0);
  t.radicand = (literal ? first / d : first * d) - hc * hc * d * d / (16.0 * a * a) -
               last * last;
  t.half_width = t.radicand >= 0 ? n_prime / d * std::sqrt(t.radicand)
                                 : std::numeric_limits<double>::quiet_NaN();
  return t;
}

inline Branch branch_of(double energy, double n_prime, double center) {
  // E = center -+ (N'/D) sqrt(rad): the minus branch sits on the side opposite N'.
  const bool below = energy < center;
  return (below == (n_prime > 0)) ? Branch::Minus : Branch::Plus;
}

}  // namespace detail

struct RootSolveOptions {
  int scan_points = 2000;
  double edge = 1e-6;  // MeV kept clear of +-m0c2
  std::optional<QuantizationRoot> root;  // default: natural_root(params)
};

/// Solves eps(E) = (N^2 - beta^2(E) - gamma^2) / (2N) for E in (-m0c2, m0c2).
/// Among several roots a bound one is preferred, the highest if more than one.
inline EnergyLevel radial_energy_rootsolve(int n_r, double l_eff, const PotentialParams& p,
                                           const ParticleContext& ctx,
                                           const PekerisCoefficients& c,
                                           const RootSolveOptions& opt = {}) {
  p.validate();
  ctx.validate();
  const QuantizationRoot root = opt.root.value_or(natural_root(p));
  const double g2 = radial_scaled(0.0, l_eff, p, ctx, c).g2;
  const BigN bn = big_n(n_r, g2, root);
  if (std::abs(bn.n_cap) < 1e-12) fail(ErrorCode::Degenerate, "N vanishes");
  const double n = bn.n_cap;

  auto f = [&](double e) {
    const RadialScaledParams s = radial_scaled(e, l_eff, p, ctx, c);
    if (s.eps2 < 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(s.eps2) - (n * n - s.b2 - s.g2) / (2.0 * n);
  };

  const double lo = -ctx.m0c2 + opt.edge, hi = ctx.m0c2 - opt.edge;
  const int m = std::max(2, opt.scan_points);
  std::vector<double> roots;
  double e_prev = lo, f_prev = f(lo);
  for (int i = 1; i <= m; ++i) {
    const double e = lo + (hi - lo) * i / m;
    const double fe = f(e);
    if (std::isfinite(f_prev) && std::isfinite(fe)) {
      if (fe == 0) {
        roots.push_back(e);
      } else if (f_prev != 0 && (f_prev > 0) != (fe > 0)) {
        auto [a, b] = boost::math::tools::bisect(
            f, e_prev, e, [](double x, double y) {
              return std::abs(y - x) <= detail::bracket_tolerance(x);
            });
        roots.push_back(0.5 * (a + b));
      }
    }
    e_prev = e;
    f_prev = fe;
  }
  if (roots.empty())
    fail(ErrorCode::NoBoundState, "no sign change of the quantization function for n_r = " +
                                      std::to_string(n_r));

  std::optional<EnergyLevel> best;
  for (double e : roots) {
    EnergyLevel lv;
    lv.qn.n_r = n_r;
    lv.qn.l_eff = l_eff;
    lv.method = Method::RootSolve23;
    lv.energy = e;
    lv.n_cap = n;
    lv.iterations = 1;
    detail::classify(lv, root, p, ctx, c);
    const auto t = detail::closed_form_terms(bn.n_prime, l_eff, p, ctx, c, false);
    lv.branch = detail::branch_of(e, bn.n_prime, t.center);
    if (!best || (lv.bound && !best->bound) ||
        (lv.bound == best->bound && lv.energy > best->energy))
      best = lv;
  }
  return *best;
}

enum class ClosedFormReading { Consistent, Literal };

/// The expanded closed form for one or both branches. With no branch given the
/// bound one is returned (the higher one if both are).
inline EnergyLevel radial_energy_closed24(int n_r, double l_eff, const PotentialParams& p,
                                          const ParticleContext& ctx,
                                          const PekerisCoefficients& c,
                                          std::optional<Branch> branch = std::nullopt,
                                          ClosedFormReading reading = ClosedFormReading::Consistent,
                                          std::optional<QuantizationRoot> root_opt = {}) {
  p.validate();
  ctx.validate();
  const QuantizationRoot root = root_opt.value_or(natural_root(p));
  const double g2 = radial_scaled(0.0, l_eff, p, ctx, c).g2;
  const BigN bn = big_n(n_r, g2, root);
  if (std::abs(bn.n_cap) < 1e-12) fail(ErrorCode::Degenerate, "N vanishes");
  const auto t = detail::closed_form_terms(bn.n_prime, l_eff, p, ctx, c,
                                        reading == ClosedFormReading::Literal);
  if (t.radicand < 0) fail(ErrorCode::ComplexEnergy, "closed-form radicand is negative");

  auto make = [&](Branch b) {
    EnergyLevel lv;
    lv.qn.n_r = n_r;
    lv.qn.l_eff = l_eff;
    lv.method = Method::ClosedForm24;
    lv.branch = b;
    lv.energy = b == Branch::Minus ? t.center - t.half_width : t.center + t.half_width;
    lv.n_cap = bn.n_cap;
    detail::classify(lv, root, p, ctx, c);
    return lv;
  };
  if (branch) return make(*branch);

  EnergyLevel minus = make(Branch::Minus), plus = make(Branch::Plus);
  if (minus.bound && plus.bound) return minus.energy > plus.energy ? minus : plus;
  if (minus.bound) return minus;
  if (plus.bound) return plus;
  return minus.residual <= plus.residual ? minus : plus;
}

struct AngularEigen {
  double mu_ang = 0;
  double v_ang = 0;
  double l_eff = 0;
  double l_prime = 0;  // associated Legendre degree, l'(l'+1) = v
};

/// v = (mu + n)(mu + n + 1) and the effective orbital number on the
/// l >= -1/2 branch, l = -1/2 + sqrt((n + mu + 1/2)^2 - beta').
inline AngularEigen angular_eigenvalue(int n_theta, int m, double alpha_prime,
                                       double beta_prime) {
  if (n_theta < 0) fail(ErrorCode::InvalidParameter, "n_theta must be nonnegative");
  const double mu2 = double(m) * m + alpha_prime + beta_prime;
  if (mu2 < 0) fail(ErrorCode::ComplexOrder, "m^2 + alpha' + beta' < 0");
  AngularEigen a;
  a.mu_ang = std::sqrt(mu2);
  const double k = n_theta + a.mu_ang;
  a.v_ang = k * (k + 1.0);
  const double h = k + 0.5;
  const double disc = h * h - beta_prime;
  if (disc < 0) fail(ErrorCode::ComplexOrbital, "(n + mu + 1/2)^2 - beta' < 0");
  a.l_eff = -0.5 + std::sqrt(disc);
  a.l_prime = k;
  return a;
}

struct SelfConsistentOptions {
  double energy_tol = 1e-10;  // MeV
  int max_iterations = 200;
  double seed = 0.0;  // MeV
  RootSolveOptions inner;
};

namespace detail {

inline EnergyLevel radial_at_energy(int n_r, int n_theta, int m, double energy,
                                    const PotentialParams& p, const ParticleContext& ctx,
                                    const PekerisCoefficients& c, const RootSolveOptions& o,
                                    AngularEigen* ang_out = nullptr) {
  const AngularParams ap = angular_params(m, energy, p, ctx);
  const AngularEigen ang = angular_eigenvalue(n_theta, m, ap.alpha_prime, ap.beta_prime);
  if (ang_out) *ang_out = ang;
  EnergyLevel lv = radial_energy_rootsolve(n_r, ang.l_eff, p, ctx, c, o);
  lv.qn.n_theta = n_theta;
  lv.qn.m = m;
  return lv;
}

}  // namespace detail

/// Energy of the coupled radial/angular system with ring-shaped terms. The
/// angular constants depend on E, so E and l(E) are iterated to a fixed
/// point; if that stalls, the residual E - E_radial(l(E)) is bracketed and
/// bisected instead.
inline EnergyLevel combined_energy_selfconsistent(int n_r, int n_theta, int m,
                                                  const PotentialParams& p,
                                                  const ParticleContext& ctx,
                                                  const PekerisCoefficients& c,
                                                  const SelfConsistentOptions& opt = {}) {
  auto finish = [&](EnergyLevel lv, int iterations) {
    AngularEigen ang;
    const AngularParams ap = angular_params(m, lv.energy, p, ctx);
    ang = angular_eigenvalue(n_theta, m, ap.alpha_prime, ap.beta_prime);
    lv.method = Method::SelfConsistent37;
    lv.iterations = iterations;
    lv.qn.l_eff = ang.l_eff;
    lv.angular_residual =
        std::abs(ang.l_eff * (ang.l_eff + 1.0) + ap.beta_prime - ang.v_ang);
    const QuantizationRoot root = opt.inner.root.value_or(natural_root(p));
    lv.n_cap = big_n(n_r, radial_scaled(0.0, ang.l_eff, p, ctx, c).g2, root).n_cap;
    detail::classify(lv, root, p, ctx, c);
    return lv;
  };

  if (!p.has_ring()) {
    EnergyLevel lv = detail::radial_at_energy(n_r, n_theta, m, 0.0, p, ctx, c, opt.inner);
    return finish(lv, 1);
  }

  double e = opt.seed;
  double last_step = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int k = 1; k <= opt.max_iterations; ++k) {
    EnergyLevel lv = detail::radial_at_energy(n_r, n_theta, m, e, p, ctx, c, opt.inner);
    const double step = std::abs(lv.energy - e);
    if (step < opt.energy_tol) return finish(lv, k);
    growth = (k > 2 && step >= last_step) ? growth + 1 : 0;
    last_step = step;
    e = lv.energy;
    if (growth >= 5) break;
  }

  // Fixed point oscillates: bisect G(E) = E - E_radial(l(E)) around the last iterate.
  auto g = [&](double x) {
    return x - detail::radial_at_energy(n_r, n_theta, m, x, p, ctx, c, opt.inner).energy;
  };
  double w = std::max(1.0, 10.0 * last_step);
  double lo = e - w, hi = e + w;
  double glo = g(lo), ghi = g(hi);
  for (int i = 0; i < 20 && (glo > 0) == (ghi > 0); ++i) {
    w *= 2;
    lo = std::max(-ctx.m0c2 + 1e-6, e - w);
    hi = std::min(ctx.m0c2 - 1e-6, e + w);
    glo = g(lo);
    ghi = g(hi);
  }
  if ((glo > 0) == (ghi > 0))
    fail(ErrorCode::NonConvergence, "self-consistent energy iteration oscillates and no "
                                    "bracket for the coupled residual was found");
  auto [a, b] = boost::math::tools::bisect(g, lo, hi, [&](double x, double y) {
    return std::abs(y - x) <= std::max(opt.energy_tol, detail::bracket_tolerance(x));
  });
  const double root_e = 0.5 * (a + b);
  EnergyLevel lv = detail::radial_at_energy(n_r, n_theta, m, root_e, p, ctx, c, opt.inner);
  return finish(lv, opt.max_iterations);
}

/// Parameters for the Hulthen substitution q = -exp(R0/a); the centrifugal
/// expansion degenerates to c0 = 1, c1 = c2 = 0.
inline std::pair<PotentialParams, PekerisCoefficients> hulthen_setup(PotentialParams p) {
  p.q = hulthen_q(p.diffuseness_ratio());
  return {p, PekerisCoefficients{1.0, 0.0, 0.0, PekerisSource::HulthenLimit}};
}

/// s-wave level of V0/(e^{r/a} - 1).
inline EnergyLevel hulthen_energy(int n_r, const PotentialParams& params,
                                  const ParticleContext& ctx, RootSolveOptions opt = {}) {
  const auto [p, c] = hulthen_setup(params);
  opt.root = QuantizationRoot::Lower;
  return radial_energy_rootsolve(n_r, 0.0, p, ctx, c, opt);
}

struct QuantumRanges {
  std::vector<int> n_r;
  std::vector<int> n_theta;
  std::vector<int> m;
};

struct TableOptions {
  Method method = Method::RootSolve23;
  std::optional<Branch> branch;  // closed form only
  SelfConsistentOptions coupled;
};

/// Every (n_r, n_theta, m) combination sorted by energy; failures are kept as
/// unbound rows carrying the error text. Ring-shaped terms force the coupled
/// solve.
inline std::vector<EnergyLevel> spectrum_table(const QuantumRanges& ranges,
                                               const PotentialParams& p,
                                               const ParticleContext& ctx,
                                               const PekerisCoefficients& c,
                                               const TableOptions& opt = {}) {
  std::vector<EnergyLevel> rows;
  const Method method = p.has_ring() ? Method::SelfConsistent37 : opt.method;
  for (int n_r : ranges.n_r) {
    for (int n_theta : ranges.n_theta) {
      for (int m : ranges.m) {
        EnergyLevel lv;
        lv.qn = {n_r, n_theta, m, std::numeric_limits<double>::quiet_NaN()};
        lv.method = method;
        try {
          switch (method) {
            case Method::SelfConsistent37:
              lv = combined_energy_selfconsistent(n_r, n_theta, m, p, ctx, c, opt.coupled);
              break;
            case Method::ClosedForm24: {
              const double l = angular_eigenvalue(n_theta, m, 0.0, 0.0).l_eff;
              lv = radial_energy_closed24(n_r, l, p, ctx, c, opt.branch);
              break;
            }
            default: {
              const double l = angular_eigenvalue(n_theta, m, 0.0, 0.0).l_eff;
              lv = radial_energy_rootsolve(n_r, l, p, ctx, c, opt.coupled.inner);
              break;
            }
          }
          lv.qn.n_theta = n_theta;
          lv.qn.m = m;
        } catch (const Error& e) {
          lv.bound = false;
          lv.status = e.what();
          if (std::isnan(lv.qn.l_eff) && !p.has_ring())
            lv.qn.l_eff = n_theta + std::abs(m);
        }
        rows.push_back(std::move(lv));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const EnergyLevel& x, const EnergyLevel& y) {
    const bool xn = std::isnan(x.energy), yn = std::isnan(y.energy);
    if (xn != yn) return yn;
    if (!xn && x.energy != y.energy) return x.energy < y.energy;
    return std::tie(x.qn.n_r, x.qn.n_theta, x.qn.m) < std::tie(y.qn.n_r, y.qn.n_theta, y.qn.m);
  });
  return rows;
}

}  // namespace kgaim
