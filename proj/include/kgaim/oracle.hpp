#pragma once

// Independent numerical eigensolvers used as ground truth.
//
// Radial: R'' + k(r; E) R = 0 with k = ((E - V)^2 - m^2)/(hbar c)^2 - centrifugal,
// solved by Numerov shooting with node-count bisection and a Richardson
// step-halving error estimate.
//
// Angular: [(1-z^2) d/dz (1-z^2) d/dz + v(1-z^2) - mu^2] H = 0 as a symmetric
// tridiagonal pencil, with eigenvalues located by Sturm counts.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kgaim/errors.hpp"
#include "kgaim/model.hpp"
#include "kgaim/wavefunction.hpp"

namespace kgaim {

enum class PotentialMode { PekerisSubstituted, ExactCentrifugal, Hulthen };

/// WholeLine solves on (-inf, inf) with decay at both ends, which is the
/// problem the q > 0 closed form describes. HalfLine solves on (r0, inf)
/// with a regular solution at r0 (the origin, or the pole of the q < 0 well).
enum class Domain { Auto, WholeLine, HalfLine };

inline std::string to_string(PotentialMode m) {
  switch (m) {
    case PotentialMode::PekerisSubstituted: return "pekeris";
    case PotentialMode::ExactCentrifugal: return "exact";
    case PotentialMode::Hulthen: return "hulthen";
  }
  return "?";
}

struct RadialODEProblem {
  PotentialMode potential_mode = PotentialMode::PekerisSubstituted;
  Domain domain = Domain::Auto;
  PotentialParams params;
  ParticleContext ctx;
  PekerisCoefficients coeffs;
  double l_eff = 0;
  double r_min = 1e-6;  // fm, offset of the first log-grid point from the inner end
  double r_max = std::numeric_limits<double>::quiet_NaN();  // auto: R0 + 20a, extended
  double r_left = std::numeric_limits<double>::quiet_NaN();  // whole line only
  int mesh_points = 20000;  // intervals on the coarse mesh
  double energy_tol = 1e-10;  // MeV
  double mesh_tol = 1e-8;     // MeV, Richardson estimate limit
  bool auto_extend = true;    // widen the box until the tails are negligible
  bool richardson = true;
};

struct EigenResult {
  double eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double eigenvalue_coarse = std::numeric_limits<double>::quiet_NaN();  // mesh h
  double eigenvalue_fine = std::numeric_limits<double>::quiet_NaN();    // mesh h/2
  int node_count = -1;
  std::vector<Sample> eigenfunction_samples;
  bool converged = false;
  double est_error = std::numeric_limits<double>::quiet_NaN();
  double lo = 0;  // box actually used (r or z)
  double hi = 0;
  int mesh_points = 0;
};

namespace detail {

inline int sign_changes(const std::vector<double>& f, double floor = 0.0) {
  int n = 0;
  double prev = 0.0;
  for (double v : f) {
    if (std::abs(v) <= floor) continue;
    if (prev != 0.0 && (v > 0) != (prev > 0)) ++n;
    prev = v;
  }
  return n;
}

/// Geometry and coefficient arrays for one mesh.
class RadialShooter {
 public:
  RadialShooter(const RadialODEProblem& p, bool whole_line, double origin, double c0,
                double lo, double hi, int intervals)
      : p_(p), whole_(whole_line), origin_(origin), c0_(c0), n_(intervals) {
    const double ll = p.l_eff * (p.l_eff + 1.0);
    const double hc2 = p.ctx.hbarc * p.ctx.hbarc;
    if (whole_) {
      x0_ = lo;
      h_ = (hi - lo) / n_;
    } else {
      x0_ = std::log(lo - origin_);
      h_ = (std::log(hi - origin_) - x0_) / n_;
    }
    r_.resize(n_ + 1);
    v_.resize(n_ + 1);
    cent_.resize(n_ + 1);
    jac_.resize(n_ + 1);
    for (int i = 0; i <= n_; ++i) {
      const double x = x0_ + h_ * i;
      const double r = whole_ ? x : origin_ + std::exp(x);
      r_[i] = r;
      jac_[i] = whole_ ? 1.0 : (r - origin_) * (r - origin_);
      switch (p.potential_mode) {
        case PotentialMode::Hulthen:
          v_[i] = p.params.v0 / std::expm1(r / p.params.a);
          cent_[i] = ll / (r * r);
          break;
        case PotentialMode::ExactCentrifugal:
          v_[i] = -p.params.v0 * woods_saxon_y(r, p.params);
          cent_[i] = ll / (r * r);
          break;
        case PotentialMode::PekerisSubstituted: {
          const double y = woods_saxon_y(r, p.params);
          v_[i] = -p.params.v0 * y;
          cent_[i] = ll / (p.params.r0 * p.params.r0) * p.coeffs.at(y);
          break;
        }
      }
    }
    inv_hc2_ = 1.0 / hc2;
  }

  double k(int i, double e) const {
    const double d = e - v_[i];
    return (d * d - p_.ctx.m0c2 * p_.ctx.m0c2) * inv_hc2_ - cent_[i];
  }

  /// Coefficient g of phi'' + g phi = 0 in the mesh variable.
  double g(int i, double e) const { return whole_ ? k(i, e) : jac_[i] * k(i, e) - 0.25; }

  /// Sign changes of the outward solution across the whole mesh.
  int count(double e) const {
    int nodes = 0;
    double f0, f1;
    seeds(e, f0, f1);
    double prev = f1;
    const double c = h_ * h_ / 12.0;
    double w0 = 1.0 + c * g(0, e), w1 = 1.0 + c * g(1, e);
    for (int i = 1; i < n_; ++i) {
      const double w2 = 1.0 + c * g(i + 1, e);
      double f2 = ((12.0 - 10.0 * w1) * f1 - w0 * f0) / w2;
      if (std::abs(f2) > 1e150) {
        f2 *= 1e-150;
        f1 *= 1e-150;
      }
      if (f2 != 0.0 && (f2 > 0) != (prev > 0)) ++nodes;
      if (f2 != 0.0) prev = f2;
      f0 = f1;
      f1 = f2;
      w0 = w1;
      w1 = w2;
    }
    return nodes;
  }

  /// Matched eigenfunction R(r) at energy e, normalized to one in dr.
  std::vector<Sample> eigenfunction(double e) const {
    std::vector<double> out(n_ + 1, 0.0), in(n_ + 1, 0.0);
    const double c = h_ * h_ / 12.0;
    std::vector<double> w(n_ + 1);
    for (int i = 0; i <= n_; ++i) w[i] = 1.0 + c * g(i, e);

    int match = n_ / 2;
    for (int i = n_ - 1; i > 0; --i)
      if (k(i, e) > 0) {
        match = i;
        break;
      }
    match = std::clamp(match, 2, n_ - 2);

    seeds(e, out[0], out[1]);
    for (int i = 1; i < match; ++i) {
      out[i + 1] = ((12.0 - 10.0 * w[i]) * out[i] - w[i - 1] * out[i - 1]) / w[i + 1];
      if (std::abs(out[i + 1]) > 1e150)
        for (int j = 0; j <= i + 1; ++j) out[j] *= 1e-150;
    }
    in[n_] = 0.0;
    in[n_ - 1] = 1e-30;
    for (int i = n_ - 1; i > match; --i) {
      in[i - 1] = ((12.0 - 10.0 * w[i]) * in[i] - w[i + 1] * in[i + 1]) / w[i - 1];
      if (std::abs(in[i - 1]) > 1e150)
        for (int j = i - 1; j <= n_; ++j) in[j] *= 1e-150;
    }
    const double scale = in[match] != 0.0 ? out[match] / in[match] : 0.0;
    for (int i = match + 1; i <= n_; ++i) out[i] = in[i] * scale;

    std::vector<Sample> s(n_ + 1);
    double norm = 0.0;
    for (int i = 0; i <= n_; ++i) {
      const double rv = whole_ ? out[i] : std::sqrt(r_[i] - origin_) * out[i];
      s[i] = {r_[i], rv};
      const double weight = whole_ ? 1.0 : (r_[i] - origin_);  // dr = d dx
      const double trap = (i == 0 || i == n_) ? 0.5 : 1.0;
      norm += trap * rv * rv * weight * h_;
    }
    const double inv = norm > 0 ? 1.0 / std::sqrt(norm) : 0.0;
    double peak = 0;
    for (auto& x : s) peak = std::max(peak, std::abs(x.value *= inv));
    // outer tail positive
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      if (std::abs(it->value) > 1e-6 * peak) {
        if (it->value < 0)
          for (auto& x : s) x.value = -x.value;
        break;
      }
    return s;
  }

  double r(int i) const { return r_[i]; }
  int intervals() const { return n_; }

 private:
  void seeds(double e, double& f0, double& f1) const {
    if (whole_) {
      f0 = 0.0;
      f1 = 1e-30;
      return;
    }
    // R = d^s (1 + b d) with d = r - origin, d^2 k = c0 + c1 d + ..., and
    // b = -c1 / (2s); phi = R / sqrt(d) is scaled to start near unity
    const double kappa = std::sqrt(0.25 - c0_);
    const double sexp = 0.5 + kappa;
    const double d0 = r_[0] - origin_, d1 = r_[1] - origin_;
    const double c1 = (jac_[0] * k(0, e) - c0_) / d0;
    const double b = -c1 / (2.0 * sexp);
    f0 = 1.0 + b * d0;
    f1 = std::exp(kappa * h_) * (1.0 + b * d1);
  }

  const RadialODEProblem& p_;
  bool whole_;
  double origin_;
  double c0_;
  int n_;
  double x0_ = 0, h_ = 0, inv_hc2_ = 0;
  std::vector<double> r_, v_, cent_, jac_;
};

struct RadialLayout {
  bool whole_line = false;
  double origin = 0;   // inner end of the half line
  double center = 0;   // surface position R0 - a ln|q|
  double c0 = 0.0;  // limit of (r - origin)^2 k at the inner end
  double e_lo = 0, e_hi = 0;  // energy window with decaying ends
};

inline RadialLayout radial_layout(const RadialODEProblem& p) {
  const auto& P = p.params;
  const double m = p.ctx.m0c2, hc = p.ctx.hbarc;
  const double ll = p.l_eff * (p.l_eff + 1.0);
  RadialLayout L;
  L.center = P.r0 - P.a * P.q.log_magnitude();
  const bool pekeris = p.potential_mode == PotentialMode::PekerisSubstituted;
  L.whole_line = p.domain == Domain::WholeLine ||
                 (p.domain == Domain::Auto && pekeris && P.q.sign() > 0);
  if (L.whole_line && !pekeris)
    fail(ErrorCode::InvalidParameter, "the whole-line domain needs the Pekeris centrifugal term");
  if (L.whole_line && P.q.sign() < 0)
    fail(ErrorCode::InvalidParameter, "the whole-line domain needs q > 0");

  L.e_lo = -m + 1e-6;
  L.e_hi = m - 1e-6;
  if (L.whole_line) {
    // sigma^2 > 0: |E + V0| below the left-end threshold
    const double cl = m * m + ll * (p.coeffs.c0 + p.coeffs.c1 + p.coeffs.c2) * hc * hc /
                                  (P.r0 * P.r0);
    if (cl <= 0) fail(ErrorCode::NoBoundState, "left end of the line is never forbidden");
    const double half = std::sqrt(cl);
    L.e_lo = std::max(L.e_lo, -P.v0 - half + 1e-9);
    L.e_hi = std::min(L.e_hi, -P.v0 + half - 1e-9);
    if (!(L.e_hi > L.e_lo)) fail(ErrorCode::NoBoundState, "empty bound-energy window");
    return L;
  }

  double& c0 = L.c0;
  const double va = P.v0 * P.a / hc;
  switch (p.potential_mode) {
    case PotentialMode::Hulthen:
      L.origin = 0.0;
      c0 = va * va - ll;
      break;
    case PotentialMode::ExactCentrifugal:
      if (P.q.sign() < 0 && L.center > 0)
        fail(ErrorCode::InvalidParameter, "potential pole lies inside the half line");
      L.origin = 0.0;
      c0 = -ll;
      if (P.q.sign() < 0 && L.center == 0) c0 += va * va;
      break;
    case PotentialMode::PekerisSubstituted:
      if (P.q.sign() < 0) {
        L.origin = L.center;
        c0 = va * va - ll * p.coeffs.c2 * P.a * P.a / (P.r0 * P.r0);
      } else {
        L.origin = 0.0;
        c0 = 0.0;
      }
      break;
  }
  if (c0 >= 0.25)
    fail(ErrorCode::InvalidParameter, "inverse-square attraction at the inner end is too strong");
  return L;
}

/// Decay rates of the right and left tails at energy e.
inline void tail_rates(const RadialODEProblem& p, double e, double& right, double& left) {
  const auto& P = p.params;
  const double m = p.ctx.m0c2, hc = p.ctx.hbarc;
  const double ll = p.l_eff * (p.l_eff + 1.0);
  double kr2 = (m * m - e * e) / (hc * hc);
  if (p.potential_mode == PotentialMode::PekerisSubstituted)
    kr2 += ll * p.coeffs.c0 / (P.r0 * P.r0);
  right = std::sqrt(std::max(kr2, 1e-30));
  const double kl2 = (m * m - (e + P.v0) * (e + P.v0)) / (hc * hc) +
                     ll * (p.coeffs.c0 + p.coeffs.c1 + p.coeffs.c2) / (P.r0 * P.r0);
  left = std::sqrt(std::max(kl2, 1e-30));
}

/// Eigenvalue with target_nodes nodes on one mesh.
inline double shoot(const RadialShooter& s, const RadialLayout& L, int target, double tol) {
  const int c_lo = s.count(L.e_lo);
  const int c_hi = s.count(L.e_hi);
  const bool rising = c_hi >= c_lo;
  const int cmin = std::min(c_lo, c_hi), cmax = std::max(c_lo, c_hi);
  if (target < cmin || target >= cmax)
    fail(ErrorCode::NoBoundState, "no level with " + std::to_string(target) +
                                      " nodes in the bound window (counts " +
                                      std::to_string(cmin) + ".." + std::to_string(cmax) + ")");
  // the level sits where the count passes from target to target + 1
  double lo = L.e_lo, hi = L.e_hi;
  auto above = [&](double e) {
    const int c = s.count(e);
    return rising ? c > target : c <= target;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (above(mid))
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)))
      break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Radial eigenvalue with target_nodes interior nodes.
inline EigenResult radial_eigenvalue(const RadialODEProblem& problem, int target_nodes) {
  if (target_nodes < 0) fail(ErrorCode::InvalidParameter, "target_nodes must be nonnegative");
  if (problem.mesh_points < 8) fail(ErrorCode::InvalidParameter, "mesh needs at least 8 intervals");
  problem.params.validate();
  problem.ctx.validate();
  const auto L = detail::radial_layout(problem);
  const auto& P = problem.params;
  const double tol = std::min(problem.energy_tol, 1e-2 * problem.mesh_tol);

  const double inner = L.whole_line ? 0.0 : L.origin + problem.r_min;
  double hi = std::isnan(problem.r_max) ? std::max(P.r0, L.center) + 20.0 * P.a : problem.r_max;
  double lo = L.whole_line
                  ? (std::isnan(problem.r_left) ? std::min(0.0, L.center) - 20.0 * P.a
                                                : problem.r_left)
                  : inner;
  if (!(hi > lo)) fail(ErrorCode::InvalidParameter, "r_max must exceed the inner end");

  double e = 0;
  for (int pass = 0; pass < 8; ++pass) {
    detail::RadialShooter s(problem, L.whole_line, L.origin, L.c0, lo, hi, problem.mesh_points);
    e = detail::shoot(s, L, target_nodes, tol);
    if (!problem.auto_extend) break;

    // outermost and innermost classically allowed points at e
    int i_out = -1, i_in = -1;
    for (int i = 0; i <= s.intervals(); ++i)
      if (s.k(i, e) > 0) {
        if (i_in < 0) i_in = i;
        i_out = i;
      }
    const double turn_out = i_out >= 0 ? s.r(i_out) : L.center;
    const double turn_in = i_in >= 0 ? s.r(i_in) : L.center;
    double kr, kl;
    detail::tail_rates(problem, e, kr, kl);
    const double need_hi = turn_out + 40.0 / kr;
    const double need_lo = turn_in - 40.0 / kl;
    bool grown = false;
    if (hi < need_hi) {
      hi = std::min(need_hi * 1.1 + 1.0, 1e5);
      grown = hi < 1e5;
    }
    if (L.whole_line && lo > need_lo) {
      lo = std::max(need_lo - 0.1 * std::abs(need_lo) - 1.0, -1e5);
      grown = grown || lo > -1e5;
    }
    if (!grown) break;
  }

  EigenResult res;
  res.lo = lo;
  res.hi = hi;
  res.mesh_points = problem.mesh_points;
  res.eigenvalue_coarse = e;
  res.eigenvalue = e;
  double e_best = e;
  int n_best = problem.mesh_points;
  if (problem.richardson) {
    const int n2 = 2 * problem.mesh_points;
    detail::RadialShooter s2(problem, L.whole_line, L.origin, L.c0, lo, hi, n2);
    const double e2 = detail::shoot(s2, L, target_nodes, tol);
    res.eigenvalue_fine = e2;
    res.est_error = std::abs(e2 - e) / 15.0;
    res.eigenvalue = e2 + (e2 - e) / 15.0;
    e_best = e2;
    n_best = n2;
  } else {
    res.est_error = 0.0;
  }

  detail::RadialShooter sf(problem, L.whole_line, L.origin, L.c0, lo, hi, n_best);
  res.eigenfunction_samples = sf.eigenfunction(e_best);
  double peak = 0;
  std::vector<double> vals;
  vals.reserve(res.eigenfunction_samples.size());
  for (const auto& x : res.eigenfunction_samples) {
    vals.push_back(x.value);
    peak = std::max(peak, std::abs(x.value));
  }
  res.node_count = detail::sign_changes(vals, 1e-9 * peak);
  res.converged = res.est_error <= problem.mesh_tol;
  if (!res.converged)
    fail(ErrorCode::MeshTooCoarse,
         "Richardson error estimate " + format_number(res.est_error) + " MeV exceeds " +
             format_number(problem.mesh_tol) + " MeV with " +
             std::to_string(problem.mesh_points) + " intervals");
  return res;
}

/// Eigenvalues on meshes n, 2n, 4n, ... without extrapolation; used to
/// measure the convergence order.
inline std::vector<double> radial_mesh_sequence(RadialODEProblem problem, int target_nodes,
                                                int levels) {
  problem.richardson = false;
  problem.mesh_tol = std::numeric_limits<double>::infinity();
  // fix the box once so only the step changes
  const EigenResult first = radial_eigenvalue(problem, target_nodes);
  problem.auto_extend = false;
  problem.r_max = first.hi;
  if (detail::radial_layout(problem).whole_line) problem.r_left = first.lo;
  std::vector<double> out;
  for (int k = 0; k < levels; ++k) {
    out.push_back(radial_eigenvalue(problem, target_nodes).eigenvalue);
    problem.mesh_points *= 2;
  }
  return out;
}

/// A problem with the domain that matches the closed form for these parameters.
inline RadialODEProblem radial_problem(PotentialMode mode, const PotentialParams& params,
                                       const ParticleContext& ctx,
                                       const PekerisCoefficients& coeffs, double l_eff) {
  RadialODEProblem p;
  p.potential_mode = mode;
  p.params = params;
  p.ctx = ctx;
  p.coeffs = coeffs;
  p.l_eff = l_eff;
  return p;
}

// ---------------------------------------------------------------------------
// Angular

struct AngularOracleOptions {
  double step = 0.04;  // t step of the coarse mesh (mu > 0)
  int cells = 2000;    // z cells of the coarse mesh (mu = 0)
  double tol = 1e-8;   // relative limit on the Richardson estimate
};

namespace detail {

/// Tridiagonal pencil A - lambda B: A diag a, off-diagonal e, B diag b.
struct Pencil {
  std::vector<double> a, e, b;
  std::vector<double> x;  // abscissa of each unknown (z)

  int below(double lambda) const {
    int neg = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1] / d;
      d = a[i] - lambda * b[i] - off;
      if (d == 0.0) d = -1e-300;
      if (d < 0) ++neg;
    }
    return neg;
  }

  double eigenvalue(int k, double guess) const {
    double lo = 0.0, hi = std::max(1.0, 2.0 * guess + 10.0);
    while (below(hi) <= k) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (below(mid) > k ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  }

  /// Inverse iteration for the eigenvector at lambda.
  std::vector<double> vector_at(double lambda) const {
    const std::size_t n = a.size();
    std::vector<double> v(n, 1.0), diag(n), rhs(n);
    const double shift = lambda * (1.0 + 1e-12) + 1e-14;
    for (int it = 0; it < 4; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a[i] - shift * b[i];
        rhs[i] = b[i] * v[i];
      }
      // Thomas algorithm on the symmetric tridiagonal system
      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double den = diag[i] - (i ? e[i - 1] * c[i - 1] : 0.0);
        if (den == 0.0) den = 1e-300;
        c[i] = i + 1 < n ? e[i] / den : 0.0;
        rhs[i] = (rhs[i] - (i ? e[i - 1] * rhs[i - 1] : 0.0)) / den;
      }
      for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
      double m = 0;
      for (double x : rhs) m = std::max(m, std::abs(x));
      for (std::size_t i = 0; i < n; ++i) v[i] = rhs[i] / m;
    }
    return v;
  }
};

/// mu > 0: z = tanh t turns the equation into -H'' + mu^2 H = v sech^2(t) H.
inline Pencil angular_pencil_tanh(double mu, int k, double step, int refine) {
  const double half = (16.0 + 2.0 * k) / mu + 4.0;
  const int n = 2 * static_cast<int>(std::ceil(half / step)) * (1 << refine);
  const double h = 2.0 * half / n;
  Pencil p;
  const int m = n - 1;  // interior points
  p.a.resize(m);
  p.b.resize(m);
  p.e.assign(m - 1, -1.0 / (h * h));
  p.x.resize(m);
  for (int i = 0; i < m; ++i) {
    const double t = -half + h * (i + 1);
    const double sech = 1.0 / std::cosh(t);
    p.a[i] = 2.0 / (h * h) + mu * mu;
    p.b[i] = sech * sech;
    p.x[i] = std::tanh(t);
  }
  return p;
}

/// mu = 0: cell-centred -(1-z^2) H' flux form with no flux through z = +-1.
inline Pencil angular_pencil_legendre(int cells) {
  const double h = 2.0 / cells;
  Pencil p;
  p.a.resize(cells);
  p.b.assign(cells, 1.0);
  p.e.resize(cells - 1);
  p.x.resize(cells);
  for (int i = 0; i < cells; ++i) {
    const double zl = -1.0 + h * i, zr = zl + h;
    const double pl = 1.0 - zl * zl, pr = 1.0 - zr * zr;
    p.a[i] = (pl + pr) / (h * h);
    if (i + 1 < cells) p.e[i] = -pr / (h * h);
    p.x[i] = zl + 0.5 * h;
  }
  return p;
}

}  // namespace detail

/// v of the angular equation whose eigenfunction has target_nodes nodes in (-1, 1).
inline EigenResult angular_eigenvalue_numeric(double mu_ang, int target_nodes,
                                              const AngularOracleOptions& opt = {}) {
  if (!(mu_ang >= 0)) fail(ErrorCode::InvalidParameter, "mu_ang must be nonnegative");
  if (target_nodes < 0) fail(ErrorCode::InvalidParameter, "target_nodes must be nonnegative");
  const double guess = (mu_ang + target_nodes) * (mu_ang + target_nodes + 1.0);
  auto build = [&](int level) {
    return mu_ang > 0 ? detail::angular_pencil_tanh(mu_ang, target_nodes, opt.step, level)
                      : detail::angular_pencil_legendre(opt.cells << level);
  };
  // errors expand in h^2 and h^4; four nested meshes give two doubly
  // extrapolated values whose difference is the error estimate
  double v[4];
  detail::Pencil finest;
  for (int l = 0; l < 4; ++l) {
    detail::Pencil p = build(l);
    v[l] = p.eigenvalue(target_nodes, guess);
    if (l == 3) finest = std::move(p);
  }
  auto extrapolate = [](double a, double b, double c) {
    const double r1 = (4.0 * b - a) / 3.0, r2 = (4.0 * c - b) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
  };
  EigenResult res;
  res.eigenvalue = extrapolate(v[1], v[2], v[3]);
  res.eigenvalue_coarse = v[0];
  res.eigenvalue_fine = v[3];
  res.est_error = std::abs(res.eigenvalue - extrapolate(v[0], v[1], v[2]));
  res.lo = -1.0;
  res.hi = 1.0;
  res.mesh_points = static_cast<int>(finest.a.size());

  const std::vector<double> vec = finest.vector_at(v[3]);
  double peak = 0;
  for (double x : vec) peak = std::max(peak, std::abs(x));
  res.node_count = detail::sign_changes(vec, 1e-9 * peak);
  const std::size_t stride = std::max<std::size_t>(1, vec.size() / 2000);
  for (std::size_t i = 0; i < vec.size(); i += stride)
    res.eigenfunction_samples.push_back({finest.x[i], vec[i] / peak});

  res.converged = res.est_error <= opt.tol * std::max(1.0, std::abs(res.eigenvalue));
  if (!res.converged)
    fail(ErrorCode::MeshTooCoarse, "angular Richardson estimate " +
                                       format_number(res.est_error) + " above tolerance");
  return res;
}

// ---------------------------------------------------------------------------
// Pekeris error probe

struct PekerisErrorReport {
  double e_pekeris = 0;
  double e_exact = 0;
  double delta = 0;  // e_pekeris - e_exact
};

/// The same level with the Pekeris and the exact centrifugal term, both on the
/// half line r > 0 so that only the approximation differs.
inline PekerisErrorReport pekeris_error_report(const PotentialParams& params,
                                               const ParticleContext& ctx,
                                               const PekerisCoefficients& coeffs,
                                               double l_eff, int n_r, int mesh_points = 20000) {
  RadialODEProblem p = radial_problem(PotentialMode::PekerisSubstituted, params, ctx, coeffs, l_eff);
  p.domain = Domain::HalfLine;
  p.mesh_points = mesh_points;
  PekerisErrorReport r;
  r.e_pekeris = radial_eigenvalue(p, n_r).eigenvalue;
  p.potential_mode = PotentialMode::ExactCentrifugal;
  r.e_exact = radial_eigenvalue(p, n_r).eigenvalue;
  r.delta = r.e_pekeris - r.e_exact;
  return r;
}

}  // namespace kgaim
