#pragma once

// Reference parameter sets and the level-by-level comparison of analytic
// energies against the numerical oracle.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kgaim/errors.hpp"
#include "kgaim/model.hpp"
#include "kgaim/oracle.hpp"
#include "kgaim/spectrum.hpp"

namespace kgaim {

/// Nuclear-scale Woods-Saxon well (A ~ 56 systematics).
inline PotentialParams woods_saxon_reference() {
  PotentialParams p;
  p.v0 = 67.5;
  p.r0 = 7.61;
  p.a = 0.65;
  p.q = 1.0;
  return p;
}

/// Shallow diffuse well whose Pekeris-substituted problem has several bound
/// levels for q > 0 (small R0/a keeps gamma^2 positive for l >= 1).
inline PotentialParams solvable_reference() {
  PotentialParams p;
  p.v0 = 50.0;
  p.r0 = 3.0;
  p.a = 2.0;
  p.q = 1.0;
  return p;
}

/// Hulthen screening with V0 a / (hbar c) = 0.38.
inline PotentialParams hulthen_reference() {
  PotentialParams p;
  p.v0 = 30.0;
  p.r0 = 7.61;
  p.a = 2.5;
  return p;
}

struct ValidationOptions {
  Method method = Method::RootSolve23;
  PekerisSource pekeris = PekerisSource::Rederived;
  int mesh_points = 20000;
  double tol = 1e-6;  // relative
};

enum class Verdict { Agree, Disagree, OracleFailure };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Disagree: return "disagree";
    case Verdict::OracleFailure: return "oracle-failure";
  }
  return "?";
}

struct ValidationRecord {
  std::string suite;
  double q = 0;
  int n_r = 0;
  int n_theta = 0;
  int m = 0;
  double l_eff = 0;
  double e_closed = std::numeric_limits<double>::quiet_NaN();
  double e_oracle = std::numeric_limits<double>::quiet_NaN();
  double rel_diff = std::numeric_limits<double>::quiet_NaN();
  double est_error = std::numeric_limits<double>::quiet_NaN();
  bool closed_bound = false;
  bool oracle_found = false;
  int oracle_nodes = -1;
  Verdict verdict = Verdict::Agree;
  std::string detail;  // why the analytic side is unbound, or the oracle error
};

namespace detail {

inline void compare(ValidationRecord& rec, const EnergyLevel* closed, const std::string& closed_err,
                    const RadialODEProblem& prob, double tol) {
  if (closed) {
    rec.e_closed = closed->energy;
    rec.closed_bound = closed->bound;
    rec.l_eff = closed->qn.l_eff;
    if (!closed->bound) rec.detail = closed->status;
  } else {
    rec.detail = closed_err;
  }
  try {
    const EigenResult r = radial_eigenvalue(prob, rec.n_r);
    rec.e_oracle = r.eigenvalue;
    rec.est_error = r.est_error;
    rec.oracle_found = true;
    rec.oracle_nodes = r.node_count;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoBoundState) {
      rec.verdict = Verdict::OracleFailure;
      rec.detail = e.what();
      return;
    }
  }
  if (rec.closed_bound && rec.oracle_found) {
    rec.rel_diff = std::abs(rec.e_closed - rec.e_oracle) / std::abs(rec.e_oracle);
    rec.verdict = rec.rel_diff < tol ? Verdict::Agree : Verdict::Disagree;
  } else if (rec.closed_bound != rec.oracle_found) {
    rec.verdict = Verdict::Disagree;
    if (rec.detail.empty())
      rec.detail = rec.oracle_found ? "oracle finds a level the analytic side rejects"
                                    : "analytic level has no oracle counterpart";
  } else {
    rec.verdict = Verdict::Agree;  // both unbound
  }
}

}  // namespace detail

/// One (n_r, n_theta, m) level of the Pekeris-substituted Woods-Saxon problem.
inline ValidationRecord validate_radial(const std::string& suite, int n_r, int n_theta, int m,
                                        const PotentialParams& params,
                                        const ParticleContext& ctx,
                                        const ValidationOptions& opt = {}) {
  ValidationRecord rec;
  rec.suite = suite;
  rec.q = params.q.value();
  rec.n_r = n_r;
  rec.n_theta = n_theta;
  rec.m = m;
  const PekerisCoefficients c = pekeris(opt.pekeris, params.q.value(), params.diffuseness_ratio());

  EnergyLevel lv;
  bool have = false;
  std::string err;
  double l_eff = 0;
  try {
    if (params.has_ring() || opt.method == Method::SelfConsistent37) {
      lv = combined_energy_selfconsistent(n_r, n_theta, m, params, ctx, c);
    } else {
      l_eff = angular_eigenvalue(n_theta, m, 0.0, 0.0).l_eff;
      lv = opt.method == Method::ClosedForm24 ? radial_energy_closed24(n_r, l_eff, params, ctx, c)
                                              : radial_energy_rootsolve(n_r, l_eff, params, ctx, c);
    }
    have = true;
    l_eff = lv.qn.l_eff;
  } catch (const Error& e) {
    err = e.what();
    if (!params.has_ring()) l_eff = n_theta + std::abs(m);
  }
  rec.l_eff = l_eff;
  RadialODEProblem prob =
      radial_problem(PotentialMode::PekerisSubstituted, params, ctx, c, l_eff);
  prob.mesh_points = opt.mesh_points;
  detail::compare(rec, have ? &lv : nullptr, err, prob, opt.tol);
  return rec;
}

/// One s-wave level of the Hulthen limit against the oracle on V0/(e^{r/a} - 1).
inline ValidationRecord validate_hulthen(const std::string& suite, int n_r,
                                         const PotentialParams& params,
                                         const ParticleContext& ctx,
                                         const ValidationOptions& opt = {}) {
  ValidationRecord rec;
  rec.suite = suite;
  const auto [hp, hc] = hulthen_setup(params);
  rec.q = hp.q.value();
  rec.n_r = n_r;
  EnergyLevel lv;
  bool have = false;
  std::string err;
  try {
    lv = opt.method == Method::ClosedForm24 ? radial_energy_closed24(n_r, 0.0, hp, ctx, hc)
                                            : hulthen_energy(n_r, params, ctx);
    have = true;
  } catch (const Error& e) {
    err = e.what();
  }
  RadialODEProblem prob = radial_problem(PotentialMode::Hulthen, params, ctx, hc, 0.0);
  prob.mesh_points = opt.mesh_points;
  detail::compare(rec, have ? &lv : nullptr, err, prob, opt.tol);
  return rec;
}

/// The reference comparison: both Woods-Saxon sets over q in {0.8, 1, 1.5},
/// l in 0..3, n_r in 0..2, plus the Hulthen limit for n_r in 0..2.
inline std::vector<ValidationRecord> validate_reference_suite(const ParticleContext& ctx,
                                                              const ValidationOptions& opt = {},
                                                              bool woods_saxon = true,
                                                              bool hulthen = true,
                                                              bool spherical_only = false) {
  std::vector<ValidationRecord> out;
  if (woods_saxon) {
    const std::vector<double> qs =
        spherical_only ? std::vector<double>{1.0} : std::vector<double>{0.8, 1.0, 1.5};
    const std::pair<const char*, PotentialParams> sets[] = {
        {"woods-saxon", woods_saxon_reference()}, {"solvable", solvable_reference()}};
    for (const auto& [name, base] : sets)
      for (double q : qs)
        for (int l = 0; l <= 3; ++l)
          for (int n = 0; n <= 2; ++n) {
            PotentialParams p = base;
            p.q = q;
            out.push_back(validate_radial(name, n, l, 0, p, ctx, opt));
          }
  }
  if (hulthen)
    for (int n = 0; n <= 2; ++n)
      out.push_back(validate_hulthen("hulthen", n, hulthen_reference(), ctx, opt));
  return out;
}

}  // namespace kgaim
