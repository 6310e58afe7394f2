// kgaim_cli: energy spectra, eigenfunctions and oracle validation for the
// Klein-Gordon q-deformed Woods-Saxon plus ring-shaped potential.
//
// Exit codes: 0 success, 1 validation mismatch, 2 no bound state or empty
// result, 3 numerical non-convergence, 4 invalid input.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgaim/kgaim.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kgaim;

enum Exit { kOk = 0, kMismatch = 1, kNoBound = 2, kNumerical = 3, kInvalid = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidParameter:
    case ErrorCode::PoleAtRadius:
    case ErrorCode::AxisSingularity:
    case ErrorCode::SingularMatchingSystem:
    case ErrorCode::ComplexOrder:
      return kInvalid;
    case ErrorCode::NoBoundWindow:
    case ErrorCode::NoBoundState:
    case ErrorCode::Degenerate:
    case ErrorCode::ComplexEnergy:
    case ErrorCode::ComplexOrbital:
    case ErrorCode::NotBound:
      return kNoBound;
    default:
      return kNumerical;
  }
}

// ---------------------------------------------------------------------------
// Formatting

/// Shortest representation that reads back to the same double.
std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_cell(const json& v) {
  if (v.is_null()) return "nan";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render(const std::string& format, const std::vector<std::string>& cols,
                   const json& rows, const json& meta, bool csv_meta_comments) {
  if (format == "json") {
    json doc;
    doc["meta"] = meta;
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  if (csv_meta_comments)
    for (auto it = meta.begin(); it != meta.end(); ++it)
      os << "# " << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump())
         << "\n";
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      os << (i ? "," : "") << csv_cell(row.at(cols[i]));
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Configuration

std::vector<int> parse_range(std::string s) {
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = b == std::string::npos ? "" : t.substr(b, e - b + 1);
  };
  trim(s);
  std::vector<int> out;
  if (s.empty()) return out;
  auto to_int = [&](std::string t) {
    trim(t);
    int v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
      throw UsageError("invalid range '" + s + "': expected a..b, a list a,b,c or an integer");
    return v;
  };
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int a = to_int(s.substr(0, dots)), b = to_int(s.substr(dots + 2));
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  return out;
}

struct RunConfig {
  PotentialParams params;
  ParticleContext ctx;
  std::vector<int> n_r{0};
  std::vector<int> n_theta{0};
  std::vector<int> m{0};
  std::string pekeris = "rederived";
  std::string method = "rootsolve";
  std::string branch = "auto";
  std::string format = "csv";
  std::string out;
  std::string limit;
  std::string grid = "uniform";
  std::string part = "radial";
  int mesh_points = 20000;
  double tol = 1e-6;
  int samples = 1000;
  bool physics_set = false;  // a potential parameter was given explicitly
  bool n_set = false;
  bool n_theta_set = false;
};

std::vector<int> range_from_json(const json& v, const std::string& key) {
  if (v.is_number_integer()) return {v.get<int>()};
  if (v.is_string()) return parse_range(v.get<std::string>());
  if (v.is_array()) {
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw UsageError("config key '" + key + "' must hold integers");
      out.push_back(x.get<int>());
    }
    return out;
  }
  throw UsageError("config key '" + key + "' must be an integer, a range string or an array");
}

void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  static const std::set<std::string> physics = {"v0", "r0", "a", "q", "alpha_ring", "beta_ring"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    const json& v = *it;
    auto number = [&]() {
      if (!v.is_number()) throw UsageError("config key '" + k + "' must be a number");
      return v.get<double>();
    };
    auto text = [&]() {
      if (!v.is_string()) throw UsageError("config key '" + k + "' must be a string");
      return v.get<std::string>();
    };
    if (physics.count(k)) cfg.physics_set = true;
    if (k == "v0") cfg.params.v0 = number();
    else if (k == "r0") cfg.params.r0 = number();
    else if (k == "a") cfg.params.a = number();
    else if (k == "q") cfg.params.q = number();
    else if (k == "alpha_ring") cfg.params.alpha_ring = number();
    else if (k == "beta_ring") cfg.params.beta_ring = number();
    else if (k == "m0c2") cfg.ctx.m0c2 = number();
    else if (k == "hbarc") cfg.ctx.hbarc = number();
    else if (k == "n_r") { cfg.n_r = range_from_json(v, k); cfg.n_set = true; }
    else if (k == "n_theta") { cfg.n_theta = range_from_json(v, k); cfg.n_theta_set = true; }
    else if (k == "m") cfg.m = range_from_json(v, k);
    else if (k == "pekeris") cfg.pekeris = text();
    else if (k == "method") cfg.method = text();
    else if (k == "branch") cfg.branch = text();
    else if (k == "format") cfg.format = text();
    else if (k == "out") cfg.out = text();
    else if (k == "limit") cfg.limit = text();
    else if (k == "grid") cfg.grid = text();
    else if (k == "part") cfg.part = text();
    else if (k == "mesh_points") cfg.mesh_points = static_cast<int>(number());
    else if (k == "tol") cfg.tol = number();
    else if (k == "samples") cfg.samples = static_cast<int>(number());
    else throw UsageError("unknown config key '" + k + "'");
  }
}

void check_choice(const std::string& what, const std::string& v,
                  std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
  throw UsageError(what + " must be one of " + list + ", got '" + v + "'");
}

void check_config(const RunConfig& c) {
  c.params.validate();
  c.ctx.validate();
  check_choice("--pekeris", c.pekeris, {"paper", "rederived"});
  check_choice("--method", c.method, {"closed", "rootsolve", "selfconsistent"});
  check_choice("--branch", c.branch, {"auto", "minus", "plus"});
  check_choice("--format", c.format, {"csv", "json"});
  check_choice("--grid", c.grid, {"uniform", "log"});
  check_choice("--part", c.part, {"radial", "angular"});
  if (!c.limit.empty()) check_choice("--limit", c.limit, {"hulthen", "spherical"});
  if (c.mesh_points < 8) throw UsageError("--mesh must be at least 8");
  if (!(c.tol > 0)) throw UsageError("--tol must be positive");
  if (c.samples < 1) throw UsageError("--samples must be at least 1");
  for (int v : c.n_r)
    if (v < 0) throw UsageError("radial quantum numbers must be nonnegative");
  for (int v : c.n_theta)
    if (v < 0) throw UsageError("angular quantum numbers must be nonnegative");
}

Method method_of(const std::string& s) {
  if (s == "closed") return Method::ClosedForm24;
  if (s == "selfconsistent") return Method::SelfConsistent37;
  return Method::RootSolve23;
}

PekerisSource source_of(const std::string& s) {
  return s == "paper" ? PekerisSource::PaperPrinted : PekerisSource::Rederived;
}

PekerisCoefficients coeffs_of(const RunConfig& c) {
  return pekeris(source_of(c.pekeris), c.params.q.value(), c.params.diffuseness_ratio());
}

json params_meta(const RunConfig& c) {
  json m;
  m["v0"] = num(c.params.v0);
  m["r0"] = num(c.params.r0);
  m["a"] = num(c.params.a);
  m["q"] = num(c.params.q.value());
  m["alpha_ring"] = num(c.params.alpha_ring);
  m["beta_ring"] = num(c.params.beta_ring);
  m["m0c2"] = num(c.ctx.m0c2);
  m["hbarc"] = num(c.ctx.hbarc);
  m["pekeris"] = c.pekeris;
  m["method"] = c.method;
  return m;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_spectrum(RunConfig c) {
  const std::vector<std::string> cols = {"n_r",    "n_theta", "m",     "l_eff",   "E_MeV",
                                         "branch", "method",  "bound", "residual"};
  json rows = json::array();
  json notes = json::array();
  std::vector<EnergyLevel> levels;

  if (c.limit == "hulthen") {
    for (int n : c.n_r) {
      EnergyLevel lv;
      lv.qn.n_r = n;
      try {
        lv = hulthen_energy(n, c.params, c.ctx);
      } catch (const Error& e) {
        lv.status = e.what();
      }
      levels.push_back(lv);
    }
  } else {
    if (c.limit == "spherical") c.params.q = 1.0;
    TableOptions t;
    t.method = method_of(c.method);
    if (c.branch != "auto") t.branch = c.branch == "minus" ? Branch::Minus : Branch::Plus;
    levels = spectrum_table({c.n_r, c.n_theta, c.m}, c.params, c.ctx, coeffs_of(c), t);
  }

  bool any_bound = false;
  for (const auto& lv : levels) {
    json r;
    r["n_r"] = lv.qn.n_r;
    r["n_theta"] = lv.qn.n_theta;
    r["m"] = lv.qn.m;
    r["l_eff"] = num(lv.qn.l_eff);
    r["E_MeV"] = num(lv.energy);
    r["branch"] = to_string(lv.branch);
    r["method"] = to_string(lv.method);
    r["bound"] = lv.bound;
    r["residual"] = num(lv.residual);
    rows.push_back(r);
    notes.push_back(lv.status);
    any_bound = any_bound || lv.bound;
  }
  json meta = params_meta(c);
  if (!c.limit.empty()) meta["limit"] = c.limit;
  meta["status"] = notes;
  emit(c, render(c.format, cols, rows, meta, false));
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (!levels[i].bound)
      std::cerr << "note: n_r=" << levels[i].qn.n_r << " n_theta=" << levels[i].qn.n_theta
                << " m=" << levels[i].qn.m << ": " << levels[i].status << "\n";
  return any_bound ? kOk : kNoBound;
}

int cmd_wavefunction(RunConfig c) {
  if (c.n_r.empty() || c.n_theta.empty() || c.m.empty())
    throw UsageError("wavefunction needs one n, ntheta and m");
  const int n = c.n_r.front(), nt = c.n_theta.front(), m = c.m.front();
  const PekerisCoefficients coeffs = coeffs_of(c);
  GridSpec g;
  g.kind = c.grid == "log" ? GridKind::Log : GridKind::Uniform;
  g.points = c.samples;

  auto level_of = [&]() {
    if (c.params.has_ring() || c.method == "selfconsistent")
      return combined_energy_selfconsistent(n, nt, m, c.params, c.ctx, coeffs);
    const double l = angular_eigenvalue(nt, m, 0.0, 0.0).l_eff;
    EnergyLevel lv = c.method == "closed" ? radial_energy_closed24(n, l, c.params, c.ctx, coeffs)
                                          : radial_energy_rootsolve(n, l, c.params, c.ctx, coeffs);
    lv.qn.n_theta = nt;
    lv.qn.m = m;
    return lv;
  };

  json meta = params_meta(c);
  json rows = json::array();
  std::vector<std::string> cols;
  if (c.part == "angular") {
    double ap = 0, bp = 0;
    if (c.params.has_ring()) {
      const EnergyLevel lv = level_of();
      const AngularParams a = angular_params(m, lv.energy, c.params, c.ctx);
      ap = a.alpha_prime;
      bp = a.beta_prime;
      meta["energy_MeV"] = num(lv.energy);
    }
    const AngularWavefunction w = angular_wavefunction(nt, m, ap, bp);
    meta["part"] = "angular";
    meta["n_theta"] = nt;
    meta["m"] = m;
    meta["mu_ang"] = num(w.mu_ang);
    meta["v_ang"] = num(w.v_ang);
    meta["l_eff"] = num(w.l_eff);
    meta["norm"] = num(w.norm);
    meta["node_count"] = w.node_count();
    meta["grid"] = c.grid;
    cols = {"z", "H"};
    for (const auto& s : sample_wavefunction(w, g)) rows.push_back({{"z", num(s.x)}, {"H", num(s.value)}});
  } else {
    const EnergyLevel lv = level_of();
    const RadialWavefunction w = radial_wavefunction(lv, c.params, c.ctx, coeffs);
    meta["part"] = "radial";
    meta["n_r"] = n;
    meta["n_theta"] = nt;
    meta["m"] = m;
    meta["l_eff"] = num(lv.qn.l_eff);
    meta["energy_MeV"] = num(lv.energy);
    meta["mu"] = num(w.mu);
    meta["sigma"] = num(w.sigma);
    meta["norm"] = num(w.norm);
    meta["a_nl"] = num(w.a_nl);
    meta["a_nl_ratio"] = num(w.a_nl_ratio);
    meta["node_count"] = w.node_count();
    meta["weight_below_origin"] = num(w.weight_below_origin);
    meta["grid"] = c.grid;
    cols = {"r", "R"};
    for (const auto& s : sample_wavefunction(w, g)) rows.push_back({{"r", num(s.x)}, {"R", num(s.value)}});
  }
  emit(c, render(c.format, cols, rows, meta, true));
  return kOk;
}

json record_row(const ValidationRecord& r) {
  json j;
  j["suite"] = r.suite;
  j["q"] = num(r.q);
  j["n_r"] = r.n_r;
  j["n_theta"] = r.n_theta;
  j["m"] = r.m;
  j["l_eff"] = num(r.l_eff);
  j["E_closed"] = num(r.e_closed);
  j["E_oracle"] = num(r.e_oracle);
  j["rel_diff"] = num(r.rel_diff);
  j["est_error"] = num(r.est_error);
  j["closed_bound"] = r.closed_bound;
  j["oracle_found"] = r.oracle_found;
  j["verdict"] = to_string(r.verdict);
  j["detail"] = r.detail;
  return j;
}

const std::vector<std::string> kValidationCols = {
    "suite",    "q",         "n_r",          "n_theta",      "m",       "l_eff",  "E_closed",
    "E_oracle", "rel_diff",  "est_error",    "closed_bound", "oracle_found", "verdict", "detail"};

json pekeris_rows(double q, double x) {
  json rows = json::array();
  const PekerisCoefficients red = pekeris_rederived(q, x);
  const PekerisCoefficients pap = pekeris_paper(q, x);
  for (const PekerisCoefficients* c : {&pap, &red}) {
    const auto res = pekeris_matching_residuals(*c, q, x);
    std::string flag;
    const double mine[3] = {c->c0, c->c1, c->c2}, ref[3] = {red.c0, red.c1, red.c2};
    for (int i = 0; i < 3; ++i)
      if (std::abs(mine[i] - ref[i]) > 1e-9 * std::max(1.0, std::abs(ref[i])))
        flag += std::string(flag.empty() ? "" : " ") + "C" + std::to_string(i) + "-discrepancy";
    json r;
    r["source"] = to_string(c->provenance);
    r["q"] = num(q);
    r["X"] = num(x);
    r["C0"] = num(c->c0);
    r["C1"] = num(c->c1);
    r["C2"] = num(c->c2);
    r["residual_value"] = num(res[0]);
    r["residual_slope"] = num(res[1]);
    r["residual_curvature"] = num(res[2]);
    r["flag"] = flag.empty() ? "ok" : flag;
    rows.push_back(r);
  }
  return rows;
}

int cmd_validate(RunConfig c) {
  ValidationOptions opt;
  opt.method = method_of(c.method);
  opt.pekeris = source_of(c.pekeris);
  opt.mesh_points = c.mesh_points;
  opt.tol = c.tol;

  std::vector<ValidationRecord> recs;
  json meta = params_meta(c);
  meta["tol"] = num(c.tol);
  meta["mesh_points"] = c.mesh_points;
  if (c.physics_set) {
    meta["suite"] = "custom";
    const std::vector<int> ns = c.n_set ? c.n_r : std::vector<int>{0, 1, 2};
    if (c.limit == "hulthen") {
      for (int n : ns) recs.push_back(validate_hulthen("hulthen", n, c.params, c.ctx, opt));
    } else {
      if (c.limit == "spherical") c.params.q = 1.0;
      for (int n : ns)
        for (int nt : c.n_theta)
          for (int m : c.m) recs.push_back(validate_radial("custom", n, nt, m, c.params, c.ctx, opt));
    }
  } else {
    meta["suite"] = "reference";
    recs = validate_reference_suite(c.ctx, opt, c.limit != "hulthen", c.limit != "spherical",
                                    c.limit == "spherical");
  }
  if (c.params.q.sign() > 0)
    meta["pekeris_check"] = pekeris_rows(c.physics_set ? c.params.q.value() : 1.0,
                                         c.physics_set ? c.params.diffuseness_ratio() : 10.0);

  json rows = json::array();
  int failures = 0, mismatches = 0, compared = 0;
  for (const auto& r : recs) {
    rows.push_back(record_row(r));
    if (r.verdict == Verdict::OracleFailure) ++failures;
    if (r.verdict == Verdict::Disagree) ++mismatches;
    if (r.closed_bound && r.oracle_found) ++compared;
  }
  meta["levels"] = static_cast<int>(recs.size());
  meta["compared"] = compared;
  meta["mismatches"] = mismatches;
  meta["oracle_failures"] = failures;
  emit(c, render(c.format, kValidationCols, rows, meta, false));
  std::cerr << "validate: " << recs.size() << " levels, " << compared << " compared, "
            << mismatches << " mismatches, " << failures << " oracle failures\n";
  if (failures) return kNumerical;
  return mismatches ? kMismatch : kOk;
}

int cmd_pekeris(RunConfig c) {
  if (!(c.params.q.value() > 0))
    throw UsageError("the Pekeris comparison needs q > 0");
  const double q = c.params.q.value(), x = c.params.diffuseness_ratio();
  const std::vector<std::string> cols = {"source",         "q",
                                         "X",              "C0",
                                         "C1",             "C2",
                                         "residual_value", "residual_slope",
                                         "residual_curvature", "flag"};
  json meta = params_meta(c);
  json report = json::array();
  const PekerisCoefficients coeffs = coeffs_of(c);
  for (int n : c.n_r)
    for (int nt : c.n_theta) {
      const double l = nt;
      json r;
      r["n_r"] = n;
      r["l"] = l;
      try {
        const auto rep = pekeris_error_report(c.params, c.ctx, coeffs, l, n, c.mesh_points);
        r["E_pekeris"] = num(rep.e_pekeris);
        r["E_exact"] = num(rep.e_exact);
        r["delta"] = num(rep.delta);
      } catch (const Error& e) {
        r["unavailable"] = e.what();
      }
      report.push_back(r);
    }
  meta["half_line_error_report"] = report;
  emit(c, render(c.format, cols, pekeris_rows(q, x), meta, false));
  return kOk;
}

int cmd_limits(RunConfig c) {
  const std::vector<std::string> cols = {"limit",    "n_r",      "l",        "E_closed",
                                         "E_rootsolve", "E_oracle", "rel_diff", "bound",
                                         "verdict"};
  ValidationOptions opt;
  opt.mesh_points = c.mesh_points;
  opt.tol = c.tol;
  const std::vector<int> ns = c.n_set ? c.n_r : std::vector<int>{0, 1, 2};
  json rows = json::array();
  int failures = 0, mismatches = 0;
  auto add = [&](const std::string& limit, int l, const ValidationRecord& rec, double e_closed) {
    json r;
    r["limit"] = limit;
    r["n_r"] = rec.n_r;
    r["l"] = l;
    r["E_closed"] = num(e_closed);
    r["E_rootsolve"] = num(rec.e_closed);
    r["E_oracle"] = num(rec.e_oracle);
    r["rel_diff"] = num(rec.rel_diff);
    r["bound"] = rec.closed_bound;
    r["verdict"] = to_string(rec.verdict);
    rows.push_back(r);
    failures += rec.verdict == Verdict::OracleFailure;
    mismatches += rec.verdict == Verdict::Disagree;
  };
  if (c.limit.empty() || c.limit == "hulthen") {
    const PotentialParams hp = c.physics_set ? c.params : hulthen_reference();
    const auto [p, hc] = hulthen_setup(hp);
    for (int n : ns) {
      const ValidationRecord rec = validate_hulthen("hulthen", n, hp, c.ctx, opt);
      double e = std::nan("");
      try {
        e = radial_energy_closed24(n, 0.0, p, c.ctx, hc).energy;
      } catch (const Error&) {
      }
      add("hulthen", 0, rec, e);
    }
  }
  if (c.limit.empty() || c.limit == "spherical") {
    PotentialParams sp = c.physics_set ? c.params : solvable_reference();
    sp.q = 1.0;
    const PekerisCoefficients cs = pekeris(source_of(c.pekeris), 1.0, sp.diffuseness_ratio());
    // s waves are never bound for q > 0, so the default starts at l = 1
    const std::vector<int> ls = c.n_theta_set ? c.n_theta : std::vector<int>{1, 2};
    for (int nt : ls)
      for (int n : ns) {
        const ValidationRecord rec = validate_radial("spherical", n, nt, 0, sp, c.ctx, opt);
        double e = std::nan("");
        try {
          e = radial_energy_closed24(n, nt, sp, c.ctx, cs).energy;
        } catch (const Error&) {
        }
        add("spherical", nt, rec, e);
      }
  }
  json meta = params_meta(c);
  emit(c, render(c.format, cols, rows, meta, false));
  if (failures) return kNumerical;
  return mismatches ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon bound states of the q-deformed Woods-Saxon plus ring-shaped potential"};
  app.require_subcommand(1, 1);

  double v0 = 0, r0 = 0, a = 0, q = 0, alpha = 0, beta = 0, mass = 0, hbarc = 0, tol = 0;
  int mesh = 0, samples = 0, l_ang = 0;
  std::string n, ntheta, m, pek, method, branch, format, out, config, limit, grid, part;

  auto* o_v0 = app.add_option("--v0", v0, "well depth V0 [MeV]");
  auto* o_r0 = app.add_option("--r0", r0, "radius R0 [fm]");
  auto* o_a = app.add_option("--a", a, "surface thickness a [fm]");
  auto* o_q = app.add_option("--q", q, "deformation q (nonzero)");
  auto* o_alpha = app.add_option("--alpha-ring", alpha, "ring strength alpha [MeV fm^2]");
  auto* o_beta = app.add_option("--beta-ring", beta, "ring strength beta [MeV fm^2]");
  auto* o_mass = app.add_option("--mass", mass, "rest energy m0c^2 [MeV]");
  auto* o_hbarc = app.add_option("--hbarc", hbarc, "hbar c [MeV fm]");
  auto* o_n = app.add_option("--n", n, "radial quantum numbers: a..b, a,b,c or a");
  auto* o_nt = app.add_option("--ntheta", ntheta, "angular quantum numbers n_theta");
  auto* o_m = app.add_option("--m", m, "azimuthal quantum numbers");
  auto* o_lang = app.add_option("--l-from-angular", l_ang,
                                "shorthand for --ntheta L --m 0 (l = L without ring terms)");
  auto* o_pek = app.add_option("--pekeris", pek, "paper|rederived");
  auto* o_method = app.add_option("--method", method, "closed|rootsolve|selfconsistent");
  auto* o_branch = app.add_option("--branch", branch, "auto|minus|plus");
  auto* o_format = app.add_option("--format", format, "csv|json");
  auto* o_out = app.add_option("--out", out, "output path (default stdout)");
  auto* o_config = app.add_option("--config", config, "JSON config file; flags override it");
  auto* o_mesh = app.add_option("--mesh", mesh, "oracle mesh intervals");
  auto* o_tol = app.add_option("--tol", tol, "relative tolerance for validation");
  auto* o_limit = app.add_option("--limit", limit, "hulthen|spherical");
  auto* o_grid = app.add_option("--grid", grid, "uniform|log sampling grid");
  auto* o_part = app.add_option("--part", part, "radial|angular wavefunction");
  auto* o_samples = app.add_option("--samples", samples, "number of wavefunction samples");

  auto* s_spec = app.add_subcommand("spectrum", "energy table over the quantum-number ranges");
  auto* s_wave = app.add_subcommand("wavefunction", "sampled eigenfunction of one level");
  auto* s_val = app.add_subcommand("validate", "analytic energies against the numerical oracle");
  auto* s_pek = app.add_subcommand("pekeris", "centrifugal expansion coefficients and their error");
  auto* s_lim = app.add_subcommand("limits", "Hulthen and spherical limit checks");
  for (auto* s : {s_spec, s_wave, s_val, s_pek, s_lim}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    RunConfig c;
    if (o_config->count()) load_config(config, c);
    if (o_v0->count()) c.params.v0 = v0;
    if (o_r0->count()) c.params.r0 = r0;
    if (o_a->count()) c.params.a = a;
    if (o_q->count()) c.params.q = q;
    if (o_alpha->count()) c.params.alpha_ring = alpha;
    if (o_beta->count()) c.params.beta_ring = beta;
    for (auto* o : {o_v0, o_r0, o_a, o_q, o_alpha, o_beta})
      if (o->count()) c.physics_set = true;
    if (o_mass->count()) c.ctx.m0c2 = mass;
    if (o_hbarc->count()) c.ctx.hbarc = hbarc;
    if (o_n->count()) {
      c.n_r = parse_range(n);
      c.n_set = true;
    }
    if (o_nt->count()) {
      c.n_theta = parse_range(ntheta);
      c.n_theta_set = true;
    }
    if (o_m->count()) c.m = parse_range(m);
    if (o_lang->count()) {
      c.n_theta = {l_ang};
      c.n_theta_set = true;
      c.m = {0};
    }
    if (o_pek->count()) c.pekeris = pek;
    if (o_method->count()) c.method = method;
    if (o_branch->count()) c.branch = branch;
    if (o_format->count()) c.format = format;
    if (o_out->count()) c.out = out;
    if (o_mesh->count()) c.mesh_points = mesh;
    if (o_tol->count()) c.tol = tol;
    if (o_limit->count()) c.limit = limit;
    if (o_grid->count()) c.grid = grid;
    if (o_part->count()) c.part = part;
    if (o_samples->count()) c.samples = samples;
    check_config(c);

    if (*s_spec) return cmd_spectrum(c);
    if (*s_wave) return cmd_wavefunction(c);
    if (*s_val) return cmd_validate(c);
    if (*s_pek) return cmd_pekeris(c);
    if (*s_lim) return cmd_limits(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kInvalid;
}
