#include "ptwell/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "ptwell/errors.hpp"
#include "ptwell/hierarchy.hpp"
#include "ptwell/shooting.hpp"
#include "ptwell/spectral.hpp"
#include "ptwell/wavefunctions.hpp"

namespace ptwell::cli {

namespace {

constexpr double kGuardWall = 1e-9;
constexpr double kGuardOrigin = 1e-12;
constexpr double kLimitVariance = 1e-8;
constexpr double kLimitPotential = 1e-10;
constexpr double kContinuityCoupling = 1e-6;

Json level_json(const SpectralLevel& l) {
  Json j;
  j["n"] = l.index;
  j["re"] = l.energy.real();
  j["im"] = l.energy.imag();
  j["branch"] = to_string(l.branch);
  j["s"] = l.momentum.s;
  j["t"] = l.momentum.t;
  return j;
}

Json pairs_json(const Spectrum& s) {
  Json pairs = Json::array();
  for (const auto& [a, b] : s.broken_pairs) pairs.push_back(Json::array({a, b}));
  return pairs;
}

/// Midpoint grid on (-1, 1), kept inside the evaluation guard.
std::vector<double> sample_grid(int samples) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    double x = -1.0 + (2.0 * k + 1.0) / samples;
    x = std::clamp(x, -1.0 + kGuardWall, 1.0 - kGuardWall);
    if (std::abs(x) < kGuardOrigin) x = kGuardOrigin;
    xs.push_back(x);
  }
  return xs;
}

EliminationPlan plan_for(const RunConfig& cfg, int steps) {
  if (!cfg.plan.empty()) return EliminationPlan::parse(cfg.plan);
  EliminationPlan plan;
  plan.choices.assign(static_cast<std::size_t>(std::max(steps, 0)), Elimination::LowestReal);
  return plan;
}

ComplexFunction sec2_family(int m) {
  const double c = kPi * kPi / 4.0 * m * (m - 1);
  return [c](double x) {
    const double sec = 1.0 / std::cos(kPi * x / 2.0);
    return cplx{c * sec * sec, 0.0};
  };
}

Json relations_json(const RelationReport& r) {
  Json j;
  j["v2_mirror_deviation"] = r.v2_mirror_deviation;
  j["v3_equal_deviation"] = r.v3_equal_deviation;
  j["psi_mirror_variance"] = r.psi_mirror_variance;
  j["psi_mirror_imag"] = r.psi_mirror_imag;
  j["psi3_pt_variance"] = r.psi3_pt_variance;
  j["psi3_pt_defects"] = r.psi3_pt_defects;
  j["v3_pt_deviation"] = r.v3_pt_deviation;
  j["v3_pt_symmetric"] = r.v3_pt_flag;
  j["v2_pt_symmetric"] = r.v2_pt_flag;
  return j;
}

}  // namespace

double tolerance_scale() {
  const char* env = std::getenv("PTWELL_TOL_OVERRIDE");
  if (env == nullptr || *env == '\0') return 1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("PTWELL_TOL_OVERRIDE must be a positive number");
  }
  return v;
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const Coupling z(cfg.coupling);
  const Spectrum s = classify_spectrum(z, cfg.levels);
  CommandResult r;
  r.json["coupling"] = z.value();
  Json levels = Json::array();
  Json residuals = Json::array();
  for (const auto& l : s.levels) {
    levels.push_back(level_json(l));
    Json res;
    res["n"] = l.index;
    res["matching"] = std::abs(matching_function(l.rho, l.sigma));
    if (l.is_real()) {
      res["g"] = std::abs(matching_residual(l.momentum.t, z));
    } else {
      res["g"] = nullptr;
    }
    residuals.push_back(res);
  }
  r.json["levels"] = levels;
  r.json["broken_pairs"] = pairs_json(s);
  r.json["residuals"] = residuals;
  return r;
}

CommandResult cmd_critical(const RunConfig& cfg) {
  const CriticalCoupling c = find_critical_coupling(cfg.index);
  CommandResult r;
  r.json["nu"] = c.nu;
  r.json["z_crit"] = c.z_crit;
  r.json["t_merge"] = c.t_merge;
  r.json["e_merge"] = c.e_merge;
  r.json["residuals"] = Json{{"g", c.residual}, {"dg_dt", c.slope_residual}};
  return r;
}

CommandResult cmd_hierarchy(const RunConfig& cfg) {
  const Coupling z(cfg.coupling);
  const EliminationPlan plan = plan_for(cfg, cfg.depth - 1);
  const auto members = build_hierarchy(z, plan, cfg.depth, cfg.levels);
  const std::vector<double> xs = sample_grid(cfg.samples);
  const std::vector<double> check_grid = chebyshev_grid();

  CommandResult r;
  r.json["coupling"] = z.value();
  r.json["plan"] = plan.str();
  r.json["depth"] = cfg.depth;
  Json members_json = Json::array();
  std::ostringstream csv;
  csv << "member,x,re,im\n";
  for (const auto& mem : members) {
    Json j;
    j["m"] = mem.depth;
    j["endpoint_exponent"] = mem.potential.endpoint_exponent;
    j["pt_symmetric"] = mem.potential.pt_symmetric;
    Json gone = Json::array();
    for (const auto& l : mem.eliminated) gone.push_back(l.index);
    j["eliminated"] = gone;
    Json spectrum = Json::array();
    for (const auto& l : mem.spectrum.levels) spectrum.push_back(level_json(l));
    j["spectrum"] = spectrum;
    if (z.value() == 0.0) {
      const ComplexFunction v = [&mem](double x) { return mem.potential(x); };
      j["sec2_deviation"] = relative_deviation(v, sec2_family(mem.depth), check_grid);
    }
    Json samples = Json::array();
    for (const double x : xs) {
      const cplx v = mem.potential(x);
      samples.push_back(Json::array({x, v.real(), v.imag()}));
      csv << mem.depth << ',' << format_double(x) << ',' << format_double(v.real()) << ','
          << format_double(v.imag()) << '\n';
    }
    if (cfg.format == "json") j["samples"] = samples;
    members_json.push_back(j);
  }
  r.json["members"] = members_json;
  try {
    r.json["relations"] = relations_json(hierarchy_relations_check(z));
  } catch (const DomainError&) {
    r.json["relations"] = nullptr;  // Z outside the window with one broken pair
  }
  if (cfg.format == "csv") r.csv = csv.str();
  return r;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  const Coupling z(cfg.coupling);
  const double tol = cfg.tol * tolerance_scale();
  const EliminationPlan plan = plan_for(cfg, cfg.member - 1);
  const auto members = build_hierarchy(z, plan, cfg.member, cfg.levels);
  const HierarchyMember& mem = members.back();

  SearchBox box;
  std::vector<cplx> seeds;
  double top = 0.0, height = 0.0;
  for (const auto& l : mem.spectrum.levels) {
    top = std::max(top, l.energy.real());
    height = std::max(height, std::abs(l.energy.imag()));
    if (!l.is_real()) seeds.push_back(l.energy);
  }
  box.re_min = -20.0;
  box.re_max = 1.3 * top + 20.0;
  box.im_min = -(height + 20.0);
  box.im_max = height + 20.0;
  const ShootingSolver oracle(mem.potential);
  const OracleSpectrum found = oracle.find_spectrum(cfg.levels, box, seeds);

  CommandResult r;
  r.json["coupling"] = z.value();
  r.json["member"] = cfg.member;
  r.json["plan"] = plan.str();
  r.json["tolerance"] = tol;
  Json levels = Json::array();
  bool all_pass = static_cast<int>(found.eigenvalues.size()) == cfg.levels;
  double worst = 0.0;
  for (std::size_t n = 0; n < mem.spectrum.levels.size(); ++n) {
    const SpectralLevel& l = mem.spectrum.levels[n];
    Json j;
    j["n"] = static_cast<int>(n);
    j["parent_index"] = l.index;
    j["closed"] = Json::array({l.energy.real(), l.energy.imag()});
    double dev = std::numeric_limits<double>::infinity();
    cplx nearest{std::nan(""), std::nan("")};
    for (const cplx e : found.eigenvalues) {
      if (std::abs(e - l.energy) < dev) {
        dev = std::abs(e - l.energy);
        nearest = e;
      }
    }
    const double residual = oracle.mismatch(l.energy).relative();
    const bool pass = dev <= tol && residual <= tol;
    all_pass = all_pass && pass;
    worst = std::max(worst, dev);
    j["oracle"] = Json::array({nearest.real(), nearest.imag()});
    j["deviation"] = dev;
    j["mismatch"] = residual;
    j["pass"] = pass;
    levels.push_back(j);
  }
  r.json["levels"] = levels;
  r.json["max_deviation"] = worst;
  r.json["diagnostics"] = found.diagnostics;
  r.json["pass"] = all_pass;
  r.exit_code = all_pass ? kOk : kVerificationFailure;
  return r;
}

CommandResult cmd_limit(const RunConfig& cfg) {
  const double scale = tolerance_scale();
  const std::vector<double> grid = chebyshev_grid();
  CommandResult r;
  r.json["m"] = cfg.m;
  r.json["n"] = cfg.n;
  Json checks = Json::array();
  bool pass = true;
  for (const double zv : {0.0, kContinuityCoupling}) {
    const Coupling z(zv);
    const auto members = build_hierarchy(z, plan_for(RunConfig{}, cfg.m - 1), cfg.m, cfg.n + 1);
    const HierarchyMember& mem = members.back();
    const ComplexFunction psi = mem.closed_form_eigenfunction(cfg.n).function();
    const int m = cfg.m, n = cfg.n;
    const RatioStats stats = ratio_stats(psi, [m, n](double x) { return cplx{limit_form(m, n, x), 0.0}; }, grid);
    const ComplexFunction v = [&mem](double x) { return mem.potential(x); };
    const double dev = relative_deviation(v, sec2_family(cfg.m), grid);
    Json j;
    j["coupling"] = zv;
    j["ratio_mean"] = Json::array({stats.mean.real(), stats.mean.imag()});
    j["ratio_variance"] = stats.variance;
    j["potential_deviation"] = dev;
    if (zv == 0.0) {
      const bool ok = stats.variance < kLimitVariance * scale && dev < kLimitPotential * scale;
      j["pass"] = ok;
      pass = ok;
    }
    checks.push_back(j);
  }
  r.json["checks"] = checks;
  r.json["pass"] = pass;
  r.exit_code = pass ? kOk : kVerificationFailure;
  return r;
}

}  // namespace ptwell::cli
