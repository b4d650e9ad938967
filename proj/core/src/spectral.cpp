#include "ptwell/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "ptwell/errors.hpp"

namespace ptwell {

namespace {

constexpr int kBandSamples = 512;
constexpr double kBisectionWidth = 1e-8;
constexpr double kRootTolerance = 1e-12;
constexpr double kMatchingTolerance = 1e-10;
constexpr int kMaxNewton = 100;
constexpr double kCriticalBracketWidth = 1e-3;
constexpr double kContinuationStep = 0.05;
constexpr double kPairTolerance = 1e-12;
constexpr int kMaxBands = 100000;

// f(s) = s sinh 2s and its first two derivatives.
struct SinhTerm {
  double f, df, d2f;
};
SinhTerm sinh_term(double s) {
  const double sh = std::sinh(2.0 * s);
  const double ch = std::cosh(2.0 * s);
  return {s * sh, sh + 2.0 * s * ch, 4.0 * ch + 4.0 * s * sh};
}

// G and the partial derivatives used by the tangency solve.
struct ResidualJet {
  double g, g_t, g_z, g_tt, g_tz;
};
ResidualJet residual_jet(double t, double z) {
  const double s = z / (2.0 * t);
  const SinhTerm f = sinh_term(s);
  const double s_t = -s / t;
  const double s_tt = 2.0 * s / (t * t);
  const double s_z = 1.0 / (2.0 * t);
  const double s_tz = -1.0 / (2.0 * t * t);
  const double sn = std::sin(2.0 * t);
  const double cs = std::cos(2.0 * t);
  ResidualJet j{};
  j.g = f.f + t * sn;
  j.g_t = f.df * s_t + sn + 2.0 * t * cs;
  j.g_z = f.df * s_z;
  j.g_tt = f.d2f * s_t * s_t + f.df * s_tt + 4.0 * cs - 4.0 * t * sn;
  j.g_tz = f.d2f * s_z * s_t + f.df * s_tz;
  return j;
}

double refine_root(Coupling z, double lo, double hi) {
  double g_lo = matching_residual(lo, z);
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = matching_residual(mid, z);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxNewton; ++it) {
    const double g = matching_residual(t, z);
    if (std::abs(g) < 0.25 * kRootTolerance) break;
    const double slope = matching_residual_slope(t, z);
    if (slope == 0.0) break;
    double next = t - g / slope;
    if (next <= lo || next >= hi) next = 0.5 * (lo + (next <= lo ? t : hi));
    if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

// Smallest |Re(kappa coth kappa)| attainable with t rounded to a double.
double matching_floor(double t, cplx kappa, Coupling z) {
  const double slope = std::abs(matching_residual_slope(t, z));
  const double sinh2 = std::norm(std::sinh(kappa));
  return slope * std::numeric_limits<double>::epsilon() * t / sinh2;
}

SpectralLevel real_level(int index, double t, Coupling z) {
  const double s = z.value() / (2.0 * t);
  SpectralLevel level;
  level.index = index;
  level.energy = cplx{t * t - s * s, 0.0};
  level.rho = cplx{s, -t};
  level.sigma = cplx{s, t};
  level.branch = Branch::Real;
  level.momentum = {s, t};

  // Coth-form cross-check; skipped where sinh kappa vanishes (Z = 0, odd
  // levels) because the coth form is indeterminate there.
  if (std::abs(std::sinh(level.rho)) > 1e-8) {
    const double check = std::abs(matching_function(level.rho, level.sigma));
    const double tol = std::max(kMatchingTolerance, 8.0 * matching_floor(t, level.rho, z));
    if (!(check < tol)) {
      throw ConvergenceError("root at t=" + std::to_string(t) + " fails the coth-form check (" +
                             std::to_string(check) + ")");
    }
  }
  return level;
}

struct PairSolve {
  double e, eps, residual;
  bool converged;
};

std::array<double, 2> pair_residual(double e, double eps, Coupling z) {
  const cplx energy{e, -eps};
  const cplx r = matching_function(rho_from_energy(energy, z), sigma_from_energy(energy, z));
  return {r.real(), r.imag()};
}

PairSolve newton_pair(double e, double eps, Coupling z) {
  auto norm = [](const std::array<double, 2>& f) { return std::hypot(f[0], f[1]); };
  std::array<double, 2> f = pair_residual(e, eps, z);
  double fn = norm(f);
  for (int it = 0; it < kMaxNewton; ++it) {
    if (fn < kPairTolerance) return {e, eps, fn, true};
    const double he = 1e-7 * (1.0 + std::abs(e));
    const double hp = 1e-7 * (1.0 + std::abs(eps));
    const auto fe = pair_residual(e + he, eps, z);
    const auto fp = pair_residual(e, eps + hp, z);
    const double j00 = (fe[0] - f[0]) / he, j01 = (fp[0] - f[0]) / hp;
    const double j10 = (fe[1] - f[1]) / he, j11 = (fp[1] - f[1]) / hp;
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double de = -(j11 * f[0] - j01 * f[1]) / det;
    const double dp = -(-j10 * f[0] + j00 * f[1]) / det;
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      const auto trial = pair_residual(e + lambda * de, eps + lambda * dp, z);
      const double tn = norm(trial);
      if (std::isfinite(tn) && tn < fn) {
        e += lambda * de;
        eps += lambda * dp;
        f = trial;
        fn = tn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  return {e, eps, fn, fn < kMatchingTolerance};
}

}  // namespace

Coupling::Coupling(double z) : z_(z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("coupling must be finite and non-negative, got " + std::to_string(z));
  }
}

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Real:
      return "real";
    case Branch::ComplexPairLower:
      return "complex_lower";
    case Branch::ComplexPairUpper:
      return "complex_upper";
  }
  return "unknown";
}

const SpectralLevel& Spectrum::by_index(int index) const {
  for (const auto& level : levels) {
    if (level.index == index) return level;
  }
  throw DomainError("spectrum has no level with index " + std::to_string(index));
}

bool Spectrum::contains(int index) const noexcept {
  return std::any_of(levels.begin(), levels.end(),
                     [index](const SpectralLevel& l) { return l.index == index; });
}

WaveNumber kappa_from_energy(double energy, Coupling z) {
  const double zv = z.value();
  if (zv == 0.0 && energy <= 0.0) {
    throw DomainError("kappa_from_energy: E must be positive when Z = 0");
  }
  const double r = std::hypot(energy, zv);
  // E + sqrt(E^2 + Z^2), rewritten for E < 0 to avoid cancellation.
  const double q = energy >= 0.0 ? energy + r : zv * zv / (r - energy);
  const double t = std::sqrt(0.5 * q);
  const double s = zv / (2.0 * t);
  return {{s, t}, cplx{s, -t}};
}

cplx rho_from_energy(cplx energy, Coupling z) {
  return principal_sqrt(-energy - kI * z.value());
}

cplx sigma_from_energy(cplx energy, Coupling z) {
  return principal_sqrt(-energy + kI * z.value());
}

double matching_residual(double t, Coupling z) {
  if (!(t > 0.0)) throw DomainError("matching_residual: t must be positive");
  const double s = z.value() / (2.0 * t);
  return s * std::sinh(2.0 * s) + t * std::sin(2.0 * t);
}

double matching_residual_slope(double t, Coupling z) {
  if (!(t > 0.0)) throw DomainError("matching_residual_slope: t must be positive");
  return residual_jet(t, z.value()).g_t;
}

cplx matching_function(cplx rho, cplx sigma) {
  return rho * stable_coth(rho) + sigma * stable_coth(sigma);
}

double curve_x(double T) {
  if (!(T > 0.0)) throw DomainError("curve_x: T must be positive");
  const double m = std::ceil(0.5 * T);
  if (T < 2.0 * m - 1.0 || T > 2.0 * m) {
    throw DomainError("curve_x: T = " + std::to_string(T) + " lies outside the bands [2m-1, 2m]");
  }
  const double v = std::max(0.0, -kPi * T * std::sin(kPi * T));
  return std::asinh(0.5 * std::sqrt(v));
}

double curve_y(Coupling z, double T) {
  if (!(T > 0.0)) throw DomainError("curve_y: T must be positive");
  const double zv = z.value();
  return std::asinh(std::sqrt(zv / (2.0 * kPi * T) * std::sinh(2.0 * zv / (kPi * T))));
}

CurvePoint curve_point(const SpectralLevel& level) {
  const double s = level.momentum.s;
  const double t = level.momentum.t;
  return {2.0 * t / kPi, std::asinh(std::sqrt(0.5 * s * std::sinh(2.0 * s)))};
}

double band_lower(int nu) noexcept { return (2.0 * nu + 1.0) * kPi / 2.0; }
double band_upper(int nu) noexcept { return (nu + 1.0) * kPi; }

namespace detail {

std::pair<double, double> band_minimum(Coupling z, int nu) {
  const double a = band_lower(nu);
  const double b = band_upper(nu);
  const double dt = (b - a) / kBandSamples;
  int best = 0;
  double best_g = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kBandSamples; ++i) {
    const double g = matching_residual(a + i * dt, z);
    if (g < best_g) {
      best_g = g;
      best = i;
    }
  }
  const double lo = a + std::max(0, best - 1) * dt;
  const double hi = a + std::min(kBandSamples, best + 1) * dt;
  auto [t_min, g_min] = boost::math::tools::brent_find_minima(
      [z](double t) { return matching_residual(t, z); }, lo, hi, std::numeric_limits<double>::digits);
  if (best_g < g_min) return {a + best * dt, best_g};
  return {t_min, g_min};
}

std::vector<double> band_roots(Coupling z, int nu) {
  const double a = band_lower(nu);
  const double b = band_upper(nu);
  if (z.value() == 0.0) return {a, b};

  const double dt = (b - a) / kBandSamples;
  std::vector<std::pair<double, double>> brackets;
  double t_prev = a;
  double g_prev = matching_residual(a, z);
  for (int i = 1; i <= kBandSamples; ++i) {
    const double t = (i == kBandSamples) ? b : a + i * dt;
    const double g = matching_residual(t, z);
    if ((g < 0.0) != (g_prev < 0.0)) brackets.emplace_back(t_prev, t);
    t_prev = t;
    g_prev = g;
  }

  if (brackets.size() == 2) {
    return {refine_root(z, brackets[0].first, brackets[0].second),
            refine_root(z, brackets[1].first, brackets[1].second)};
  }
  if (!brackets.empty()) {
    throw ConvergenceError("band " + std::to_string(nu) + ": " + std::to_string(brackets.size()) +
                           " sign changes of the matching residual");
  }

  // No sign change on the grid: either the pair is complex, or the two roots
  // sit closer together than the grid spacing around the band minimum.
  const auto [t_min, g_min] = band_minimum(z, nu);
  if (g_min < 0.0) {
    return {refine_root(z, a, t_min), refine_root(z, t_min, b)};
  }
  if (g_min < kRootTolerance) return {t_min, t_min};
  return {};
}

}  // namespace detail

std::vector<SpectralLevel> solve_real_spectrum(Coupling z, int count) {
  if (count < 0) throw DomainError("solve_real_spectrum: count must be non-negative");
  std::vector<SpectralLevel> levels;
  levels.reserve(static_cast<std::size_t>(count));
  for (int nu = 0; static_cast<int>(levels.size()) < count; ++nu) {
    if (nu >= kMaxBands) throw ConvergenceError("solve_real_spectrum: band limit reached");
    const auto roots = detail::band_roots(z, nu);
    for (std::size_t k = 0; k < roots.size() && static_cast<int>(levels.size()) < count; ++k) {
      levels.push_back(real_level(2 * nu + static_cast<int>(k), roots[k], z));
    }
  }
  return levels;
}

CriticalCoupling find_critical_coupling(int nu) {
  if (nu < 0) throw DomainError("find_critical_coupling: nu must be non-negative");
  auto has_pair = [nu](double zv) { return detail::band_minimum(Coupling{zv}, nu).second < 0.0; };

  double z_lo = 0.0;
  double z_hi = 1.0;
  while (has_pair(z_hi)) {
    z_lo = z_hi;
    z_hi *= 2.0;
    if (z_hi > 1e6) throw ConvergenceError("find_critical_coupling: no upper bracket");
  }
  while (z_hi - z_lo > kCriticalBracketWidth) {
    const double mid = 0.5 * (z_lo + z_hi);
    (has_pair(mid) ? z_lo : z_hi) = mid;
  }

  double zc = 0.5 * (z_lo + z_hi);
  double t = detail::band_minimum(Coupling{zc}, nu).first;
  auto norm = [](const ResidualJet& j) { return std::hypot(j.g, j.g_t); };
  ResidualJet jet = residual_jet(t, zc);
  for (int it = 0; it < kMaxNewton; ++it) {
    if (std::abs(jet.g) < 1e-14 && std::abs(jet.g_t) < 1e-13) break;
    // [g_t g_z; g_tt g_tz] [dt dz]^T = -[g g_t]^T
    const double det = jet.g_t * jet.g_tz - jet.g_z * jet.g_tt;
    if (det == 0.0) break;
    const double d_t = -(jet.g_tz * jet.g - jet.g_z * jet.g_t) / det;
    const double d_z = -(-jet.g_tt * jet.g + jet.g_t * jet.g_t) / det;
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k) {
      const ResidualJet trial = residual_jet(t + lambda * d_t, zc + lambda * d_z);
      if (norm(trial) < norm(jet)) {
        t += lambda * d_t;
        zc += lambda * d_z;
        jet = trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (!(std::abs(jet.g) < 1e-10 && std::abs(jet.g_t) < 1e-8)) {
    throw ConvergenceError("find_critical_coupling: tangency solve did not converge for nu=" +
                           std::to_string(nu));
  }
  const double s = zc / (2.0 * t);
  return {nu, zc, t, t * t - s * s, std::abs(jet.g), std::abs(jet.g_t)};
}

SpectralLevel make_level(int index, cplx energy, Coupling z, Branch branch) {
  SpectralLevel level;
  level.index = index;
  level.energy = energy;
  level.rho = rho_from_energy(energy, z);
  level.sigma = sigma_from_energy(energy, z);
  level.branch = branch;
  level.momentum = {level.rho.real(), -level.rho.imag()};
  return level;
}

std::pair<SpectralLevel, SpectralLevel> solve_complex_pair(Coupling z, int nu,
                                                           std::optional<PairSeed> seed) {
  if (nu < 0) throw DomainError("solve_complex_pair: nu must be non-negative");
  PairSolve sol{};
  if (seed) {
    sol = newton_pair(seed->e, seed->eps, z);
  } else {
    const CriticalCoupling crit = find_critical_coupling(nu);
    if (z.value() <= crit.z_crit) {
      throw BelowCriticalError("pair " + std::to_string(nu) + " is still real at Z=" +
                               std::to_string(z.value()) + " (critical " +
                               std::to_string(crit.z_crit) + ")");
    }
    const double span = z.value() - crit.z_crit;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / kContinuationStep)));
    const double dz = span / steps;
    double e = crit.e_merge;
    double eps = 1e-3;
    double e_prev = e, eps_prev = eps;
    for (int k = 1; k <= steps; ++k) {
      double e_seed = e, eps_seed = eps;
      if (k >= 3) {  // secant predictor along the continuation path
        e_seed = 2.0 * e - e_prev;
        eps_seed = 2.0 * eps - eps_prev;
      }
      sol = newton_pair(e_seed, eps_seed, Coupling{crit.z_crit + k * dz});
      if (!sol.converged) {
        throw ConvergenceError("solve_complex_pair: continuation failed at Z=" +
                               std::to_string(crit.z_crit + k * dz));
      }
      e_prev = e;
      eps_prev = eps;
      e = sol.e;
      eps = std::abs(sol.eps);
    }
  }
  if (!sol.converged) throw ConvergenceError("solve_complex_pair: Newton did not converge");
  const double eps = std::abs(sol.eps);
  if (!(eps > 0.0)) throw BelowCriticalError("solve_complex_pair: converged onto the real axis");
  SpectralLevel lower = make_level(2 * nu, cplx{sol.e, -eps}, z, Branch::ComplexPairLower);
  SpectralLevel upper = make_level(2 * nu + 1, cplx{sol.e, eps}, z, Branch::ComplexPairUpper);
  return {lower, upper};
}

Spectrum classify_spectrum(Coupling z, int count) {
  if (count < 0) throw DomainError("classify_spectrum: count must be non-negative");
  Spectrum spectrum;
  spectrum.coupling = z;
  for (int nu = 0; static_cast<int>(spectrum.levels.size()) < count; ++nu) {
    if (nu >= kMaxBands) throw ConvergenceError("classify_spectrum: band limit reached");
    const auto roots = detail::band_roots(z, nu);
    if (roots.size() == 2) {
      for (int k = 0; k < 2; ++k) spectrum.levels.push_back(real_level(2 * nu + k, roots[k], z));
    } else {
      auto [lower, upper] = solve_complex_pair(z, nu);
      spectrum.levels.push_back(lower);
      spectrum.levels.push_back(upper);
      spectrum.broken_pairs.emplace_back(2 * nu, 2 * nu + 1);
    }
  }
  if (static_cast<int>(spectrum.levels.size()) > count) {
    spectrum.levels.resize(static_cast<std::size_t>(count));
    std::erase_if(spectrum.broken_pairs,
                  [count](const std::pair<int, int>& p) { return p.second >= count; });
  }
  return spectrum;
}

}  // namespace ptwell
