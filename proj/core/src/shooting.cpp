#include "ptwell/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptwell/errors.hpp"

namespace ptwell {

namespace {

constexpr double kOverflow = 1e100;
constexpr double kSeedPerturbation = 1.05;
constexpr double kDuplicateTolerance = 1e-6;

double xi_of(double u, double a) { return u + a * std::log(u); }

// Inverse of xi(u) from below; xi is increasing and concave so Newton
// approaches the root monotonically.
double u_of(double xi, double a, double guess) {
  double u = guess;
  for (int i = 0; i < 100; ++i) {
    const double du = -(xi_of(u, a) - xi) / (1.0 + a / u);
    u += du;
    if (std::abs(du) <= 1e-16 * u) break;
  }
  return u;
}

bool less_spectral(cplx a, cplx b) {
  if (std::abs(a.real() - b.real()) > 1e-8 * (1.0 + std::abs(a))) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

void ShootingConfig::validate() const {
  if (!(step > 0.0 && step < 1e-2)) throw DomainError("shooting step must lie in (0, 1e-2)");
  if (!(scan_step > 0.0 && scan_step < 1e-1)) throw DomainError("scan step must lie in (0, 1e-1)");
  if (!(wall_offset > 0.0 && wall_offset < 1e-3)) throw DomainError("wall offset must lie in (0, 1e-3)");
  if (!(map_scale > 0.0)) throw DomainError("map scale must be positive");
  if (scan_points < 2) throw DomainError("scan needs at least two points");
  if (max_iterations < 1) throw DomainError("max_iterations must be positive");
}

ShootingSolver::Mesh ShootingSolver::build_mesh(const ComplexFunction& v, bool right, double step,
                                                const ShootingConfig& cfg) {
  const double a = cfg.map_scale;
  const double xi0 = xi_of(cfg.wall_offset, a);
  const double xi1 = xi_of(1.0, a);
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((xi1 - xi0) / step)));
  Mesh mesh;
  mesh.h = (xi1 - xi0) / static_cast<double>(n);
  mesh.v_node.resize(n + 1);
  mesh.j_node.resize(n + 1);
  mesh.v_mid.resize(n);
  mesh.j_mid.resize(n);
  auto x_of = [right](double u) { return right ? 1.0 - u : u - 1.0; };
  double u = cfg.wall_offset;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) u = k == n ? 1.0 : u_of(xi0 + static_cast<double>(k) * mesh.h, a, u);
    mesh.v_node[k] = v(x_of(u));
    mesh.j_node[k] = u / (u + a);
    if (k < n) {
      const double um = u_of(xi0 + (static_cast<double>(k) + 0.5) * mesh.h, a, u);
      mesh.v_mid[k] = v(x_of(um));
      mesh.j_mid[k] = um / (um + a);
    }
  }
  return mesh;
}

ShootingSolver::ShootingSolver(const PiecewisePotential& v, ShootingConfig cfg)
    : cfg_(cfg), exponent_(v.endpoint_exponent), pt_symmetric_(v.pt_symmetric) {
  cfg_.validate();
  if (exponent_ < 1) throw DomainError("endpoint exponent must be positive");
  right_ = build_mesh(v.right, true, cfg_.step, cfg_);
  left_ = build_mesh(v.left, false, cfg_.step, cfg_);
  right_coarse_ = build_mesh(v.right, true, cfg_.scan_step, cfg_);
  left_coarse_ = build_mesh(v.left, false, cfg_.scan_step, cfg_);
}

SideSolution ShootingSolver::run(const Mesh& mesh, cplx energy, Side side) const {
  const double p = exponent_;
  const double delta = cfg_.wall_offset;
  cplx psi = std::pow(delta, p);
  cplx dpsi = p * std::pow(delta, p - 1.0);
  double log_scale = 0.0;
  const double h = mesh.h;
  const std::size_t n = mesh.v_mid.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double j0 = mesh.j_node[k], jm = mesh.j_mid[k], j1 = mesh.j_node[k + 1];
    const cplx q0 = j0 * (mesh.v_node[k] - energy);
    const cplx qm = jm * (mesh.v_mid[k] - energy);
    const cplx q1 = j1 * (mesh.v_node[k + 1] - energy);

    const cplx a1 = j0 * dpsi, b1 = q0 * psi;
    const cplx a2 = jm * (dpsi + 0.5 * h * b1), b2 = qm * (psi + 0.5 * h * a1);
    const cplx a3 = jm * (dpsi + 0.5 * h * b2), b3 = qm * (psi + 0.5 * h * a2);
    const cplx a4 = j1 * (dpsi + h * b3), b4 = q1 * (psi + h * a3);
    psi += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    dpsi += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);

    const double mag = std::abs(psi) + std::abs(dpsi);
    if (mag > kOverflow) {
      psi /= mag;
      dpsi /= mag;
      log_scale += std::log(mag);
    }
  }
  // d/dx = -d/du on the right, +d/du on the left.
  return {psi, side == Side::Right ? -dpsi : dpsi, log_scale};
}

SideSolution ShootingSolver::integrate(cplx energy, Side side, bool coarse) const {
  const Mesh& mesh = side == Side::Right ? (coarse ? right_coarse_ : right_) : (coarse ? left_coarse_ : left_);
  return run(mesh, energy, side);
}

MismatchValue ShootingSolver::mismatch(cplx energy, bool coarse) const {
  const SideSolution r = integrate(energy, Side::Right, coarse);
  const SideSolution l = integrate(energy, Side::Left, coarse);
  MismatchValue m;
  m.energy = energy;
  m.wronskian = l.value * r.slope - l.slope * r.value;
  // |W| <= |(psi_L, psi_L')| |(psi_R, psi_R')|, so relative() lies in [0, 1].
  m.scale = std::hypot(std::abs(l.value), std::abs(l.slope)) * std::hypot(std::abs(r.value), std::abs(r.slope));
  if (m.scale == 0.0) m.scale = 1.0;
  return m;
}

std::optional<cplx> ShootingSolver::polish(cplx seed) const {
  cplx e = seed;
  for (int it = 0; it < cfg_.max_iterations; ++it) {
    const cplx w = mismatch(e).wronskian;
    const double fd = 1e-6 * (1.0 + std::abs(e));
    const cplx dw = (mismatch(e + fd).wronskian - w) / fd;
    if (dw == cplx{0.0, 0.0} || !std::isfinite(std::abs(dw))) return std::nullopt;
    cplx step = w / dw;
    const double cap = 0.25 * (1.0 + std::abs(e));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    e -= step;
    if (!std::isfinite(std::abs(e))) return std::nullopt;
    if (std::abs(step) <= cfg_.newton_tolerance * (1.0 + std::abs(e))) return e;
  }
  return std::nullopt;
}

OracleSpectrum ShootingSolver::find_spectrum(int count, const SearchBox& box,
                                             std::span<const cplx> seeds) const {
  if (count < 1) throw DomainError("count must be positive");
  if (!(box.re_max > box.re_min)) throw DomainError("empty search box");

  std::vector<cplx> starts;
  const int n = cfg_.scan_points;
  std::vector<double> grid(static_cast<std::size_t>(n));
  std::vector<MismatchValue> scan(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = box.re_min + (box.re_max - box.re_min) * i / (n - 1);
    scan[static_cast<std::size_t>(i)] = mismatch(grid[static_cast<std::size_t>(i)], true);
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (pt_symmetric_) {
      const double w0 = scan[i].wronskian.real(), w1 = scan[i + 1].wronskian.real();
      if ((w0 < 0.0) != (w1 < 0.0)) starts.emplace_back(grid[i] + (grid[i + 1] - grid[i]) * w0 / (w0 - w1));
    }
    if (i > 0 && scan[i].relative() < scan[i - 1].relative() && scan[i].relative() < scan[i + 1].relative()) {
      starts.emplace_back(grid[i]);
    }
  }
  for (const cplx s : seeds) starts.push_back(s * kSeedPerturbation);

  OracleSpectrum out;
  std::vector<cplx> found;
  for (const cplx s : starts) {
    const auto root = polish(s);
    if (!root) {
      out.diagnostics.push_back("no convergence from seed (" + std::to_string(s.real()) + ", " +
                                std::to_string(s.imag()) + ")");
      continue;
    }
    if (!box.contains(*root)) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](cplx f) {
      return std::abs(f - *root) <= kDuplicateTolerance * (1.0 + std::abs(f));
    });
    if (!duplicate) found.push_back(*root);
  }
  std::sort(found.begin(), found.end(), less_spectral);
  if (static_cast<int>(found.size()) > count) found.resize(static_cast<std::size_t>(count));
  if (static_cast<int>(found.size()) < count) {
    out.diagnostics.push_back("found " + std::to_string(found.size()) + " of " + std::to_string(count) +
                              " eigenvalues");
  }
  out.eigenvalues = std::move(found);
  return out;
}

SideSolution integrate_side(const PiecewisePotential& v, cplx energy, Side side, const ShootingConfig& cfg) {
  return ShootingSolver(v, cfg).integrate(energy, side);
}

MismatchValue mismatch(const PiecewisePotential& v, cplx energy, const ShootingConfig& cfg) {
  return ShootingSolver(v, cfg).mismatch(energy);
}

OracleSpectrum find_spectrum_numeric(const PiecewisePotential& v, int count, const SearchBox& box,
                                     const ShootingConfig& cfg, std::span<const cplx> seeds) {
  return ShootingSolver(v, cfg).find_spectrum(count, box, seeds);
}

}  // namespace ptwell
