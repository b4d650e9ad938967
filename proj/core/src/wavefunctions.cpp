#include "ptwell/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptwell/errors.hpp"

namespace ptwell {

PiecewisePotential square_well_potential(Coupling z) {
  const double zv = z.value();
  PiecewisePotential v;
  v.right = [zv](double) { return cplx{0.0, -zv}; };
  v.left = [zv](double) { return cplx{0.0, zv}; };
  v.endpoint_exponent = 1;
  v.pt_symmetric = true;
  return v;
}

ComplexFunction PiecewiseEigenfunction::function() const {
  return [r = right, l = left](double x) { return x >= 0.0 ? r(x).value : l(x).value; };
}

OriginNormalization normalize_at_origin(const SideValue& raw_right, const SideValue& raw_left,
                                        double alpha) {
  const double value_mag = std::abs(raw_right.value);
  const double slope_mag = std::abs(raw_right.slope);
  if (value_mag == 0.0 && slope_mag == 0.0) {
    throw DomainError("normalize_at_origin: branch vanishes identically at the origin");
  }
  OriginNormalization out;
  if (value_mag > 1e-9 * slope_mag) {
    out.right = alpha / raw_right.value;
    out.left = alpha / raw_left.value;
    out.origin = {alpha, (out.right * raw_right.slope).imag()};
  } else {
    // Node at the origin: fix psi'(0) = i alpha.
    out.right = kI * alpha / raw_right.slope;
    out.left = kI * alpha / raw_left.slope;
    out.origin = {0.0, alpha};
  }
  return out;
}

PiecewiseEigenfunction sw_eigenfunction(const SpectralLevel& level, Coupling z, double alpha) {
  const cplx rho = level.rho;
  const cplx sigma = level.sigma;
  const SideValue right0{std::sinh(rho), -rho * std::cosh(rho)};
  const SideValue left0{std::sinh(sigma), sigma * std::cosh(sigma)};
  const OriginNormalization norm = normalize_at_origin(right0, left0, alpha);

  PiecewiseEigenfunction psi;
  psi.level = level;
  psi.depth = 1;
  psi.origin = norm.origin;
  psi.coefficients = {norm.right, norm.left};
  psi.energy_right = cplx{0.0, -z.value()} - rho * rho;
  psi.energy_left = cplx{0.0, z.value()} - sigma * sigma;
  psi.right = [rho, c = norm.right](double x) {
    const cplx arg = rho * (1.0 - x);
    return SideValue{c * std::sinh(arg), -c * rho * std::cosh(arg)};
  };
  psi.left = [sigma, c = norm.left](double x) {
    const cplx arg = sigma * (1.0 + x);
    return SideValue{c * std::sinh(arg), c * sigma * std::cosh(arg)};
  };
  return psi;
}

cplx eval_sw_eigenfunction(const SpectralLevel& level, double alpha, double x) {
  if (x >= 0.0) return alpha * std::sinh(level.rho * (1.0 - x)) / std::sinh(level.rho);
  return alpha * std::sinh(level.sigma * (1.0 + x)) / std::sinh(level.sigma);
}

ComplexFunction pt_transform(ComplexFunction f) {
  return [f = std::move(f)](double x) { return std::conj(f(-x)); };
}

double pt_defect(const ComplexFunction& f, std::span<const double> grid) {
  if (grid.empty()) throw DomainError("pt_defect: empty grid");
  double defect = 0.0;
  double scale = 0.0;
  for (double x : grid) {
    const cplx fx = f(x);
    defect = std::max(defect, std::abs(fx - std::conj(f(-x))));
    scale = std::max(scale, std::abs(fx));
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

cplx schrodinger_residual(const ComplexFunction& f, const PiecewisePotential& v, cplx energy,
                          double x, double h) {
  if (!(h > 0.0)) throw DomainError("schrodinger_residual: h must be positive");
  const double lo = x - h;
  const double hi = x + h;
  const bool right = lo > 0.0 && hi < 1.0;
  const bool left = hi < 0.0 && lo > -1.0;
  if (!right && !left) {
    throw DomainError("schrodinger_residual: stencil at x=" + std::to_string(x) +
                      " crosses the origin or a wall");
  }
  const cplx fx = f(x);
  return -(f(hi) - 2.0 * fx + f(lo)) / (h * h) + (v(x) - energy) * fx;
}

std::vector<double> chebyshev_grid(int n, double half_width) {
  if (n < 2) throw DomainError("chebyshev_grid: need at least two points");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double x = half_width * std::cos(kPi * (2.0 * k + 1.0) / (2.0 * n));
    if (std::abs(x) > 1e-12) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

RatioStats ratio_stats(const ComplexFunction& f, const ComplexFunction& g,
                       std::span<const double> grid, double floor) {
  if (grid.empty()) throw DomainError("ratio_stats: empty grid");
  std::vector<cplx> gv;
  gv.reserve(grid.size());
  double g_max = 0.0;
  for (double x : grid) {
    gv.push_back(g(x));
    g_max = std::max(g_max, std::abs(gv.back()));
  }
  std::vector<cplx> ratios;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(gv[i]) > floor * g_max) ratios.push_back(f(grid[i]) / gv[i]);
  }
  RatioStats stats;
  stats.points = static_cast<int>(ratios.size());
  if (ratios.empty()) return stats;
  cplx sum{};
  for (const cplx& r : ratios) sum += r;
  stats.mean = sum / static_cast<double>(ratios.size());
  const double mean_mag = std::abs(stats.mean);
  if (mean_mag == 0.0) {
    stats.variance = std::numeric_limits<double>::infinity();
    return stats;
  }
  double var = 0.0;
  double imag = 0.0;
  for (const cplx& r : ratios) {
    var += std::norm(r - stats.mean);
    imag = std::max(imag, std::abs(r.imag()));
  }
  stats.variance = var / static_cast<double>(ratios.size()) / (mean_mag * mean_mag);
  stats.max_imag_ratio = imag / mean_mag;
  return stats;
}

}  // namespace ptwell
