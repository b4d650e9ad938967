#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptwell/complex_math.hpp"
#include "ptwell/potential.hpp"
#include "ptwell/spectral.hpp"

namespace ptwell {

/// psi(0) = alpha and psi'(0) = i beta.  Both are real for PT-symmetric
/// eigenfunctions; beta is reported as Re(psi'(0) / i) otherwise.
struct OriginData {
  double alpha = 1.0;
  double beta = 0.0;
};

/// Value and x-derivative of one branch.
struct SideValue {
  cplx value;
  cplx slope;
};

using SideFunction = std::function<SideValue(double)>;

/// Closed-form eigenfunction of a hierarchy member, one branch per side.
///
/// energy_right/energy_left are the constants E for which each branch solves
/// psi'' = (V - E) psi exactly (they differ from level.energy only by
/// rounding).  `coefficients` lists the normalization constants applied,
/// innermost first, as (C_R, C_L) pairs.
struct PiecewiseEigenfunction {
  SpectralLevel level;
  int depth = 1;
  SideFunction right;
  SideFunction left;
  OriginData origin;
  std::vector<cplx> coefficients;
  cplx energy_right;
  cplx energy_left;

  [[nodiscard]] cplx operator()(double x) const { return x >= 0.0 ? right(x).value : left(x).value; }
  [[nodiscard]] cplx slope(double x) const { return x >= 0.0 ? right(x).slope : left(x).slope; }
  [[nodiscard]] ComplexFunction function() const;
};

/// Square-well eigenfunction psi_R = alpha sinh[rho(1-x)]/sinh rho,
/// psi_L = alpha sinh[sigma(1+x)]/sinh sigma.  When sinh rho vanishes (Z = 0,
/// odd levels) the branches are normalized to psi'(0) = i alpha instead, which
/// is the Z -> 0 limit of the shape.
PiecewiseEigenfunction sw_eigenfunction(const SpectralLevel& level, Coupling z, double alpha = 1.0);
cplx eval_sw_eigenfunction(const SpectralLevel& level, double alpha, double x);

/// x -> conj f(-x).
ComplexFunction pt_transform(ComplexFunction f);

/// max |f(x) - conj f(-x)| / max |f| over the grid.
double pt_defect(const ComplexFunction& f, std::span<const double> grid);

/// -(f(x+h) - 2f(x) + f(x-h))/h^2 + (V(x) - E) f(x); the stencil must stay
/// inside one region.
cplx schrodinger_residual(const ComplexFunction& f, const PiecewisePotential& v, cplx energy,
                          double x, double h);

/// n Chebyshev-spaced points on (-half_width, half_width), 0 removed.
std::vector<double> chebyshev_grid(int n = 101, double half_width = 0.999);

/// Statistics of r(x) = f(x)/g(x) over the points where |g| is not small.
struct RatioStats {
  cplx mean;
  double variance = 0.0;        // mean |r - mean|^2 / |mean|^2
  double max_imag_ratio = 0.0;  // max |Im r| / |mean|
  int points = 0;
};
RatioStats ratio_stats(const ComplexFunction& f, const ComplexFunction& g,
                       std::span<const double> grid, double floor = 1e-3);

/// Gegenbauer polynomial C_n^(m)(x) by the three-term recurrence.
double gegenbauer(int n, int m, double x);

/// cos^m(pi x/2) C_n^(m)(sin(pi x/2)), the Z = 0 shape of member m, level n.
double limit_form(int m, int n, double x);

/// Normalizes raw branches so that psi(0) = alpha on both sides, or
/// psi'(0) = i alpha when the raw branches vanish at the origin.
struct OriginNormalization {
  cplx right;
  cplx left;
  OriginData origin;
};
OriginNormalization normalize_at_origin(const SideValue& raw_right, const SideValue& raw_left,
                                        double alpha);

}  // namespace ptwell
