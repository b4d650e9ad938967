#pragma once

// Shooting oracle: integrates psi'' = (V - E) psi from each wall toward the
// origin and reports the Wronskian mismatch there.  It only consumes a
// potential evaluator and the wall exponent, never a closed-form
// eigenfunction.
//
// Near a wall V ~ p(p-1)/u^2, so the integration runs in xi = u + a ln u
// (u = distance from the wall), which spaces nodes geometrically close to the
// wall and uniformly far from it.  RK4 steps are uniform in xi.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptwell/complex_math.hpp"
#include "ptwell/potential.hpp"

namespace ptwell {

struct ShootingConfig {
  double step = 2e-4;            // RK4 step in xi
  double wall_offset = 1e-6;     // start at u = delta
  double newton_tolerance = 1e-10;
  double scan_step = 2e-3;       // coarser step used for the real-axis scan
  int scan_points = 1500;
  double map_scale = 0.1;        // a in xi = u + a ln u
  int max_iterations = 60;

  /// Throws DomainError unless 0 < step < 1e-2 and 0 < wall_offset < 1e-3.
  void validate() const;
};

enum class Side { Right, Left };

/// psi and its x-derivative at the origin; log_scale is the natural log of
/// the factor removed by renormalization.
struct SideSolution {
  cplx value;
  cplx slope;
  double log_scale = 0.0;
};

struct MismatchValue {
  cplx energy;
  cplx wronskian;  // psi_L psi_R' - psi_L' psi_R at 0
  double scale = 1.0;  // |(psi_L, psi_L')| |(psi_R, psi_R')|

  [[nodiscard]] double relative() const { return std::abs(wronskian) / scale; }
};

struct SearchBox {
  double re_min = -50.0;
  double re_max = 250.0;
  double im_min = -50.0;
  double im_max = 50.0;

  [[nodiscard]] bool contains(cplx e) const {
    return e.real() >= re_min && e.real() <= re_max && e.imag() >= im_min && e.imag() <= im_max;
  }
};

struct OracleSpectrum {
  std::vector<cplx> eigenvalues;         // sorted by (Re, Im)
  std::vector<std::string> diagnostics;  // seeds that did not converge
};

/// Potential sampled once on the xi meshes; every energy after that is
/// plain arithmetic.
class ShootingSolver {
 public:
  ShootingSolver(const PiecewisePotential& v, ShootingConfig cfg = {});

  [[nodiscard]] SideSolution integrate(cplx energy, Side side, bool coarse = false) const;
  [[nodiscard]] MismatchValue mismatch(cplx energy, bool coarse = false) const;
  /// Complex Newton on the Wronskian; nullopt when it does not converge.
  [[nodiscard]] std::optional<cplx> polish(cplx seed) const;
  [[nodiscard]] OracleSpectrum find_spectrum(int count, const SearchBox& box,
                                             std::span<const cplx> seeds = {}) const;
  [[nodiscard]] const ShootingConfig& config() const noexcept { return cfg_; }

 private:
  struct Mesh {
    double h = 0.0;
    std::vector<cplx> v_node, v_mid;
    std::vector<double> j_node, j_mid;
  };
  static Mesh build_mesh(const ComplexFunction& v, bool right, double step, const ShootingConfig& cfg);
  SideSolution run(const Mesh& mesh, cplx energy, Side side) const;

  ShootingConfig cfg_;
  int exponent_;
  bool pt_symmetric_;
  Mesh right_, left_, right_coarse_, left_coarse_;
};

SideSolution integrate_side(const PiecewisePotential& v, cplx energy, Side side,
                            const ShootingConfig& cfg = {});
MismatchValue mismatch(const PiecewisePotential& v, cplx energy, const ShootingConfig& cfg = {});

/// Real-axis scan plus Newton polish.  Extra seeds (e.g. complex pairs
/// predicted elsewhere) are perturbed by +5% before polishing.
OracleSpectrum find_spectrum_numeric(const PiecewisePotential& v, int count, const SearchBox& box,
                                     const ShootingConfig& cfg = {}, std::span<const cplx> seeds = {});

}  // namespace ptwell
