#pragma once

// Spectrum of the PT-symmetric square well V = -iZ on (0,1), +iZ on (-1,0),
// with Dirichlet walls at x = +-1.
//
// A real level E is mapped to kappa = s - i t with kappa^2 = -E - iZ.  Real
// eigenvalues are the zeros of G(t, Z) = s sinh 2s + t sin 2t (s = Z / 2t),
// which come in pairs inside the bands t in ((2nu+1) pi/2, (nu+1) pi).  Above
// the band's critical coupling the pair leaves the real axis as a complex
// conjugate pair, solved from rho coth rho + sigma coth sigma = 0.

#include <optional>
#include <utility>
#include <vector>

#include "ptwell/complex_math.hpp"

namespace ptwell {

/// Dimensionless coupling strength (hbar = 2m = 1, half-width 1).
class Coupling {
 public:
  explicit Coupling(double z);
  [[nodiscard]] double value() const noexcept { return z_; }

 private:
  double z_;
};

struct MomentumPair {
  double s = 0.0;
  double t = 0.0;
};

/// Result of mapping a real energy to its wavenumber.
struct WaveNumber {
  MomentumPair momentum;
  cplx kappa;  // s - i t
};

enum class Branch { Real, ComplexPairLower, ComplexPairUpper };

const char* to_string(Branch b) noexcept;

/// One eigenvalue together with its right-side (rho) and left-side (sigma)
/// wavenumbers: psi_R'' = rho^2 psi_R on (0,1), psi_L'' = sigma^2 psi_L on
/// (-1,0).  For real levels sigma = conj(rho) = kappa*.
struct SpectralLevel {
  int index = 0;
  cplx energy;
  cplx rho;
  cplx sigma;
  Branch branch = Branch::Real;
  MomentumPair momentum;  // (Re rho, -Im rho); exact (s, t) for real levels

  [[nodiscard]] bool is_real() const noexcept { return branch == Branch::Real; }
};

struct Spectrum {
  Coupling coupling{0.0};
  std::vector<SpectralLevel> levels;
  std::vector<std::pair<int, int>> broken_pairs;

  /// Level with the given global index; throws DomainError if absent.
  [[nodiscard]] const SpectralLevel& by_index(int index) const;
  [[nodiscard]] bool contains(int index) const noexcept;
};

struct CriticalCoupling {
  int nu = 0;
  double z_crit = 0.0;
  double t_merge = 0.0;
  double e_merge = 0.0;
  double residual = 0.0;        // |G(t_merge, z_crit)|
  double slope_residual = 0.0;  // |dG/dt(t_merge, z_crit)|
};

struct CurvePoint {
  double T = 0.0;
  double S = 0.0;
};

/// Starting point for the complex-pair Newton iteration, E = e - i eps.
struct PairSeed {
  double e = 0.0;
  double eps = 0.0;
};

/// (s, t) with 2st = Z and t^2 - s^2 = E, plus kappa = s - i t.
WaveNumber kappa_from_energy(double energy, Coupling z);

/// Right/left wavenumbers of an arbitrary complex energy:
/// rho = sqrt(-E - iZ), sigma = sqrt(-E + iZ), principal branches.
cplx rho_from_energy(cplx energy, Coupling z);
cplx sigma_from_energy(cplx energy, Coupling z);

/// G(t, Z) = s sinh 2s + t sin 2t with s = Z / (2t).
double matching_residual(double t, Coupling z);
/// dG/dt at fixed Z.
double matching_residual_slope(double t, Coupling z);

/// rho coth rho + sigma coth sigma; zero exactly at eigenvalues.
cplx matching_function(cplx rho, cplx sigma);

/// S = arcsinh(sqrt(-pi T sin pi T) / 2), defined on 2m-1 <= T <= 2m.
double curve_x(double T);
/// S = arcsinh(sqrt(Z/(2 pi T) sinh(2Z/(pi T)))).
double curve_y(Coupling z, double T);
/// (T, S) of a real level, T = 2t/pi and sinh^2 S = s sinh(2s) / 2.
CurvePoint curve_point(const SpectralLevel& level);

/// Lower/upper end of the t-band that holds levels 2nu and 2nu+1.
double band_lower(int nu) noexcept;
double band_upper(int nu) noexcept;

/// Up to `count` real levels, skipping bands whose pair has gone complex.
/// Indices are global: band nu contributes levels 2nu and 2nu+1.
std::vector<SpectralLevel> solve_real_spectrum(Coupling z, int count);

CriticalCoupling find_critical_coupling(int nu);

/// The pair (E, conj E) of band nu with Im E < 0 first.
std::pair<SpectralLevel, SpectralLevel> solve_complex_pair(
    Coupling z, int nu, std::optional<PairSeed> seed = std::nullopt);

/// Real levels and complex pairs merged into one ordered spectrum.
Spectrum classify_spectrum(Coupling z, int count);

/// Builds a level from an energy, filling rho/sigma by the principal branch.
SpectralLevel make_level(int index, cplx energy, Coupling z, Branch branch);

namespace detail {

/// Real roots of G in band nu; empty when the pair is complex.  A merged
/// double root is returned twice.
std::vector<double> band_roots(Coupling z, int nu);

/// min over band nu of G and its location.
std::pair<double, double> band_minimum(Coupling z, int nu);

}  // namespace detail

}  // namespace ptwell
