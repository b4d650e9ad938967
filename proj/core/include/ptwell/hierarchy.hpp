#pragma once

// SUSY partner chains of the PT-symmetric square well.
//
// Member m+1 is obtained from member m by factorizing at one of its levels:
//   V_m = W^2 - W' + E_f,   V_{m+1} = W^2 + W' + E_f,   W = -psi_f'/psi_f,
// and eigenfunctions follow by psi_{m+1} = (d/dx + W) psi_m.  Potentials are
// reported unshifted, so member m+1 keeps the energies of member m minus the
// eliminated level.  Closed forms exist for the first three members; deeper
// members use the logarithmic-derivative route.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptwell/potential.hpp"
#include "ptwell/spectral.hpp"
#include "ptwell/wavefunctions.hpp"

namespace ptwell {

/// W with its analytic x-derivative.  energy_right/energy_left are the
/// side-consistent factorization energies (see PiecewiseEigenfunction).
struct Superpotential {
  ComplexFunction right;
  ComplexFunction left;
  ComplexFunction right_slope;
  ComplexFunction left_slope;
  cplx factorization_energy;
  cplx energy_right;
  cplx energy_left;
  SpectralLevel eliminated;
  std::vector<SpectralLevel> prefix;  // levels removed before this step
  Coupling coupling{0.0};

  /// Depth of the member this W factorizes.
  [[nodiscard]] int member_depth() const noexcept { return static_cast<int>(prefix.size()) + 1; }
  [[nodiscard]] cplx operator()(double x) const { return x >= 0.0 ? right(x) : left(x); }
  [[nodiscard]] cplx slope(double x) const { return x >= 0.0 ? right_slope(x) : left_slope(x); }
};

enum class Elimination { LowestReal, ComplexLower, ComplexUpper };

struct EliminationPlan {
  std::vector<Elimination> choices;

  /// Comma-separated `real|clower|cupper`; empty string is the empty plan.
  static EliminationPlan parse(std::string_view text);
  [[nodiscard]] std::string str() const;
};

class HierarchyMember {
 public:
  int depth = 1;
  Coupling coupling{0.0};
  PiecewisePotential potential;
  std::optional<Superpotential> superpotential;  // towards member depth+1
  Spectrum spectrum;                             // retained levels
  std::vector<SpectralLevel> eliminated;         // removed so far, in order
  EliminationPlan plan_prefix;
  std::vector<Superpotential> ladder;            // W_1 .. W_{depth-1}

  /// n-th retained level, built by repeated intertwining from the square well.
  [[nodiscard]] PiecewiseEigenfunction eigenfunction(int n, double alpha = 1.0) const;
  /// Closed form of the same eigenfunction; depth <= 3 only.
  [[nodiscard]] PiecewiseEigenfunction closed_form_eigenfunction(int n, double alpha = 1.0) const;
  /// Potential rebuilt by the logarithmic-derivative route, for any depth.
  [[nodiscard]] PiecewisePotential chain_potential() const;
};

/// W_1 factorizing the square well at `level_index`:
/// W_R = rho coth[rho(1-x)], W_L = -sigma coth[sigma(1+x)].
Superpotential superpotential_w1(const Spectrum& spectrum, int level_index);

/// V^(-) = W^2 + W' + E_f.  Closed forms for the first two members,
/// evaluated through the identity beyond.
PiecewisePotential partner_potential(const Superpotential& w);

/// Superpotential of `member` at its retained level `level_index`: the
/// closed form for member 2, -psi'/psi of the member's eigenfunction beyond.
Superpotential superpotential_next(const HierarchyMember& member, int level_index);

/// Third-member potential after eliminating `first` and then `second`.
PiecewisePotential potential_V3(const SpectralLevel& first, const SpectralLevel& second, Coupling z);

/// (d/dx + W) psi at x, unnormalized.
cplx apply_intertwiner(const Superpotential& w, const PiecewiseEigenfunction& psi, double x);

/// Partner eigenfunction (d/dx + W) psi renormalized to psi(0) = alpha.
/// Throws AnnihilationError when psi is the level W was built from.
PiecewiseEigenfunction intertwine(const Superpotential& w, const PiecewiseEigenfunction& psi,
                                  double alpha = 1.0);

/// Closed-form second-member eigenfunction after eliminating `first`.
PiecewiseEigenfunction partner_eigenfunction(const SpectralLevel& first, const SpectralLevel& level,
                                             Coupling z, double alpha = 1.0);

/// Closed-form third-member eigenfunction after eliminating `first`, `second`.
PiecewiseEigenfunction third_member_eigenfunction(const SpectralLevel& first,
                                                  const SpectralLevel& second,
                                                  const SpectralLevel& level, Coupling z,
                                                  double alpha = 1.0);

/// Members 1..depth following `plan`.  Member 1 holds `levels + depth - 1`
/// levels so that the last member still has `levels`.
std::vector<HierarchyMember> build_hierarchy(Coupling z, const EliminationPlan& plan, int depth,
                                             int levels);

struct RelationReport {
  double coupling = 0.0;
  double v2_mirror_deviation = 0.0;   // max |V3_2(x) - conj V2_2(-x)|, relative to max(1,|V|)
  double v3_equal_deviation = 0.0;    // max |V3_3(x) - V2_3(x)|, same scaling
  double psi_mirror_variance = 0.0;   // worst ratio variance of psi3_{m,n} vs conj psi2_{m,n}(-x)
  double psi_mirror_imag = 0.0;       // worst |Im ratio| / |ratio|
  double psi3_pt_variance = 0.0;      // variance of psi2_{3,0}(x) / conj psi2_{3,0}(-x)
  std::vector<double> psi3_pt_defects;  // pt_defect of psi2_{3,n}, n = 0..3
  double v3_pt_deviation = 0.0;       // max |V2_3(x) - conj V2_3(-x)|, relative
  bool v3_pt_flag = false;
  bool v2_pt_flag = true;
};

/// Compares the hierarchies [clower, cupper] and [cupper, clower] for
/// Z between the first two critical couplings.
RelationReport hierarchy_relations_check(Coupling z);

/// Maximum of |a(x) - b(x)| / max(1, |a(x)|) over the grid.
double relative_deviation(const ComplexFunction& a, const ComplexFunction& b,
                          std::span<const double> grid);

}  // namespace ptwell
