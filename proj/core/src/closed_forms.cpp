#include <algorithm>
#include <cmath>
#include <string>

#include "canonical.hpp"
#include "closed_forms.hpp"
#include "ptwell/errors.hpp"

namespace ptwell {

namespace {

constexpr double kDegenerateSinh = 1e-8;

cplx right_constant(Coupling z) { return {0.0, -z.value()}; }
cplx left_constant(Coupling z) { return {0.0, z.value()}; }

SideValue right_side(const canonical::Jet& j) { return {j.value, -j.du}; }
SideValue left_side(const canonical::Jet& j) { return {j.value, j.du}; }

bool degenerate(cplx k) { return std::abs(std::sinh(k)) < kDegenerateSinh; }

// A vanishing denominator means psi(0) = 0 (odd states at Z = 0).
bool vanishing(cplx d, cplx scale) { return std::abs(d) < kDegenerateSinh * std::max(1.0, std::abs(scale)); }

cplx coth_term(cplx k) { return k / std::tanh(k); }

void require_distinct(const std::vector<SpectralLevel>& removed, const SpectralLevel& level) {
  for (const auto& r : removed) {
    if (r.index == level.index) {
      throw AnnihilationError("level " + std::to_string(level.index) +
                              " was eliminated from this member");
    }
  }
}

}  // namespace

namespace detail {

bool preserves_pt(const std::vector<SpectralLevel>& removed) {
  for (const auto& a : removed) {
    if (a.is_real()) continue;
    const int partner = a.index ^ 1;
    const bool found = std::any_of(removed.begin(), removed.end(),
                                   [partner](const SpectralLevel& b) { return b.index == partner; });
    if (!found) return false;
  }
  return true;
}

Superpotential superpotential_w2(const SpectralLevel& first, const SpectralLevel& second, Coupling z) {
  if (first.index == second.index) throw IllegalPlanError("cannot factorize at an eliminated level");
  const cplx ra = first.rho, rb = second.rho;
  const cplx sa = first.sigma, sb = second.sigma;
  Superpotential w;
  w.right = [ra, rb](double x) { return -canonical::w2(ra, rb, 1.0 - x).value; };
  w.right_slope = [ra, rb](double x) { return canonical::w2(ra, rb, 1.0 - x).du; };
  w.left = [sa, sb](double x) { return canonical::w2(sa, sb, 1.0 + x).value; };
  w.left_slope = [sa, sb](double x) { return canonical::w2(sa, sb, 1.0 + x).du; };
  w.factorization_energy = second.energy;
  w.energy_right = right_constant(z) - rb * rb;
  w.energy_left = left_constant(z) - sb * sb;
  w.eliminated = second;
  w.prefix = {first};
  w.coupling = z;
  return w;
}

}  // namespace detail

Superpotential superpotential_w1(const Spectrum& spectrum, int level_index) {
  if (!spectrum.contains(level_index)) {
    throw IllegalPlanError("level " + std::to_string(level_index) + " is not in the spectrum");
  }
  const SpectralLevel& level = spectrum.by_index(level_index);
  const cplx rho = level.rho, sigma = level.sigma;
  Superpotential w;
  w.right = [rho](double x) { return -canonical::w1(rho, 1.0 - x).value; };
  w.right_slope = [rho](double x) { return canonical::w1(rho, 1.0 - x).du; };
  w.left = [sigma](double x) { return canonical::w1(sigma, 1.0 + x).value; };
  w.left_slope = [sigma](double x) { return canonical::w1(sigma, 1.0 + x).du; };
  w.factorization_energy = level.energy;
  w.energy_right = right_constant(spectrum.coupling) - rho * rho;
  w.energy_left = left_constant(spectrum.coupling) - sigma * sigma;
  w.eliminated = level;
  w.coupling = spectrum.coupling;
  return w;
}

PiecewisePotential partner_potential(const Superpotential& w) {
  const Coupling z = w.coupling;
  if (w.prefix.size() == 1) return potential_V3(w.prefix.front(), w.eliminated, z);

  PiecewisePotential v;
  std::vector<SpectralLevel> removed = w.prefix;
  removed.push_back(w.eliminated);
  v.endpoint_exponent = static_cast<int>(removed.size()) + 1;
  v.pt_symmetric = detail::preserves_pt(removed);
  if (w.prefix.empty()) {
    const cplx rho = w.eliminated.rho, sigma = w.eliminated.sigma;
    const cplx cr = right_constant(z), cl = left_constant(z);
    v.right = [cr, rho](double x) { return canonical::v2(cr, rho, 1.0 - x); };
    v.left = [cl, sigma](double x) { return canonical::v2(cl, sigma, 1.0 + x); };
    return v;
  }
  v.right = [w](double x) {
    const cplx wx = w.right(x);
    return wx * wx + w.right_slope(x) + w.energy_right;
  };
  v.left = [w](double x) {
    const cplx wx = w.left(x);
    return wx * wx + w.left_slope(x) + w.energy_left;
  };
  return v;
}

PiecewisePotential potential_V3(const SpectralLevel& first, const SpectralLevel& second, Coupling z) {
  if (first.index == second.index) throw IllegalPlanError("the same level cannot be eliminated twice");
  const cplx ra = first.rho, rb = second.rho;
  const cplx sa = first.sigma, sb = second.sigma;
  const cplx cr = right_constant(z), cl = left_constant(z);
  PiecewisePotential v;
  v.right = [cr, ra, rb](double x) { return canonical::v3(cr, ra, rb, 1.0 - x); };
  v.left = [cl, sa, sb](double x) { return canonical::v3(cl, sa, sb, 1.0 + x); };
  v.endpoint_exponent = 3;
  v.pt_symmetric = detail::preserves_pt({first, second});
  return v;
}

PiecewiseEigenfunction partner_eigenfunction(const SpectralLevel& first, const SpectralLevel& level,
                                             Coupling z, double alpha) {
  require_distinct({first}, level);
  const cplx ra = first.rho, rc = level.rho;
  const cplx sa = first.sigma, sc = level.sigma;

  cplx cr, cl;
  OriginData origin{alpha, 0.0};
  const bool flat = degenerate(ra) || degenerate(rc) ||
                    vanishing(coth_term(ra) - coth_term(rc), coth_term(rc));
  if (flat) {
    const auto norm = normalize_at_origin(right_side(canonical::psi2(ra, rc, 1.0)),
                                          left_side(canonical::psi2(sa, sc, 1.0)), alpha);
    cr = norm.right;
    cl = norm.left;
    origin = norm.origin;
  } else {
    // psi_R = C2 C1 sinh[rho_c u] (-rho_c coth[rho_c u] + rho_a coth[rho_a u]),
    // psi_L = C2 C1 sinh[sigma_c u] (sigma_c coth[sigma_c u] - sigma_a coth[sigma_a u]).
    const cplx c1r = 1.0 / std::sinh(rc);
    const cplx c1l = 1.0 / std::sinh(sc);
    const cplx c2 = alpha / (-coth_term(rc) + coth_term(ra));
    cr = -c2 * c1r;
    cl = c2 * c1l;
    origin.beta = (cr * -canonical::psi2(ra, rc, 1.0).du).imag();
  }

  PiecewiseEigenfunction psi;
  psi.level = level;
  psi.depth = 2;
  psi.origin = origin;
  psi.coefficients = {cr, cl};
  psi.energy_right = right_constant(z) - rc * rc;
  psi.energy_left = left_constant(z) - sc * sc;
  psi.right = [ra, rc, cr](double x) {
    const auto j = canonical::psi2(ra, rc, 1.0 - x);
    return SideValue{cr * j.value, -cr * j.du};
  };
  psi.left = [sa, sc, cl](double x) {
    const auto j = canonical::psi2(sa, sc, 1.0 + x);
    return SideValue{cl * j.value, cl * j.du};
  };
  return psi;
}

PiecewiseEigenfunction third_member_eigenfunction(const SpectralLevel& first,
                                                  const SpectralLevel& second,
                                                  const SpectralLevel& level, Coupling z,
                                                  double alpha) {
  if (first.index == second.index) throw IllegalPlanError("the same level cannot be eliminated twice");
  require_distinct({first, second}, level);
  const cplx ra = first.rho, rb = second.rho, rc = level.rho;
  const cplx sa = first.sigma, sb = second.sigma, sc = level.sigma;

  cplx cr, cl;
  OriginData origin{alpha, 0.0};
  bool flat = degenerate(ra) || degenerate(rb) || degenerate(rc);
  cplx pb, pc, d3;
  if (!flat) {
    pb = coth_term(rb) - coth_term(ra);
    pc = coth_term(rc) - coth_term(ra);
    flat = vanishing(pb, coth_term(rb)) || vanishing(pc, coth_term(rc));
  }
  if (!flat) {
    d3 = (rb * rb - ra * ra) / pb - (rc * rc - ra * ra) / pc;
    flat = vanishing(d3, (rc * rc - ra * ra) / pc);
  }
  if (flat) {
    const auto norm = normalize_at_origin(right_side(canonical::psi3(ra, rb, rc, 1.0)),
                                          left_side(canonical::psi3(sa, sb, sc, 1.0)), alpha);
    cr = norm.right;
    cl = norm.left;
    origin = norm.origin;
  } else {
    const cplx c1r = 1.0 / std::sinh(rc);
    const cplx c1l = 1.0 / std::sinh(sc);
    const cplx c2 = 1.0 / (-pc);
    const cplx c3 = alpha / d3;
    cr = c3 * c2 * c1r;
    cl = c3 * c2 * c1l;
    origin.beta = (cr * -canonical::psi3(ra, rb, rc, 1.0).du).imag();
  }

  PiecewiseEigenfunction psi;
  psi.level = level;
  psi.depth = 3;
  psi.origin = origin;
  psi.coefficients = {cr, cl};
  psi.energy_right = right_constant(z) - rc * rc;
  psi.energy_left = left_constant(z) - sc * sc;
  psi.right = [ra, rb, rc, cr](double x) {
    const auto j = canonical::psi3(ra, rb, rc, 1.0 - x);
    return SideValue{cr * j.value, -cr * j.du};
  };
  psi.left = [sa, sb, sc, cl](double x) {
    const auto j = canonical::psi3(sa, sb, sc, 1.0 + x);
    return SideValue{cl * j.value, cl * j.du};
  };
  return psi;
}

}  // namespace ptwell
