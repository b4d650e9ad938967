#include "ptwell/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "closed_forms.hpp"
#include "ptwell/errors.hpp"

namespace ptwell {

namespace {

constexpr int kRelationGridPoints = 101;
constexpr int kRelationLevels = 4;

std::vector<SpectralLevel> without_last(std::vector<SpectralLevel> v) {
  v.pop_back();
  return v;
}

// -psi'/psi of an eigenfunction of `v`; W' follows from the Riccati equation.
Superpotential log_derivative(const PiecewiseEigenfunction& phi, const PiecewisePotential& v,
                              std::vector<SpectralLevel> prefix, Coupling z) {
  auto ratio = [](const SideFunction& f) {
    return [f](double x) {
      const SideValue s = f(x);
      if (s.value == cplx{0.0, 0.0}) throw NodeError("factorization function vanishes at x = " + std::to_string(x));
      return -s.slope / s.value;
    };
  };
  Superpotential w;
  w.right = ratio(phi.right);
  w.left = ratio(phi.left);
  w.right_slope = [wr = w.right, vr = v.right, e = phi.energy_right](double x) {
    const cplx wx = wr(x);
    return wx * wx + e - vr(x);
  };
  w.left_slope = [wl = w.left, vl = v.left, e = phi.energy_left](double x) {
    const cplx wx = wl(x);
    return wx * wx + e - vl(x);
  };
  w.factorization_energy = phi.level.energy;
  w.energy_right = phi.energy_right;
  w.energy_left = phi.energy_left;
  w.eliminated = phi.level;
  w.prefix = std::move(prefix);
  w.coupling = z;
  return w;
}

PiecewiseEigenfunction chain_eigenfunction(Coupling z, const std::vector<SpectralLevel>& removed,
                                           const SpectralLevel& target, double alpha);

Superpotential chain_superpotential(Coupling z, const std::vector<SpectralLevel>& prefix,
                                    const SpectralLevel& level);

PiecewisePotential chain_potential_of(Coupling z, const std::vector<SpectralLevel>& removed) {
  PiecewisePotential v = square_well_potential(z);
  std::vector<SpectralLevel> prefix;
  for (const auto& level : removed) {
    const Superpotential w = chain_superpotential(z, prefix, level);
    PiecewisePotential next;
    next.right = [w, vr = v.right](double x) {
      const cplx wx = w.right(x);
      return 2.0 * wx * wx + 2.0 * w.energy_right - vr(x);
    };
    next.left = [w, vl = v.left](double x) {
      const cplx wx = w.left(x);
      return 2.0 * wx * wx + 2.0 * w.energy_left - vl(x);
    };
    prefix.push_back(level);
    next.endpoint_exponent = static_cast<int>(prefix.size()) + 1;
    next.pt_symmetric = detail::preserves_pt(prefix);
    v = std::move(next);
  }
  return v;
}

Superpotential chain_superpotential(Coupling z, const std::vector<SpectralLevel>& prefix,
                                    const SpectralLevel& level) {
  const PiecewiseEigenfunction phi = chain_eigenfunction(z, prefix, level, 1.0);
  return log_derivative(phi, chain_potential_of(z, prefix), prefix, z);
}

PiecewiseEigenfunction chain_eigenfunction(Coupling z, const std::vector<SpectralLevel>& removed,
                                           const SpectralLevel& target, double alpha) {
  if (removed.empty()) return sw_eigenfunction(target, z, alpha);
  const std::vector<SpectralLevel> prefix = without_last(removed);
  const PiecewiseEigenfunction parent = chain_eigenfunction(z, prefix, target, 1.0);
  return intertwine(chain_superpotential(z, prefix, removed.back()), parent, alpha);
}

Spectrum spectrum_of(Coupling z, std::vector<SpectralLevel> levels) {
  Spectrum s;
  s.coupling = z;
  s.levels = std::move(levels);
  for (const auto& l : s.levels) {
    if (l.branch == Branch::ComplexPairLower && s.contains(l.index + 1)) {
      s.broken_pairs.emplace_back(l.index, l.index + 1);
    }
  }
  return s;
}

const SpectralLevel& pick(const std::vector<SpectralLevel>& retained, Elimination choice, int step) {
  const Branch wanted = choice == Elimination::LowestReal     ? Branch::Real
                        : choice == Elimination::ComplexLower ? Branch::ComplexPairLower
                                                              : Branch::ComplexPairUpper;
  const auto it = std::find_if(retained.begin(), retained.end(),
                               [wanted](const SpectralLevel& l) { return l.branch == wanted; });
  if (it == retained.end()) {
    throw IllegalPlanError("step " + std::to_string(step) + ": no retained level of kind " +
                           to_string(wanted));
  }
  return *it;
}

}  // namespace

EliminationPlan EliminationPlan::parse(std::string_view text) {
  EliminationPlan plan;
  if (text.empty()) return plan;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (token == "real") {
      plan.choices.push_back(Elimination::LowestReal);
    } else if (token == "clower") {
      plan.choices.push_back(Elimination::ComplexLower);
    } else if (token == "cupper") {
      plan.choices.push_back(Elimination::ComplexUpper);
    } else {
      throw IllegalPlanError("unknown plan step '" + std::string(token) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return plan;
}

std::string EliminationPlan::str() const {
  std::string out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out += ',';
    switch (choices[i]) {
      case Elimination::LowestReal: out += "real"; break;
      case Elimination::ComplexLower: out += "clower"; break;
      case Elimination::ComplexUpper: out += "cupper"; break;
    }
  }
  return out;
}

PiecewiseEigenfunction HierarchyMember::eigenfunction(int n, double alpha) const {
  if (n < 0 || n >= static_cast<int>(spectrum.levels.size())) {
    throw DomainError("member " + std::to_string(depth) + " has no level n = " + std::to_string(n));
  }
  const SpectralLevel& target = spectrum.levels[static_cast<std::size_t>(n)];
  if (ladder.empty()) return sw_eigenfunction(target, coupling, alpha);
  PiecewiseEigenfunction psi = sw_eigenfunction(target, coupling, 1.0);
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    psi = intertwine(ladder[k], psi, k + 1 == ladder.size() ? alpha : 1.0);
  }
  return psi;
}

PiecewiseEigenfunction HierarchyMember::closed_form_eigenfunction(int n, double alpha) const {
  if (n < 0 || n >= static_cast<int>(spectrum.levels.size())) {
    throw DomainError("member " + std::to_string(depth) + " has no level n = " + std::to_string(n));
  }
  const SpectralLevel& target = spectrum.levels[static_cast<std::size_t>(n)];
  switch (depth) {
    case 1: return sw_eigenfunction(target, coupling, alpha);
    case 2: return partner_eigenfunction(eliminated[0], target, coupling, alpha);
    case 3: return third_member_eigenfunction(eliminated[0], eliminated[1], target, coupling, alpha);
    default: throw DomainError("closed forms are available for the first three members only");
  }
}

PiecewisePotential HierarchyMember::chain_potential() const {
  return chain_potential_of(coupling, eliminated);
}

Superpotential superpotential_next(const HierarchyMember& member, int level_index) {
  if (!member.spectrum.contains(level_index)) {
    throw IllegalPlanError("level " + std::to_string(level_index) + " is not retained by member " +
                           std::to_string(member.depth));
  }
  const SpectralLevel& level = member.spectrum.by_index(level_index);
  if (member.depth == 1) return superpotential_w1(member.spectrum, level_index);
  if (member.depth == 2) return detail::superpotential_w2(member.eliminated[0], level, member.coupling);
  const auto& levels = member.spectrum.levels;
  const auto it = std::find_if(levels.begin(), levels.end(),
                               [level_index](const SpectralLevel& l) { return l.index == level_index; });
  const PiecewiseEigenfunction phi = member.eigenfunction(static_cast<int>(it - levels.begin()));
  return log_derivative(phi, member.potential, member.eliminated, member.coupling);
}

cplx apply_intertwiner(const Superpotential& w, const PiecewiseEigenfunction& psi, double x) {
  return psi.slope(x) + w(x) * psi(x);
}

PiecewiseEigenfunction intertwine(const Superpotential& w, const PiecewiseEigenfunction& psi,
                                  double alpha) {
  if (psi.level.index == w.eliminated.index) {
    throw AnnihilationError("the intertwiner annihilates level " + std::to_string(psi.level.index));
  }
  if (psi.depth != w.member_depth()) {
    throw DomainError("superpotential factorizes member " + std::to_string(w.member_depth()) +
                      ", eigenfunction belongs to member " + std::to_string(psi.depth));
  }
  // g = psi' + W psi,  g' = (E_W - E_psi) psi + W g.
  auto raw = [](SideFunction f, ComplexFunction wf, cplx de) {
    return [f = std::move(f), wf = std::move(wf), de](double x) {
      const SideValue s = f(x);
      const cplx wx = wf(x);
      const cplx g = s.slope + wx * s.value;
      return SideValue{g, de * s.value + wx * g};
    };
  };
  const SideFunction right = raw(psi.right, w.right, w.energy_right - psi.energy_right);
  const SideFunction left = raw(psi.left, w.left, w.energy_left - psi.energy_left);
  const OriginNormalization norm = normalize_at_origin(right(0.0), left(-0.0), alpha);

  PiecewiseEigenfunction out;
  out.level = psi.level;
  out.depth = psi.depth + 1;
  out.origin = norm.origin;
  out.coefficients = psi.coefficients;
  out.coefficients.push_back(norm.right);
  out.coefficients.push_back(norm.left);
  out.energy_right = psi.energy_right;
  out.energy_left = psi.energy_left;
  out.right = [right, c = norm.right](double x) {
    const SideValue s = right(x);
    return SideValue{c * s.value, c * s.slope};
  };
  out.left = [left, c = norm.left](double x) {
    const SideValue s = left(x);
    return SideValue{c * s.value, c * s.slope};
  };
  return out;
}

std::vector<HierarchyMember> build_hierarchy(Coupling z, const EliminationPlan& plan, int depth,
                                             int levels) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  if (levels < 1) throw DomainError("levels must be at least 1");
  if (static_cast<int>(plan.choices.size()) < depth - 1) {
    throw IllegalPlanError("plan has " + std::to_string(plan.choices.size()) + " steps, depth " +
                           std::to_string(depth) + " needs " + std::to_string(depth - 1));
  }
  const Spectrum base = classify_spectrum(z, levels + depth - 1);
  if (static_cast<int>(base.levels.size()) < levels + depth - 1) {
    throw ConvergenceError("spectrum solver returned too few levels");
  }

  std::vector<HierarchyMember> members;
  std::vector<SpectralLevel> retained = base.levels;
  std::vector<SpectralLevel> eliminated;
  std::vector<Superpotential> ladder;
  for (int m = 1; m <= depth; ++m) {
    HierarchyMember member;
    member.depth = m;
    member.coupling = z;
    member.eliminated = eliminated;
    member.ladder = ladder;
    member.plan_prefix.choices.assign(plan.choices.begin(), plan.choices.begin() + (m - 1));
    member.spectrum = spectrum_of(z, retained);
    if (m == 1) {
      member.potential = square_well_potential(z);
    } else if (m == 2) {
      member.potential = partner_potential(ladder[0]);
    } else if (m == 3) {
      member.potential = potential_V3(eliminated[0], eliminated[1], z);
    } else {
      member.potential = partner_potential(ladder.back());
    }
    if (m < depth) {
      const SpectralLevel level = pick(retained, plan.choices[static_cast<std::size_t>(m - 1)], m);
      member.superpotential = superpotential_next(member, level.index);
      ladder.push_back(*member.superpotential);
      eliminated.push_back(level);
      std::erase_if(retained, [&level](const SpectralLevel& l) { return l.index == level.index; });
    }
    members.push_back(std::move(member));
  }
  return members;
}

double relative_deviation(const ComplexFunction& a, const ComplexFunction& b,
                          std::span<const double> grid) {
  double worst = 0.0;
  for (const double x : grid) {
    const cplx va = a(x);
    worst = std::max(worst, std::abs(va - b(x)) / std::max(1.0, std::abs(va)));
  }
  return worst;
}

RelationReport hierarchy_relations_check(Coupling z) {
  const Spectrum base = classify_spectrum(z, kRelationLevels);
  const bool window = base.broken_pairs.size() == 1 && base.broken_pairs.front() == std::pair{0, 1} &&
                      base.contains(2) && base.by_index(2).is_real();
  if (!window) {
    throw DomainError("relations need exactly the lowest pair broken; Z = " + std::to_string(z.value()));
  }
  const auto lower_first = build_hierarchy(z, EliminationPlan::parse("clower,cupper"), 3, kRelationLevels + 1);
  const auto upper_first = build_hierarchy(z, EliminationPlan::parse("cupper,clower"), 3, kRelationLevels + 1);
  const std::vector<double> grid = chebyshev_grid(kRelationGridPoints);

  RelationReport r;
  r.coupling = z.value();
  r.v2_mirror_deviation = relative_deviation(
      [&](double x) { return upper_first[1].potential(x); },
      pt_transform([&](double x) { return lower_first[1].potential(x); }), grid);
  r.v3_equal_deviation = relative_deviation([&](double x) { return upper_first[2].potential(x); },
                                            [&](double x) { return lower_first[2].potential(x); }, grid);
  for (int m = 2; m <= 3; ++m) {
    for (int n = 0; n < kRelationLevels; ++n) {
      const auto a = upper_first[static_cast<std::size_t>(m - 1)].closed_form_eigenfunction(n).function();
      const auto b = lower_first[static_cast<std::size_t>(m - 1)].closed_form_eigenfunction(n).function();
      const RatioStats s = ratio_stats(a, pt_transform(b), grid);
      r.psi_mirror_variance = std::max(r.psi_mirror_variance, s.variance);
      r.psi_mirror_imag = std::max(r.psi_mirror_imag, s.max_imag_ratio);
    }
  }
  const auto psi30 = lower_first[2].closed_form_eigenfunction(0).function();
  r.psi3_pt_variance = ratio_stats(psi30, pt_transform(psi30), grid).variance;
  for (int n = 0; n < kRelationLevels; ++n) {
    r.psi3_pt_defects.push_back(pt_defect(lower_first[2].closed_form_eigenfunction(n).function(), grid));
  }
  const ComplexFunction v23 = [&](double x) { return lower_first[2].potential(x); };
  r.v3_pt_deviation = relative_deviation(v23, pt_transform(v23), grid);
  r.v3_pt_flag = lower_first[2].potential.pt_symmetric;
  r.v2_pt_flag = lower_first[1].potential.pt_symmetric;
  return r;
}

}  // namespace ptwell
