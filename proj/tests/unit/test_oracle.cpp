#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptwell/errors.hpp"
#include "ptwell/hierarchy.hpp"
#include "ptwell/shooting.hpp"

using namespace ptwell;

namespace {

cplx polished(const PiecewisePotential& v, cplx seed, const ShootingConfig& cfg = {}) {
  const auto e = ShootingSolver(v, cfg).polish(seed);
  REQUIRE(e.has_value());
  return *e;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("config validation") {
  ShootingConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.step = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.step = 0.05;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.wall_offset = 1e-2;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.wall_offset = -1.0;
  CHECK_THROWS_AS(ShootingSolver(square_well_potential(Coupling(0)), cfg), DomainError);
}

TEST_CASE("Z = 0 ground state is even with a flat origin") {
  const auto v = square_well_potential(Coupling(0));
  const double e0 = kPi * kPi / 4;
  const auto r = integrate_side(v, e0, Side::Right);
  const auto l = integrate_side(v, e0, Side::Left);
  CHECK(std::abs(r.slope) < 1e-8 * std::abs(r.value));
  CHECK(std::abs(l.slope) < 1e-8 * std::abs(l.value));
  // psi_R = sin(k u)/k with u = 1 at the origin
  const double k = kPi / 2;
  CHECK(std::abs(r.value * std::exp(r.log_scale) - std::sin(k) / k) < 1e-8);
}

TEST_CASE("mismatch examples") {
  const auto v0 = square_well_potential(Coupling(0));
  const auto at_root = mismatch(v0, kPi * kPi / 4);
  CHECK(at_root.relative() < 1e-8);
  CHECK(mismatch(v0, 2.0).relative() > 1e-2);
  const auto v8 = square_well_potential(Coupling(8));
  const cplx pair{6.791734691576, -5.770054142210};
  CHECK(mismatch(v8, pair).relative() < 1e-7);
  CHECK(mismatch(v8, std::conj(pair)).relative() < 1e-7);
}

TEST_CASE("find_spectrum at Z = 0") {
  const auto found = find_spectrum_numeric(square_well_potential(Coupling(0)), 6, SearchBox{});
  REQUIRE(found.eigenvalues.size() == 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(std::abs(found.eigenvalues[n] - (n + 1) * (n + 1) * kPi * kPi / 4) < 1e-8);
  }
}

TEST_CASE("find_spectrum in the broken phase finds the pair from the real scan alone") {
  const auto s = classify_spectrum(Coupling(8), 6);
  SearchBox box;
  box.re_max = 120.0;
  const std::vector<cplx> seeds{{6.0, -4.0}, {6.0, 4.0}};
  const auto found = find_spectrum_numeric(square_well_potential(Coupling(8)), 6, box, {}, seeds);
  REQUIRE(found.eigenvalues.size() >= 6);
  for (const auto& l : s.levels) {
    const auto best = std::min_element(found.eigenvalues.begin(), found.eigenvalues.end(),
                                       [&](cplx a, cplx b) { return std::abs(a - l.energy) < std::abs(b - l.energy); });
    CHECK(std::abs(*best - l.energy) < 1e-6);
  }
}

TEST_CASE("closed forms agree with the oracle") {
  for (double zv : {0.0, 1.0, 2.0, 4.0}) {
    CAPTURE(zv);
    const auto s = classify_spectrum(Coupling(zv), 8);
    const ShootingSolver solver(square_well_potential(Coupling(zv)));
    for (const auto& l : s.levels) {
      const auto e = solver.polish(l.energy * 1.01);
      REQUIRE(e.has_value());
      CHECK(std::abs(*e - l.energy) < 1e-6);
    }
  }
}

TEST_CASE("partner V2 at Z = 2 reproduces E1..E6") {
  const Coupling z(2);
  const auto s = classify_spectrum(z, 7);
  const auto v2 = partner_potential(superpotential_w1(s, 0));
  CHECK(v2.endpoint_exponent == 2);
  SearchBox box;
  box.re_max = 160.0;
  const auto found = find_spectrum_numeric(v2, 6, box);
  REQUIRE(found.eigenvalues.size() == 6);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(found.eigenvalues[n] - s.levels[n + 1].energy) < 1e-6);
}

TEST_CASE("RK4 convergence order") {
  const auto v = square_well_potential(Coupling(2));
  const cplx seed = classify_spectrum(Coupling(2), 4).levels[3].energy;
  auto at = [&](double step) {
    ShootingConfig cfg;
    cfg.step = step;
    cfg.scan_step = step;
    return polished(v, seed, cfg);
  };
  const cplx e1 = at(8e-3), e2 = at(4e-3), e3 = at(2e-3);
  const double p = std::log2(std::abs(e1 - e2) / std::abs(e2 - e3));
  CHECK(p >= 3.7);
  CHECK(p <= 4.3);
}

TEST_CASE("Richardson estimate at the default step") {
  const auto v = square_well_potential(Coupling(1));
  const cplx seed = classify_spectrum(Coupling(1), 5).levels[4].energy;
  ShootingConfig half;
  half.step = 1e-4;
  const cplx a = polished(v, seed), b = polished(v, seed, half);
  CHECK(std::abs(a - b) * 16.0 / 15.0 < 1e-4);
  CHECK(std::abs(b - seed) < 1e-8);
}

TEST_CASE("wall offset robustness") {
  const auto s = classify_spectrum(Coupling(2), 8);
  const auto v = square_well_potential(Coupling(2));
  for (double delta : {1e-7, 1e-6, 1e-5}) {
    ShootingConfig cfg;
    cfg.wall_offset = delta;
    for (int n : {0, 3, 7}) CHECK(std::abs(polished(v, s.levels[n].energy, cfg) - s.levels[n].energy) < 1e-7);
  }
  // second member, p = 2 start
  const auto v2 = partner_potential(superpotential_w1(s, 0));
  for (double delta : {1e-7, 1e-5}) {
    ShootingConfig cfg;
    cfg.wall_offset = delta;
    CHECK(std::abs(polished(v2, s.levels[1].energy, cfg) - s.levels[1].energy) < 1e-7);
  }
}

TEST_CASE("third member at Z = 8 under both complex-first plans") {
  for (const char* plan : {"clower,cupper", "cupper,clower"}) {
    CAPTURE(plan);
    const auto h = build_hierarchy(Coupling(8), EliminationPlan::parse(plan), 3, 5);
    SearchBox box;
    box.re_max = 300.0;
    std::vector<cplx> seeds;
    for (const auto& l : h[2].spectrum.levels) seeds.push_back(l.energy + cplx{0.0, 1.0});
    const auto found = find_spectrum_numeric(h[2].potential, 5, box, {}, seeds);
    REQUIRE(found.eigenvalues.size() >= 5);
    for (int n = 0; n < 5; ++n) {
      CHECK(std::abs(found.eigenvalues[n].imag()) < 1e-7);
      CHECK(std::abs(found.eigenvalues[n] - h[2].spectrum.levels[n].energy) < 1e-6);
    }
  }
}

}  // TEST_SUITE
