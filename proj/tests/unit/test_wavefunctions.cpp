#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/wavefunctions.hpp"

using namespace ptwell;

namespace {

double max_abs(const ComplexFunction& f, const std::vector<double>& grid) {
  double m = 0.0;
  for (double x : grid) m = std::max(m, std::abs(f(x)));
  return m;
}

}  // namespace

TEST_SUITE("wavefunctions") {

TEST_CASE("square-well eigenfunction endpoints and origin") {
  const auto s = classify_spectrum(Coupling(2), 4);
  for (const auto& l : s.levels) {
    CHECK(std::abs(eval_sw_eigenfunction(l, 1.0, 1.0)) < 1e-15);
    CHECK(std::abs(eval_sw_eigenfunction(l, 1.0, -1.0)) < 1e-15);
    CHECK(std::abs(eval_sw_eigenfunction(l, 1.0, 0.0) - 1.0) < 1e-14);
    const auto psi = sw_eigenfunction(l, Coupling(2));
    CHECK(std::abs(psi(0.37) - eval_sw_eigenfunction(l, 1.0, 0.37)) < 1e-14);
    CHECK(std::abs(psi(-0.61) - eval_sw_eigenfunction(l, 1.0, -0.61)) < 1e-14);
  }
}

TEST_CASE("Z = 0 ground state is cos(pi x / 2)") {
  const auto s = classify_spectrum(Coupling(0), 1);
  for (double x = -0.95; x < 1.0; x += 0.1) {
    CHECK(std::abs(eval_sw_eigenfunction(s.levels[0], 1.0, x) - std::cos(kPi * x / 2)) < 1e-14);
  }
}

TEST_CASE("Z = 0 odd levels use the derivative normalization") {
  const auto s = classify_spectrum(Coupling(0), 4);
  for (int n : {1, 3}) {
    const auto psi = sw_eigenfunction(s.levels[n], Coupling(0));
    CHECK(psi.origin.alpha == 0.0);
    CHECK(psi.origin.beta == doctest::Approx(1.0));
    CHECK(std::abs(psi.slope(0.0) - kI) < 1e-12);
    // proportional to sin((nu+1) pi x)
    const int nu = (n - 1) / 2;
    const auto ratio = ratio_stats(psi.function(),
                                   [nu](double x) { return cplx{std::sin((nu + 1) * kPi * x), 0.0}; },
                                   chebyshev_grid());
    CHECK(ratio.variance < 1e-20);
  }
}

TEST_CASE("pt_transform and pt_defect") {
  const auto even = [](double x) { return cplx{x * x + 1.0, 0.0}; };
  CHECK(pt_transform(even)(0.3) == even(0.3));
  const auto grid = chebyshev_grid();
  CHECK(pt_defect(even, grid) == 0.0);
  CHECK_THROWS_AS(pt_defect(even, std::vector<double>{}), DomainError);

  const auto s = classify_spectrum(Coupling(2), 6);
  for (const auto& l : s.levels) {
    CHECK(pt_defect(sw_eigenfunction(l, Coupling(2)).function(), grid) < 1e-12);
  }
}

TEST_CASE("broken pair at Z = 8") {
  const Coupling z(8);
  const auto s = classify_spectrum(z, 6);
  const auto grid = chebyshev_grid();
  const auto psi0 = sw_eigenfunction(s.levels[0], z).function();
  const auto psi1 = sw_eigenfunction(s.levels[1], z).function();
  CHECK(pt_defect(psi0, grid) > 0.01);
  CHECK(pt_defect(psi1, grid) > 0.01);
  // PT(psi0) = (alpha0/alpha1) psi1 with alpha0 = alpha1 = 1.
  for (double x : grid) CHECK(std::abs(pt_transform(psi0)(x) - psi1(x)) < 1e-12);
  const auto r = ratio_stats(pt_transform(psi0), psi1, grid);
  CHECK(r.variance < 1e-10);
  CHECK(r.max_imag_ratio < 1e-10);
  for (int n = 2; n < 6; ++n) CHECK(pt_defect(sw_eigenfunction(s.levels[n], z).function(), grid) < 1e-12);
}

TEST_CASE("schrodinger residual") {
  const Coupling z(2);
  const auto s = classify_spectrum(z, 5);
  const auto v = square_well_potential(z);
  const auto grid = chebyshev_grid();
  for (const auto& l : s.levels) {
    const auto psi = sw_eigenfunction(l, z);
    const double scale = max_abs(psi.function(), grid);
    for (double x : {-0.8, -0.3, 0.2, 0.7}) {
      CHECK(std::abs(schrodinger_residual(psi.function(), v, l.energy, x, 1e-4)) < 1e-5 * scale);
    }
  }
  CHECK(schrodinger_residual([](double) { return cplx{}; }, v, 1.0, 0.5, 1e-4) == cplx{});
  CHECK_THROWS_AS(schrodinger_residual([](double) { return cplx{}; }, v, 1.0, 0.00005, 1e-4), DomainError);
  CHECK_THROWS_AS(schrodinger_residual([](double) { return cplx{}; }, v, 1.0, 0.99995, 1e-4), DomainError);
}

TEST_CASE("chebyshev grid") {
  const auto g = chebyshev_grid();
  CHECK(g.size() == 100);  // the middle node is the origin and is dropped
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(g.front() > -0.999 - 1e-15);
  CHECK(g.back() < 0.999 + 1e-15);
  CHECK(std::none_of(g.begin(), g.end(), [](double x) { return x == 0.0; }));
}

TEST_CASE("ratio statistics") {
  const auto grid = chebyshev_grid();
  const auto f = [](double x) { return cplx{std::cos(x), std::sin(x)}; };
  const auto r = ratio_stats([&](double x) { return cplx{0.0, 2.0} * f(x); }, f, grid);
  CHECK(std::abs(r.mean - cplx{0.0, 2.0}) < 1e-14);
  CHECK(r.variance < 1e-28);
  CHECK(r.points == 100);
  const auto bad = ratio_stats([](double x) { return cplx{x, 0.0}; }, [](double) { return cplx{1.0, 0.0}; }, grid);
  CHECK(bad.variance > 0.1);
}

TEST_CASE("gegenbauer polynomials") {
  CHECK(gegenbauer(0, 3, 0.4) == 1.0);
  CHECK(gegenbauer(1, 2, 0.3) == doctest::Approx(1.2));
  CHECK(gegenbauer(2, 1, 0.3) == doctest::Approx(-0.64).epsilon(1e-15));
  for (int m = 1; m <= 4; ++m) {
    for (int n = 0; n <= 8; ++n) {
      for (double x : {-0.9, -0.2, 0.35, 0.8}) {
        CHECK(gegenbauer(n, m, x) == doctest::Approx(oracle::gegenbauer_sum(n, m, x)).epsilon(1e-12));
      }
    }
  }
  // C_n^(1)(cos phi) = sin((n+1) phi) / sin phi
  for (double phi : {0.3, 1.1, 2.5}) {
    CHECK(gegenbauer(1, 1, std::cos(phi)) == doctest::Approx(std::sin(2 * phi) / std::sin(phi)));
    CHECK(gegenbauer(5, 1, std::cos(phi)) == doctest::Approx(std::sin(6 * phi) / std::sin(phi)));
  }
  CHECK_THROWS_AS(gegenbauer(-1, 1, 0.1), DomainError);
  CHECK_THROWS_AS(gegenbauer(1, 0, 0.1), DomainError);
}

TEST_CASE("limit forms") {
  for (double x : {-0.7, 0.1, 0.6}) {
    CHECK(limit_form(1, 0, x) == doctest::Approx(std::cos(kPi * x / 2)));
  }
  const auto grid = chebyshev_grid(21, 0.95);
  for (int nu = 0; nu < 3; ++nu) {
    const auto r = ratio_stats([nu](double x) { return cplx{limit_form(1, 2 * nu + 1, x), 0.0}; },
                               [nu](double x) { return cplx{std::sin((nu + 1) * kPi * x), 0.0}; }, grid);
    CHECK(r.variance < 1e-24);
  }
  CHECK_THROWS_AS(limit_form(4, 0, 0.1), DomainError);
  CHECK_THROWS_AS(limit_form(1, 0, 1.0), DomainError);
}

TEST_CASE("property: Gegenbauer ladder") {
  // [d/dx + (m-1)(pi/2) tan(pi x/2)] cos^{m-1} C_{n+1}^{(m-1)}(sin) = pi (m-1) cos^m C_n^{(m)}(sin)
  const auto grid = chebyshev_grid(21, 0.95);
  const double h = 1e-5;
  for (int m = 2; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      for (double x : grid) {
        const auto f = [m, n](double y) { return limit_form(m - 1, n + 1, y); };
        const double lhs = (f(x + h) - f(x - h)) / (2 * h) + (m - 1) * kPi / 2 * std::tan(kPi * x / 2) * f(x);
        CHECK(std::abs(lhs - kPi * (m - 1) * limit_form(m, n, x)) < 1e-6);
      }
    }
  }
}

TEST_CASE("property: boundary and continuity of square-well eigenfunctions") {
  for (double zv : {0.0, 1.0, 2.0, 8.0}) {
    const Coupling z(zv);
    const auto s = classify_spectrum(z, 6);
    const auto grid = chebyshev_grid();
    for (const auto& l : s.levels) {
      const auto psi = sw_eigenfunction(l, z);
      const double scale = max_abs(psi.function(), grid);
      CHECK(std::abs(psi(1.0 - 1e-6)) < 1e-5 * scale);
      CHECK(std::abs(psi(-1.0 + 1e-6)) < 1e-5 * scale);
      CHECK(std::abs(psi.right(0.0).value - psi.left(-0.0).value) < 1e-12);
      CHECK(std::abs(psi.right(0.0).slope - psi.left(-0.0).slope) < 1e-10 * std::max(1.0, std::abs(psi.right(0.0).slope)));
    }
  }
}

TEST_CASE("property: Schrodinger residual at random interior points") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> xs(0.01, 0.99);
  for (double zv : {0.5, 3.0, 8.0}) {
    const Coupling z(zv);
    const auto s = classify_spectrum(z, 5);
    const auto v = square_well_potential(z);
    const auto grid = chebyshev_grid();
    for (const auto& l : s.levels) {
      const auto psi = sw_eigenfunction(l, z);
      const double scale = max_abs(psi.function(), grid);
      for (int i = 0; i < 50; ++i) {
        const double x = (i % 2 ? 1.0 : -1.0) * xs(rng);
        CHECK(std::abs(schrodinger_residual(psi.function(), v, l.energy, x, 1e-4)) < 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("normalize_at_origin") {
  const auto n = normalize_at_origin({2.0, cplx{0, 3.0}}, {4.0, cplx{0, 6.0}}, 1.0);
  CHECK(n.right == cplx{0.5});
  CHECK(n.left == cplx{0.25});
  CHECK(n.origin.alpha == 1.0);
  CHECK(n.origin.beta == doctest::Approx(1.5));
  const auto d = normalize_at_origin({0.0, 2.0}, {0.0, 4.0}, 1.0);
  CHECK(d.right == cplx{0.0, 0.5});
  CHECK(d.origin.beta == 1.0);
  CHECK_THROWS_AS(normalize_at_origin({0.0, 0.0}, {0.0, 0.0}, 1.0), DomainError);
}

}  // TEST_SUITE
