#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gdnls/errors.hpp"
#include "gdnls/finite_difference.hpp"
#include "gdnls/grid.hpp"
#include "gdnls/quadrature.hpp"
#include "gdnls/spectral.hpp"

using namespace gdnls;
using std::numbers::pi;

TEST_CASE("grid rejects non powers of two and bad lengths") {
  CHECK_THROWS_AS(Grid(10.0, 100), DomainError);
  CHECK_THROWS_AS(Grid(10.0, 8), DomainError);
  CHECK_THROWS_AS(Grid(-1.0, 64), DomainError);
  const Grid g(2.0 * pi, 16);
  CHECK(g.x(0) == doctest::Approx(-pi));
  CHECK(g.wavenumber(1) == doctest::Approx(1.0));
  CHECK(g.wavenumber(15) == doctest::Approx(-1.0));
  CHECK(g.wavenumber(g.nyquist()) == doctest::Approx(8.0));
}

TEST_CASE("complex field arithmetic requires matching grids") {
  ComplexField a(Grid(1.0, 16)), b(Grid(2.0, 16));
  CHECK_THROWS_AS(a += b, DomainError);
  CHECK_THROWS_AS(ComplexField(Grid(1.0, 16), cvec(8)), DomainError);
}

TEST_CASE("spectral derivative and shift are exact on trigonometric polynomials") {
  const Grid g(2.0 * pi, 32);
  const Spectral sp(g);
  ComplexField u(g);
  for (std::size_t j = 0; j < 32; ++j) u[j] = std::sin(3.0 * g.x(j)) + cplx(0.0, 1.0) * std::cos(5.0 * g.x(j));
  const auto d1 = sp.derivative(u, 1);
  const auto d2 = sp.derivative(u, 2);
  const auto sh = sp.shift(u, 0.3);
  for (std::size_t j = 0; j < 32; ++j) {
    const double x = g.x(j);
    CHECK(std::abs(d1[j] - (3.0 * std::cos(3.0 * x) - cplx(0.0, 5.0) * std::sin(5.0 * x))) < 1e-12);
    CHECK(std::abs(d2[j] - (-9.0 * std::sin(3.0 * x) - cplx(0.0, 25.0) * std::cos(5.0 * x))) < 1e-11);
    CHECK(std::abs(sh[j] - (std::sin(3.0 * (x - 0.3)) + cplx(0.0, 1.0) * std::cos(5.0 * (x - 0.3)))) < 1e-13);
  }
  CHECK_THROWS_AS(sp.derivative(u, 3), DomainError);
}

TEST_CASE("finite differences with one Richardson level are fourth order") {
  auto f = [](double x) { return std::sin(x); };
  double prev = 0.0;
  for (double h : {0.2, 0.1}) {
    const double err = std::abs(fd::derivative(f, 0.4, 3, h) + std::cos(0.4));
    if (prev > 0.0) CHECK(std::log2(prev / err) > 3.5);
    prev = err;
  }
  auto g = [](double x, double y) { return std::exp(x) * std::sin(y); };
  CHECK(fd::partial(g, 0.1, 0.2, 2, 1, 1e-2) == doctest::Approx(std::exp(0.1) * std::cos(0.2)).epsilon(1e-8));
  CHECK_THROWS_AS(fd::central_stencil(4), DomainError);
}

TEST_CASE("half-line quadrature reproduces closed forms") {
  const QuadratureSpec spec;
  // ∫₀^∞ sech y dy = π/2 and ∫₀^∞ sech² y dy = 1 at z = 0
  auto sech = [](double y) { return 1.0 / std::cosh(y); };
  auto sech2 = [](double y) { return 1.0 / (std::cosh(y) * std::cosh(y)); };
  CHECK(integrate_half_line(sech, 1.0, 0.0, 1.0, spec).value == doctest::Approx(pi / 2).epsilon(1e-13));
  CHECK(integrate_half_line(sech2, 2.0, 0.0, 1.0, spec).value == doctest::Approx(1.0).epsilon(1e-13));
  // ∫₀^∞ dy / (cosh y − z) = acos(−z)/√(1−z²), sharply peaked as z → 1
  for (double z : {-0.9, 0.5, 0.999, 1.0 - 1e-6}) {
    auto f = [z](double y) { return 1.0 / cosh_minus(y, z); };
    const double want = std::acos(-z) / std::sqrt(1.0 - z * z);
    CHECK(integrate_half_line(f, 1.0, z, 1.0, spec).value == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("quadrature reports non-convergence") {
  QuadratureSpec spec;
  spec.max_subdivisions = 1;
  spec.rel_tol = 1e-15;
  spec.abs_tol = 1e-300;
  auto rough = [](double y) { return std::abs(std::sin(40.0 * y)) / std::cosh(y); };
  CHECK_THROWS_AS(integrate_half_line(rough, 1.0, 0.0, 1.0, spec), ConvergenceError);
  QuadratureSpec bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("cosh_minus avoids cancellation") {
  CHECK(cosh_minus(0.0, 1.0 - 1e-12) == doctest::Approx(1e-12).epsilon(1e-4));
  CHECK(cosh_minus(1e-8, 1.0) == doctest::Approx(5e-17).epsilon(1e-6));
}
