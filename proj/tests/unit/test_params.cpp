#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "gdnls/errors.hpp"
#include "gdnls/finite_difference.hpp"
#include "gdnls/params.hpp"
#include "reference_values.hpp"
#include "test_helpers.hpp"

using namespace gdnls;
using gdnls::testing::rel_err;
using std::numbers::pi;

TEST_CASE("sigma and omega validation") {
  CHECK_THROWS_AS(Sigma(0.9), DomainError);
  CHECK_THROWS_AS(Sigma(std::nan("")), DomainError);
  CHECK_NOTHROW(Sigma(1.0));
  CHECK_THROWS_AS(Sigma(1.0).require_open(1.0, 2.0, "x"), PreconditionError);

  CHECK(Omega{1.0, 1.99}.admissible());
  CHECK_FALSE(Omega{1.0, 2.0}.admissible());
  CHECK_FALSE(Omega{-1.0, 0.0}.admissible());
  CHECK_THROWS_AS(Omega({1.0, -2.5}).require_admissible(), DomainError);
  CHECK(Omega{4.0, 2.0}.z() == doctest::Approx(0.5));
  CHECK(kappa({1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(kappa({2.0, 1.0}) == doctest::Approx(std::sqrt(7.0)));
}

TEST_CASE("alpha moments: special values at sigma = 1, omega = (1, 0)") {
  const auto a = alpha_moments(Sigma(1.0), {1.0, 0.0});
  CHECK(std::abs(a.alpha0 - pi / 4) < 1e-12);
  CHECK(std::abs(a.alpha1 - 0.5) < 1e-12);
}

TEST_CASE("alpha moments at z = 0 reduce to beta functions") {
  // α_n = (1/(σκ)) ∫₀^∞ cosh^{−1/σ−n} y dy = B((1/σ+n)/2, 1/2) / (2σκ)
  for (double s : {1.2, 1.5, 1.9, 2.5}) {
    for (int n : {0, 1}) {
      const double k = kappa({1.0, 0.0});
      const double want = std::beta((1.0 / s + n) / 2.0, 0.5) / (2.0 * s * k);
      CHECK(rel_err(alpha_n(Sigma(s), {1.0, 0.0}, n), want) < 1e-12);
    }
  }
  CHECK_THROWS_AS(alpha_n(Sigma(1.5), {1.0, 0.0}, -1), DomainError);
  CHECK_THROWS_AS(alpha_n(Sigma(1.5), {1.0, 3.0}, 0), DomainError);
}

TEST_CASE("alpha derivatives match finite differences") {
  for (const Omega w : {Omega{1.0, 0.4}, Omega{0.6, -1.2}, Omega{2.0, 2.5}}) {
    const Sigma s(1.4);
    const auto d = alpha_derivatives(s, w);
    auto a0 = [&](double x, double y) { return alpha_n(s, {x, y}, 0); };
    auto a1 = [&](double x, double y) { return alpha_n(s, {x, y}, 1); };
    const double h = 1e-3;
    CHECK(rel_err(d.d0_alpha0, fd::partial(a0, w.omega0, w.omega1, 1, 0, h)) < 1e-8);
    CHECK(rel_err(d.d1_alpha0, fd::partial(a0, w.omega0, w.omega1, 0, 1, h)) < 1e-8);
    CHECK(rel_err(d.d0_alpha1, fd::partial(a1, w.omega0, w.omega1, 1, 0, h)) < 1e-8);
    CHECK(rel_err(d.d1_alpha1, fd::partial(a1, w.omega0, w.omega1, 0, 1, h)) < 1e-8);
  }
}

TEST_CASE("F_1 is identically -1") {
  for (int i = 0; i < 50; ++i) {
    const double z = -0.99 + 1.98 * i / 49.0;
    CHECK(std::abs(f_sigma(Sigma(1.0), z) + 1.0) < 1e-8);
  }
  CHECK_THROWS_AS(f_sigma(Sigma(1.5), 1.0), DomainError);
  CHECK_THROWS_AS(f_sigma(Sigma(1.5), -1.0), DomainError);
}

TEST_CASE("z0 matches high-precision reference roots") {
  for (const auto& r : reference::kRoots) {
    CAPTURE(r.sigma);
    const auto got = find_z0(Sigma(r.sigma));
    CHECK(std::abs(got.z0 - r.z0) < 1e-10);
    CHECK(std::abs(got.f_residual) <= 1e-10);
    CHECK(got.sign_changes == 1);
  }
}

TEST_CASE("sign scan finds exactly one change for 1 < sigma < 2") {
  for (double s : {1.2, 1.5, 1.8}) {
    const auto scan = scan_f_sigma(Sigma(s));
    CHECK(scan.z.size() == 100);
    CHECK(scan.sign_changes == 1);
    CHECK(scan.f.front() < 0.0);
    CHECK(scan.f.back() > 0.0);
  }
}

TEST_CASE("find_z0 error paths") {
  try {
    find_z0(Sigma(1.0));
    FAIL("expected NoRootError");
  } catch (const NoRootError& e) {
    CHECK(std::string(e.what()).find("F_1") != std::string::npos);
  }
  CHECK_THROWS_AS(find_z0(Sigma(2.0)), PreconditionError);
  CHECK_THROWS_AS(find_z0(Sigma(2.5)), PreconditionError);
}

TEST_CASE("derived parameters") {
  const auto p = derived_params(Sigma(1.5), {1.0, 0.4});
  CHECK(p.kappa == doctest::Approx(std::sqrt(4.0 - 0.16)));
  CHECK(p.z == doctest::Approx(0.2));
  CHECK(p.kappa_tilde > 0.0);
}
