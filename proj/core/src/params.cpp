#include "gdnls/params.hpp"

#include <cmath>
#include <sstream>

#include "gdnls/errors.hpp"
#include "gdnls/quadrature.hpp"

namespace gdnls {

namespace {

constexpr double kBracketDelta = 1e-6;
constexpr double kBisectionWidth = 1e-12;
constexpr double kRootResidual = 1e-10;

std::string describe(const Omega& w) {
  std::ostringstream s;
  s.precision(17);
  s << "(" << w.omega0 << ", " << w.omega1 << ")";
  return s.str();
}

}  // namespace

Sigma::Sigma(double value) : value_(value) {
  if (!(value >= 1.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "sigma must be >= 1, got " << value;
    throw PreconditionError(msg.str());
  }
}

void Sigma::require_open(double lo, double hi, const char* what) const {
  if (!(value_ > lo && value_ < hi)) {
    std::ostringstream msg;
    msg << what << " requires " << lo << " < sigma < " << hi << ", got " << value_;
    throw PreconditionError(msg.str());
  }
}

bool Omega::admissible() const noexcept {
  return std::isfinite(omega0) && std::isfinite(omega1) && omega1 * omega1 < 4.0 * omega0;
}

void Omega::require_admissible() const {
  if (!admissible()) throw DomainError("omega " + describe(*this) + " is outside {omega1^2 < 4 omega0}");
}

double Omega::z() const {
  require_admissible();
  return omega1 / (2.0 * std::sqrt(omega0));
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 || y_max < 0.0) {
    throw DomainError("invalid quadrature spec");
  }
}

double kappa(const Omega& omega) {
  omega.require_admissible();
  return std::sqrt(4.0 * omega.omega0 - omega.omega1 * omega.omega1);
}

double kappa_tilde(const Sigma& sigma, const Omega& omega) {
  const double s = sigma.value();
  const double k = kappa(omega);
  return std::pow(2.0, 1.0 / s - 2.0) / s * std::pow(1.0 + s, 1.0 / s) * std::pow(k, 2.0 / s - 2.0) *
         std::pow(omega.omega0, -0.5 / s - 0.5);
}

DerivedParams derived_params(const Sigma& sigma, const Omega& omega) {
  return {kappa(omega), kappa_tilde(sigma, omega), omega.z()};
}

double alpha_n(const Sigma& sigma, const Omega& omega, int n, const QuadratureSpec& spec) {
  if (n < 0) throw DomainError("alpha_n requires n >= 0");
  const double s = sigma.value();
  const double k = kappa(omega);
  const double z = omega.z();
  const double p = 1.0 / s + n;
  // y = σκx turns the integral into ∫₀^∞ (cosh y − z)^{−p} dy / (σκ).
  auto integrand = [p, z](double y) { return std::exp(-p * std::log(cosh_minus(y, z))); };
  return integrate_half_line(integrand, p, z, 1.0, spec).value / (s * k);
}

AlphaMoments alpha_moments(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  return {alpha_n(sigma, omega, 0, spec), alpha_n(sigma, omega, 1, spec)};
}

AlphaDerivatives alpha_derivatives(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  const double s = sigma.value();
  const double w0 = omega.omega0;
  const double w1 = omega.omega1;
  const double k2 = kappa(omega) * kappa(omega);
  const double r = std::sqrt(w0);
  const auto [a0, a1] = alpha_moments(sigma, omega, spec);
  AlphaDerivatives d{};
  d.d0_alpha0 = -2.0 / k2 * a0 - w1 / (4.0 * s * w0 * r) * a1;
  d.d1_alpha0 = w1 / k2 * a0 + 1.0 / (2.0 * s * r) * a1;
  d.d0_alpha1 = -w1 / (s * r * k2) * a0 - (w1 * w1 * (2.0 + s) + 4.0 * s * w0) / (2.0 * s * w0 * k2) * a1;
  d.d1_alpha1 = 2.0 * r / (s * k2) * a0 + 2.0 * w1 * (s + 1.0) / (s * k2) * a1;
  return d;
}

double f_sigma(const Sigma& sigma, double z, const QuadratureSpec& spec) {
  if (!(std::abs(z) <= kMaxAbsZ)) {
    std::ostringstream msg;
    msg << "f_sigma requires |z| <= 1 - 1e-6, got " << z;
    throw DomainError(msg.str());
  }
  const double s = sigma.value();
  const double p = 1.0 / s;
  auto first = [p, z](double y) { return std::exp(-p * std::log(cosh_minus(y, z))); };
  auto second = [p, z](double y) {
    const double c = cosh_minus(y, z);
    const double sh = std::sinh(0.5 * y);
    const double numer = -(1.0 - z) + 2.0 * z * sh * sh;  // z cosh y − 1
    return std::exp(-(p + 1.0) * std::log(c)) * numer;
  };
  const double i2 = integrate_half_line(second, p, z, 1.2, spec).value;
  if (s == 1.0) return -i2 * i2;
  const double i1 = integrate_half_line(first, p, z, 1.0, spec).value;
  return (s - 1.0) * (s - 1.0) * i1 * i1 - i2 * i2;
}

SignScan scan_f_sigma(const Sigma& sigma, std::size_t points, const QuadratureSpec& spec) {
  if (points < 2) throw DomainError("scan needs at least two points");
  SignScan scan;
  scan.z.resize(points);
  scan.f.resize(points);
  const double lo = -1.0 + kBracketDelta;
  const double hi = 1.0 - kBracketDelta;
  for (std::size_t i = 0; i < points; ++i) {
    scan.z[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    scan.f[i] = f_sigma(sigma, scan.z[i], spec);
    if (i > 0 && std::signbit(scan.f[i]) != std::signbit(scan.f[i - 1])) ++scan.sign_changes;
  }
  return scan;
}

Z0Result find_z0(const Sigma& sigma, const QuadratureSpec& spec) {
  if (!(sigma.value() < 2.0)) sigma.require_open(1.0, 2.0, "find_z0");

  const SignScan scan = scan_f_sigma(sigma, 100, spec);
  if (scan.sign_changes == 0) {
    if (sigma.value() == 1.0) throw NoRootError("no root: F_1 ≡ −1");
    std::ostringstream msg;
    msg << "no root: F_" << sigma.value() << " does not change sign on [-1+1e-6, 1-1e-6]";
    throw NoRootError(msg.str());
  }
  if (scan.sign_changes > 1) {
    std::ostringstream msg;
    msg << "F_" << sigma.value() << " changes sign " << scan.sign_changes
        << " times on the 100-point scan; a unique root was expected";
    throw MultipleRootsError(msg.str());
  }

  double lo = -1.0 + kBracketDelta;
  double hi = 1.0 - kBracketDelta;
  double f_lo = scan.f.front();
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f_sigma(sigma, mid, spec);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  Z0Result out{};
  out.z0 = 0.5 * (lo + hi);
  out.f_residual = f_sigma(sigma, out.z0, spec);
  out.bracket_width = hi - lo;
  out.sign_changes = scan.sign_changes;
  if (!(std::abs(out.f_residual) <= kRootResidual)) {
    std::ostringstream msg;
    msg << "bisection for z0 stalled with |F| = " << std::abs(out.f_residual);
    throw ConvergenceError(msg.str());
  }
  return out;
}

}  // namespace gdnls
