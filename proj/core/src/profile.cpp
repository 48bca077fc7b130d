#include "gdnls/profile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gdnls/errors.hpp"
#include "gdnls/spectral.hpp"

namespace gdnls {

namespace {

constexpr double kBoundaryAmplitude = 1e-12;
constexpr double kDefaultTailAmplitude = 1e-14;
constexpr double kResolvedDecay = 25.0;

// ln(2√ω₀ cosh(c x) − ω₁) without overflow for large |x|.
double log_denominator(double sqrt_w0, double w1, double cx) {
  const double a = std::abs(cx);
  if (a < 20.0) return std::log(2.0 * sqrt_w0 * std::cosh(a) - w1);
  const double e = std::exp(-a);
  return a + std::log(sqrt_w0 * (1.0 + e * e) - w1 * e);
}

}  // namespace

double log_amplitude_at(const Sigma& sigma, const Omega& omega, double x) {
  const double s = sigma.value();
  const double k = kappa(omega);
  const double num = std::log((s + 1.0) * k * k);
  return (num - log_denominator(std::sqrt(omega.omega0), omega.omega1, s * k * x)) / (2.0 * s);
}

double amplitude_at(const Sigma& sigma, const Omega& omega, double x) {
  return std::exp(log_amplitude_at(sigma, omega, x));
}

double phase_at(const Sigma& sigma, const Omega& omega, double x) {
  const double s = sigma.value();
  const double k = kappa(omega);
  const double beta = (2.0 * std::sqrt(omega.omega0) + omega.omega1) / k;
  return 0.5 * omega.omega1 * x - (std::atan(beta * std::tanh(0.5 * s * k * x)) + std::atan(beta)) / s;
}

double decay_radius(const Sigma& sigma, const Omega& omega, double threshold) {
  const double target = std::log(threshold);
  double lo = 0.0;
  double hi = 1.0;
  while (log_amplitude_at(sigma, omega, hi) > target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_amplitude_at(sigma, omega, mid) > target ? lo : hi) = mid;
  }
  return hi;
}

double min_grid_length(const Sigma& sigma, const Omega& omega) {
  return 2.0 * decay_radius(sigma, omega, kBoundaryAmplitude);
}

double analyticity_width(const Sigma& sigma, const Omega& omega) {
  return std::acos(omega.z()) / (sigma.value() * kappa(omega));
}

Grid default_grid(const Sigma& sigma, const Omega& omega, std::size_t min_points) {
  const double length = std::max(40.0, std::ceil(2.0 * decay_radius(sigma, omega, kDefaultTailAmplitude)));
  const double width = analyticity_width(sigma, omega);
  std::size_t n = std::bit_ceil(std::max<std::size_t>(min_points, 16));
  while (width * std::numbers::pi * static_cast<double>(n) / length < kResolvedDecay) n *= 2;
  return Grid(length, n);
}

SolitonProfile sample_profile(const Sigma& sigma, const Omega& omega, const Grid& grid) {
  omega.require_admissible();
  const double edge = amplitude_at(sigma, omega, 0.5 * grid.length());
  if (!(edge < kBoundaryAmplitude)) {
    const double need = min_grid_length(sigma, omega);
    std::ostringstream msg;
    msg << "grid length " << grid.length() << " too small: boundary amplitude " << edge
        << " >= 1e-12; need L > " << need;
    throw GridTooSmallError(msg.str(), need);
  }
  const std::size_t n = grid.points();
  SolitonProfile p{sigma, omega, grid, std::vector<double>(n), std::vector<double>(n), ComplexField(grid)};
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.x(j);
    p.amplitude[j] = amplitude_at(sigma, omega, x);
    p.phase[j] = phase_at(sigma, omega, x);
    p.field[j] = std::polar(p.amplitude[j], p.phase[j]);
  }
  return p;
}

double stationary_residual(const ComplexField& u, const Sigma& sigma, const Omega& omega) {
  const Spectral sp(u.grid);
  const cvec ux = sp.derivative(u.values, 1);
  const cvec uxx = sp.derivative(u.values, 2);
  const double s = sigma.value();
  const cplx i(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double a2 = std::norm(u[j]);
    const double pw = a2 > 0.0 ? std::exp(s * std::log(a2)) : 0.0;
    const cplx r = -uxx[j] + omega.omega0 * u[j] + omega.omega1 * i * ux[j] - i * pw * ux[j];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double stationary_residual(const SolitonProfile& p) {
  return stationary_residual(p.field, p.sigma, p.omega);
}

double default_parameter_step(const Omega& omega) {
  return 1e-4 * (1.0 + std::hypot(omega.omega0, omega.omega1));
}

ComplexField parameter_derivative(const Sigma& sigma, const Omega& omega, std::array<double, 2> direction,
                                  double step, const Grid& grid) {
  omega.require_admissible();
  const double norm = std::hypot(direction[0], direction[1]);
  if (norm == 0.0) return ComplexField(grid);
  const double arm = step > 0.0 ? step : default_parameter_step(omega);
  const double h = arm / norm;
  const Omega xi{direction[0], direction[1]};
  if (!(omega + h * xi).admissible() || !(omega + (-h) * xi).admissible()) {
    throw DomainError("parameter_derivative stencil leaves the admissible set");
  }
  auto central = [&](double hh) {
    const auto plus = sample_profile(sigma, omega + hh * xi, grid);
    const auto minus = sample_profile(sigma, omega + (-hh) * xi, grid);
    return (1.0 / (2.0 * hh)) * (plus.field - minus.field);
  };
  const ComplexField coarse = central(h);
  const ComplexField fine = central(0.5 * h);
  return (1.0 / 3.0) * (4.0 * fine - coarse);
}

}  // namespace gdnls
