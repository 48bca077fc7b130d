#include "gdnls/functionals.hpp"

#include <cmath>

#include "gdnls/errors.hpp"
#include "gdnls/profile.hpp"
#include "gdnls/spectral.hpp"

namespace gdnls {

namespace {

void require_same_grid(const ComplexField& v, const ComplexField& w) {
  if (!(v.grid == w.grid)) throw DomainError("fields live on different grids");
}

double real_pairing(const cvec& v, const cvec& w) {
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += v[j].real() * w[j].real() + v[j].imag() * w[j].imag();
  return acc;
}

}  // namespace

double l2_inner(const ComplexField& v, const ComplexField& w) {
  require_same_grid(v, w);
  return real_pairing(v.values, w.values) * v.grid.spacing();
}

double l2_norm(const ComplexField& v) { return std::sqrt(l2_inner(v, v)); }

double h1_inner(const ComplexField& v, const ComplexField& w) {
  require_same_grid(v, w);
  const Spectral sp(v.grid);
  const cvec vx = sp.derivative(v.values, 1);
  const cvec wx = sp.derivative(w.values, 1);
  return (real_pairing(v.values, w.values) + real_pairing(vx, wx)) * v.grid.spacing();
}

double h1_norm(const ComplexField& v) { return std::sqrt(std::max(h1_inner(v, v), 0.0)); }

double energy(const ComplexField& u, const Sigma& sigma) {
  const Spectral sp(u.grid);
  const cvec ux = sp.derivative(u.values, 1);
  const double s = sigma.value();
  double kinetic = 0.0;
  double nonlinear = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    kinetic += std::norm(ux[j]);
    const double a2 = std::norm(u[j]);
    if (a2 == 0.0) continue;
    const double pw = std::exp(s * std::log(a2));
    // Re(i u' · conj(|u|^{2σ} u))
    nonlinear += pw * std::real(cplx(0.0, 1.0) * ux[j] * std::conj(u[j]));
  }
  const double h = u.grid.spacing();
  return 0.5 * kinetic * h - nonlinear * h / (2.0 * (s + 1.0));
}

double mass(const ComplexField& u) { return 0.5 * l2_inner(u, u); }

double momentum(const ComplexField& u) {
  const Spectral sp(u.grid);
  const cvec ux = sp.derivative(u.values, 1);
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += std::real(cplx(0.0, 1.0) * ux[j] * std::conj(u[j]));
  return 0.5 * acc * u.grid.spacing();
}

double action(const ComplexField& u, const Sigma& sigma, const Omega& omega) {
  return energy(u, sigma) + omega.omega0 * mass(u) + omega.omega1 * momentum(u);
}

ConservedLedger ledger(const ComplexField& u, const Sigma& sigma, double t) {
  return {energy(u, sigma), mass(u), momentum(u), t};
}

ComplexField apply_B(int j, const ComplexField& u) {
  if (j == 0) return u;
  if (j == 1) return cplx(0.0, 1.0) * Spectral(u.grid).derivative(u, 1);
  throw DomainError("symmetry generator index must be 0 or 1");
}

ComplexField apply_B(std::array<double, 2> xi, const ComplexField& u) {
  return xi[0] * apply_B(0, u) + xi[1] * apply_B(1, u);
}

double d_value(const Sigma& sigma, const Omega& omega, const Grid& grid) {
  const SolitonProfile p = sample_profile(sigma, omega, grid);
  return action(p.field, sigma, omega);
}

}  // namespace gdnls
