#include "gdnls/linearized.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gdnls/errors.hpp"
#include "gdnls/spectral.hpp"

namespace gdnls {

double LinearizedOperator::asymmetry() const {
  const double norm = matrix.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm == 0.0) return 0.0;
  const Eigen::MatrixXd skew = matrix - matrix.transpose();
  return skew.cwiseAbs().rowwise().sum().maxCoeff() / norm;
}

Eigen::VectorXd realify(const ComplexField& v) {
  Eigen::VectorXd x(2 * v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    x[2 * j] = v[j].real();
    x[2 * j + 1] = v[j].imag();
  }
  return x;
}

ComplexField complexify(const Grid& grid, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != 2 * grid.points()) throw DomainError("vector length mismatch");
  ComplexField v(grid);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = cplx(x[2 * j], x[2 * j + 1]);
  return v;
}

namespace {

struct Coefficients {
  std::vector<double> power;    // |φ|^{2σ}
  std::vector<double> im_linear;  // Im σ|φ|^{2σ−2} φ̄ φ'
  cvec conjugate;               // σ|φ|^{2σ−2} φ φ'
};

Coefficients coefficients(const ComplexField& phi, const Sigma& sigma, const Spectral& sp) {
  const cvec dphi = sp.derivative(phi.values, 1);
  const double s = sigma.value();
  Coefficients c{std::vector<double>(phi.size()), std::vector<double>(phi.size()), cvec(phi.size())};
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double a2 = std::norm(phi[j]);
    if (a2 == 0.0) continue;
    const double pm = std::exp((s - 1.0) * std::log(a2));  // |φ|^{2σ−2}
    c.power[j] = pm * a2;
    c.im_linear[j] = s * pm * (std::conj(phi[j]) * dphi[j]).imag();
    c.conjugate[j] = s * pm * phi[j] * dphi[j];
  }
  return c;
}

// The transport term −i|φ|^{2σ}v' − iσ|φ|^{2σ−2}φ̄φ'v is applied in the skew form
// −(i/2)(P v' + (P v)') + Im(σ|φ|^{2σ−2}φ̄φ') v, which keeps the discrete operator symmetric.
ComplexField act(const Coefficients& c, const Spectral& sp, const Omega& omega, const ComplexField& v) {
  const cvec vx = sp.derivative(v.values, 1);
  const cvec vxx = sp.derivative(v.values, 2);
  cvec pv(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) pv[j] = c.power[j] * v[j];
  const cvec pvx = sp.derivative(pv, 1);
  const cplx i(0.0, 1.0);
  ComplexField out(v.grid);
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = -vxx[j] - 0.5 * i * (c.power[j] * vx[j] + pvx[j]) + c.im_linear[j] * v[j] + omega.omega0 * v[j] +
             omega.omega1 * i * vx[j] - i * c.conjugate[j] * std::conj(v[j]);
  }
  return out;
}

}  // namespace

ComplexField linearized_action(const ComplexField& phi, const Sigma& sigma, const Omega& omega,
                               const ComplexField& v) {
  if (!(phi.grid == v.grid)) throw DomainError("fields live on different grids");
  const Spectral sp(phi.grid);
  return act(coefficients(phi, sigma, sp), sp, omega, v);
}

LinearizedOperator assemble(const ComplexField& phi, const Sigma& sigma, const Omega& omega) {
  const Spectral sp(phi.grid);
  const Coefficients c = coefficients(phi, sigma, sp);
  const auto n = static_cast<Eigen::Index>(phi.size());
  LinearizedOperator op{sigma, omega, phi, Eigen::MatrixXd(2 * n, 2 * n)};
  ComplexField unit(phi.grid);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int part = 0; part < 2; ++part) {
      unit[static_cast<std::size_t>(j)] = part == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
      op.matrix.col(2 * j + part) = realify(act(c, sp, omega, unit));
    }
    unit[static_cast<std::size_t>(j)] = 0.0;
  }
  return op;
}

LinearizedOperator assemble(const SolitonProfile& p) { return assemble(p.field, p.sigma, p.omega); }

ComplexField apply(const LinearizedOperator& op, const ComplexField& v) {
  if (!(v.grid == op.grid())) throw DomainError("field grid does not match operator grid");
  return complexify(v.grid, op.matrix * realify(v));
}

SpectrumReport lowest_spectrum(const LinearizedOperator& op, int count) {
  if (count < 1) throw DomainError("eigenvalue count must be positive");
  const Eigen::MatrixXd sym = 0.5 * (op.matrix + op.matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver failed");
  SpectrumReport r;
  r.asymmetry = op.asymmetry();
  const auto take = std::min<Eigen::Index>(count, solver.eigenvalues().size());
  r.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + take);
  return r;
}

}  // namespace gdnls
