#pragma once

// Realified matrix of the linearized operator
//   S″_ω(φ)v = (−∂ₓ² − iσ|φ|^{2σ−2}φ̄φ' − i|φ|^{2σ}∂ₓ + ω₀ + iω₁∂ₓ)v − iσ|φ|^{2σ−2}φφ' v̄,
// acting on v ↦ (Re v₀, Im v₀, Re v₁, Im v₁, ...).

#include <Eigen/Dense>
#include <vector>

#include "gdnls/grid.hpp"
#include "gdnls/params.hpp"
#include "gdnls/profile.hpp"

namespace gdnls {

struct LinearizedOperator {
  Sigma sigma;
  Omega omega;
  ComplexField profile;
  Eigen::MatrixXd matrix;

  const Grid& grid() const noexcept { return profile.grid; }
  /// ‖A − Aᵀ‖_∞ / ‖A‖_∞ (row-sum norms).
  double asymmetry() const;
};

/// Interleaves (Re, Im) node by node.
Eigen::VectorXd realify(const ComplexField& v);
ComplexField complexify(const Grid& grid, const Eigen::VectorXd& x);

/// Matrix-free application of S″_ω(φ) with spectral derivatives.
ComplexField linearized_action(const ComplexField& phi, const Sigma& sigma, const Omega& omega,
                               const ComplexField& v);

/// Columns are the images of e_j and i·e_j under linearized_action.
LinearizedOperator assemble(const ComplexField& phi, const Sigma& sigma, const Omega& omega);
LinearizedOperator assemble(const SolitonProfile& p);

/// A·v through the assembled matrix.
ComplexField apply(const LinearizedOperator& op, const ComplexField& v);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double asymmetry = 0.0;
};

/// `count` smallest eigenvalues of (A + Aᵀ)/2 by a dense symmetric solver.
SpectrumReport lowest_spectrum(const LinearizedOperator& op, int count);

}  // namespace gdnls
