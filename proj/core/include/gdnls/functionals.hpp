#pragma once

// Conserved quantities, action, symmetry generators and H¹ geometry on a
// periodic grid. Integrals use the rectangle rule and derivatives are
// spectral.

#include "gdnls/grid.hpp"
#include "gdnls/params.hpp"

namespace gdnls {

struct ConservedLedger {
  double energy = 0.0;
  double q0 = 0.0;
  double q1 = 0.0;
  double t = 0.0;
};

/// (v, w)_{L²} = Re ∫ v w̄.
double l2_inner(const ComplexField& v, const ComplexField& w);
double l2_norm(const ComplexField& v);

/// (v, w)_{H¹} = (v, w)_{L²} + (v', w')_{L²}.
double h1_inner(const ComplexField& v, const ComplexField& w);
double h1_norm(const ComplexField& v);

/// E(u) = ½‖u'‖² − (1/(2σ+2)) (iu', |u|^{2σ}u).
double energy(const ComplexField& u, const Sigma& sigma);
/// Q₀(u) = ½‖u‖².
double mass(const ComplexField& u);
/// Q₁(u) = ½(iu', u).
double momentum(const ComplexField& u);
/// S_ω(u) = E(u) + ω₀Q₀(u) + ω₁Q₁(u).
double action(const ComplexField& u, const Sigma& sigma, const Omega& omega);

ConservedLedger ledger(const ComplexField& u, const Sigma& sigma, double t = 0.0);

/// B₀u = u, B₁u = iu'. Throws DomainError for j ∉ {0, 1}.
ComplexField apply_B(int j, const ComplexField& u);
/// B_ξ u = ξ₀B₀u + ξ₁B₁u.
ComplexField apply_B(std::array<double, 2> xi, const ComplexField& u);

/// d(ω) = S_ω(φ_ω) of the profile sampled on `grid`.
double d_value(const Sigma& sigma, const Omega& omega, const Grid& grid);

}  // namespace gdnls
