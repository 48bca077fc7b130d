#pragma once

// Hessian d″(ω), third partials, the zero eigenvector ξ at the degenerate
// line ω₁ = 2z₀√ω₀, and the third directional derivative
// ν = d³/dλ³ d(ω + λξ)|₀. Each closed form has a finite-difference twin
// built on d_value.

#include <array>
#include <optional>
#include <string>

#include "gdnls/grid.hpp"
#include "gdnls/params.hpp"

namespace gdnls {

/// Symmetric 2×2 matrix [[a00, a01], [a01, a11]].
struct Sym2 {
  double a00 = 0.0;
  double a01 = 0.0;
  double a11 = 0.0;

  double det() const noexcept { return a00 * a11 - a01 * a01; }
  std::array<double, 2> apply(std::array<double, 2> v) const noexcept {
    return {a00 * v[0] + a01 * v[1], a01 * v[0] + a11 * v[1]};
  }
};

struct SymEigen2 {
  std::array<double, 2> values;               // ascending
  std::array<std::array<double, 2>, 2> vectors;  // unit, vectors[i] ↔ values[i]
};

/// Closed-form eigen-decomposition of a symmetric 2×2 matrix.
SymEigen2 eigen_decompose(const Sym2& m);
/// Largest |eigenvalue|.
double spectral_norm(const Sym2& m);

/// Common prefactor κ̃_ω · 2^{−2/σ} of the closed-form derivatives.
double hessian_scale(const Sigma& sigma, const Omega& omega);

/// d″(ω) from α₀, α₁; ∂²_{ω₁}d = ω₀ ∂²_{ω₀}d by construction.
Sym2 hessian_closed(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});

/// 3×3 second-difference stencil on d_value at steps h, h/2 plus Richardson.
Sym2 hessian_fd(const Sigma& sigma, const Omega& omega, const Grid& grid, double h = 1e-3);

struct ThirdPartials {
  double d000;  // ∂³_{ω₀}d
  double d001;  // ∂²_{ω₀}∂_{ω₁}d
  double d011;  // ∂_{ω₀}∂²_{ω₁}d
  double d111;  // ∂³_{ω₁}d
};

ThirdPartials third_partials(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});
ThirdPartials third_partials_fd(const Sigma& sigma, const Omega& omega, const Grid& grid, double h = 1e-2);

/// Grid wide enough for every stencil point an oracle visits around ω.
Grid oracle_grid(const Sigma& sigma, const Omega& omega);

/// |det d″| ≤ 10⁻⁶ ‖d″‖² is treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-6;
bool is_degenerate(const Sym2& hessian);

/// ξ = (−ω₀∂²_{ω₀}d, ∂_{ω₀}∂_{ω₁}d). Throws NotDegenerateError / ZeroVectorError.
std::array<double, 2> zero_eigenvector(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});

enum class Branch { minus, plus };
std::string to_string(Branch b);

struct BranchInfo {
  Branch branch;
  /// |(∂₀∂₁d)² − ω₀(∂²₀d)²| / (ω₀(∂²₀d)²)
  double squared_identity_residual;
};

/// minus: ∂₀∂₁d = −√ω₀ ∂²₀d;  plus: ∂₀∂₁d = +√ω₀ ∂²₀d.
BranchInfo branch_detect(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});

/// ν from the branch formula ω₀²(∂²₀d)³[−4∂₀∂²₁d ∓ 4√ω₀ ∂²₀∂₁d + ∂²₀d].
double third_directional(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});

/// ν as the full contraction Σ ξᵢξⱼξₖ ∂ᵢⱼₖd (no branch reduction).
double third_directional_contracted(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});

/// The branch bracket reduced with the degeneracy relation:
///   (8√ω₀ κ̃ α₀ / (σ(1 − z²))) σ(σ−1)(z−1)²(z+1)   (minus branch; (z+1)²(z−1) for plus).
double reduced_bracket(const Sigma& sigma, const Omega& omega, Branch branch, const QuadratureSpec& spec = {});

/// Five-point third central difference of λ ↦ d(ω + λξ) with Richardson.
/// `omega_step` is the ω-space length of one stencil arm.
double third_directional_fd(const Sigma& sigma, const Omega& omega, std::array<double, 2> xi, const Grid& grid,
                            double omega_step);

struct HessianReport {
  Sigma sigma;
  Omega omega;
  std::array<double, 2> d_grad;  // (Q₀(φ_ω), Q₁(φ_ω))
  Sym2 hessian;
  Sym2 hessian_fd;
  double det;
  SymEigen2 eigen;
  double f_value;      // F_σ(ω₁/2√ω₀)
  double fd_residual;  // max relative entry disagreement with the FD oracle
};

HessianReport hessian_report(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {},
                             std::optional<Grid> grid = std::nullopt);

struct DegeneracyReport {
  Sigma sigma;
  double omega0;
  double z0;
  double f_residual;
  Omega omega_star;
  Sym2 hessian;
  SymEigen2 eigen;
  std::array<double, 2> xi;
  Branch branch;
  double squared_identity_residual;
  double nu;              // branch formula
  double nu_contracted;   // full third-partial contraction
  double nu_fd;           // λ-ray oracle
  double nu_reduced;      // ω₀²(∂²₀d)³ × reduced bracket
  double kernel_residual;      // ‖d″ξ‖ / (‖d″‖‖ξ‖)
  double fd_relative_error;    // |ν − ν_fd| / |ν|
  double reduced_relative_error;
  bool energy_is_c3;  // σ ≥ 3/2; below that the cubic expansion of E is formal

  bool invariants_hold() const noexcept;
};

/// Locates ω₁ = 2z₀√ω₀ and runs every closed form and oracle there.
/// Requires σ < 2; σ = 1 surfaces NoRootError from find_z0.
DegeneracyReport degeneracy_report(const Sigma& sigma, double omega0, const QuadratureSpec& spec = {},
                                   std::optional<Grid> grid = std::nullopt);

enum class Stability { stable, unstable, degenerate_unstable, degenerate };
std::string to_string(Stability s);

struct StabilityRow {
  double sigma;
  double omega0;
  double omega1;
  double det;
  double f_value;
  Stability classification;
};

/// Classification of ω for a given σ. `z0` must be supplied for 1 < σ < 2.
StabilityRow classify(const Sigma& sigma, const Omega& omega, std::optional<double> z0,
                      const QuadratureSpec& spec = {});

}  // namespace gdnls
