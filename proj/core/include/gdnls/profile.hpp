#pragma once

// Solitary-wave profile φ_ω(x) = ϕ_ω(x) e^{iΘ(x)} of the stationary equation
//   −φ'' + ω₀φ + iω₁φ' − i|φ|^{2σ}φ' = 0.

#include <array>
#include <vector>

#include "gdnls/grid.hpp"
#include "gdnls/params.hpp"

namespace gdnls {

/// ϕ_ω(x) = {(σ+1)κ² / (2√ω₀ cosh(σκx) − ω₁)}^{1/2σ}.
double amplitude_at(const Sigma& sigma, const Omega& omega, double x);
double log_amplitude_at(const Sigma& sigma, const Omega& omega, double x);

/// Θ(x) = ω₁x/2 − (1/(2σ+2)) ∫_{−∞}^x ϕ^{2σ}, evaluated through
///   ∫_{−∞}^x ϕ^{2σ} = (2(σ+1)/σ) [atan(β tanh(σκx/2)) + atan β],  β = (2√ω₀ + ω₁)/κ.
double phase_at(const Sigma& sigma, const Omega& omega, double x);

/// Half-width beyond which ϕ_ω < threshold.
double decay_radius(const Sigma& sigma, const Omega& omega, double threshold);

/// Smallest period L with ϕ_ω(±L/2) < 10⁻¹².
double min_grid_length(const Sigma& sigma, const Omega& omega);

/// Distance from the real axis of the nearest complex singularity of φ_ω;
/// Fourier coefficients of the profile decay like e^{−width·|k|}.
double analyticity_width(const Sigma& sigma, const Omega& omega);

/// Default discretization: ϕ_ω(±L/2) ≤ 10⁻¹⁴, L ≥ 40, and N ≥ min_points
/// doubled until the analyticity strip resolves to e^{−25} at the largest mode.
Grid default_grid(const Sigma& sigma, const Omega& omega, std::size_t min_points = 1024);

struct SolitonProfile {
  Sigma sigma;
  Omega omega;
  Grid grid;
  std::vector<double> amplitude;
  std::vector<double> phase;
  ComplexField field;
};

/// Throws GridTooSmallError (carrying the minimal L) when the boundary
/// amplitude is not below 10⁻¹².
SolitonProfile sample_profile(const Sigma& sigma, const Omega& omega, const Grid& grid);

/// max |−u'' + ω₀u + iω₁u' − i|u|^{2σ}u'| with spectral derivatives.
double stationary_residual(const ComplexField& u, const Sigma& sigma, const Omega& omega);
double stationary_residual(const SolitonProfile& p);

/// Default ω-space step of parameter_derivative: 10⁻⁴(1 + |ω|).
double default_parameter_step(const Omega& omega);

/// ψ̂ = ∂_λ φ_{ω+λξ}|₀ by central differences at steps h and h/2 combined by
/// one Richardson level. `step` is the ω-space length of the stencil arm
/// (≤ 0 selects default_parameter_step); the result is linear in ξ.
ComplexField parameter_derivative(const Sigma& sigma, const Omega& omega, std::array<double, 2> direction,
                                  double step, const Grid& grid);

}  // namespace gdnls
