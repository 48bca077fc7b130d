#pragma once

// Special-function layer: κ_ω, κ̃_ω, the moment integrals α_{n,ω},
// the stability function F_σ and its root z₀(σ).

#include <array>
#include <cstddef>
#include <vector>

namespace gdnls {

/// Nonlinearity exponent σ ≥ 1.
class Sigma {
 public:
  explicit Sigma(double value);
  double value() const noexcept { return value_; }
  /// Throws PreconditionError unless lo < σ < hi.
  void require_open(double lo, double hi, const char* what) const;

 private:
  double value_;
};

/// Frequency pair (ω₀, ω₁) in Ω = {ω₁² < 4ω₀}.
struct Omega {
  double omega0 = 1.0;
  double omega1 = 0.0;

  bool admissible() const noexcept;
  /// Throws DomainError when ω ∉ Ω.
  void require_admissible() const;
  /// z = ω₁ / (2√ω₀).
  double z() const;

  friend Omega operator+(Omega a, Omega b) { return {a.omega0 + b.omega0, a.omega1 + b.omega1}; }
  friend Omega operator*(double s, Omega a) { return {s * a.omega0, s * a.omega1}; }
};

struct DerivedParams {
  double kappa;
  double kappa_tilde;
  double z;
};

/// Controls for the half-line quadratures. `max_subdivisions` is the depth
/// of binary interval splitting allowed per panel.
struct QuadratureSpec {
  double rel_tol = 1e-13;
  double abs_tol = 1e-15;
  double y_max = 0.0;  // 0: derive from the analytic tail bound
  int max_subdivisions = 10;

  void validate() const;
};

struct AlphaMoments {
  double alpha0;
  double alpha1;
};

/// ∂α / ∂ω for n = 0, 1.
struct AlphaDerivatives {
  double d0_alpha0;  // ∂_{ω₀} α₀
  double d1_alpha0;  // ∂_{ω₁} α₀
  double d0_alpha1;
  double d1_alpha1;
};

double kappa(const Omega& omega);
double kappa_tilde(const Sigma& sigma, const Omega& omega);
DerivedParams derived_params(const Sigma& sigma, const Omega& omega);

/// α_{n,ω} = ∫₀^∞ (cosh(σκx) − z)^{−1/σ−n} dx.
double alpha_n(const Sigma& sigma, const Omega& omega, int n, const QuadratureSpec& spec = {});
AlphaMoments alpha_moments(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec = {});
AlphaDerivatives alpha_derivatives(const Sigma& sigma, const Omega& omega,
                                   const QuadratureSpec& spec = {});

/// F_σ(z) = (σ−1)² I₁² − I₂² with I₁ = ∫(cosh y − z)^{−1/σ}, I₂ = ∫(cosh y − z)^{−1/σ−1}(z cosh y − 1).
double f_sigma(const Sigma& sigma, double z, const QuadratureSpec& spec = {});

/// Largest |z| accepted by f_sigma.
inline constexpr double kMaxAbsZ = 1.0 - 1e-6;

struct SignScan {
  std::vector<double> z;
  std::vector<double> f;
  std::size_t sign_changes = 0;
};

/// F_σ on `points` equispaced nodes of [−1+δ, 1−δ].
SignScan scan_f_sigma(const Sigma& sigma, std::size_t points = 100, const QuadratureSpec& spec = {});

struct Z0Result {
  double z0;
  double f_residual;
  double bracket_width;
  std::size_t sign_changes;
};

/// Bisection for the unique root of F_σ in (−1, 1); requires 1 < σ < 2.
Z0Result find_z0(const Sigma& sigma, const QuadratureSpec& spec = {});

}  // namespace gdnls
