#pragma once

// Pseudospectral integration of i u_t + u_xx + i|u|^{2σ} u_x = 0 with
// integrating-factor RK4, plus orbital-distance tracking against the
// soliton orbit {e^{is₀}φ_ω(· − s₁)}.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdnls/functionals.hpp"
#include "gdnls/grid.hpp"
#include "gdnls/params.hpp"
#include "gdnls/profile.hpp"

namespace gdnls {

enum class PerturbationKind { none, psi_hat_ray, random_h1 };
std::string to_string(PerturbationKind k);
PerturbationKind parse_perturbation_kind(const std::string& s);

struct Perturbation {
  PerturbationKind kind = PerturbationKind::none;
  double amplitude = 0.0;
  int sign = 1;
  /// Ray direction ξ for psi_hat_ray; (0, 0) requests the zero eigenvector of d″(ω).
  std::array<double, 2> direction{0.0, 0.0};
  std::uint64_t seed = 0;
};

struct SimConfig {
  Sigma sigma{1.0};
  Omega omega{1.0, 0.0};
  Grid grid{40.0, 1024};
  double dt = 1e-3;
  double t_end = 1.0;
  double dealias = 2.0 / 3.0;
  Perturbation perturbation;
  double tube_epsilon = 0.05;
  int sample_every = 100;
  /// Nonlinear CFL number: dt·max|u|^{2σ}·k_max is kept below this.
  double cfl = 0.1;
  bool stop_on_exit = true;
  /// Relative ledger jump between samples that triggers a halved-step retry.
  double spike_tolerance = 1e-6;
  double boundary_fraction = 0.05;
  double boundary_mass_limit = 1e-8;

  void validate() const;
};

struct SimState {
  double t = 0.0;
  ComplexField field;
  ConservedLedger ledger;
  double orbital_distance = 0.0;
};

struct OrbitalFit {
  double distance;
  double s0;  // gauge, in (−π, π]
  double s1;  // translation, in [−L/2, L/2)
};

/// inf over (s₀, s₁) of ‖u − e^{is₀}φ(· − s₁)‖_{H¹}: all grid shifts by one
/// FFT cross-correlation, then parabolic interpolation and Newton polish on
/// the trigonometric interpolant.
OrbitalFit orbital_distance(const ComplexField& u, const ComplexField& phi);
OrbitalFit orbital_distance(const ComplexField& u, const SolitonProfile& p);

/// Holds FFT work buffers and the linear propagator for one (grid, dt).
class Integrator {
 public:
  Integrator(const Sigma& sigma, const Grid& grid, double dt, double dealias = 2.0 / 3.0);

  double dt() const noexcept { return dt_; }
  /// One IF-RK4 step on Fourier coefficients.
  void advance(cvec& u_hat);
  /// Largest stable dt for the given field under the nonlinear CFL number.
  double cfl_limit(const cvec& u, double cfl) const;
  /// Largest retained |k| after dealiasing.
  double k_max() const noexcept { return k_max_; }

 private:
  void nonlinear(const cvec& v_hat, cvec& out);

  double sigma_;
  Grid grid_;
  double dt_;
  double k_max_ = 0.0;
  std::vector<double> ik_;
  std::vector<double> mask_;
  cvec half_;  // e^{−ik²dt/2}
  cvec u_, ux_, tmp_, work_, a_, b_, c_, d_, stage_;
};

/// One IF-RK4 step of size config.dt (substepped if the CFL bound requires it).
SimState step(const SimState& state, const SimConfig& config);

struct TraceRow {
  double t;
  double distance;
  double s0;
  double s1;
  double energy_drift;
  double q0_drift;
  double q1_drift;
};

struct OrbitalTrace {
  std::vector<TraceRow> rows;
  std::optional<double> exit_time;
  ConservedLedger initial;
  double max_energy_drift = 0.0;
  double max_q0_drift = 0.0;
  double max_q1_drift = 0.0;
  double initial_distance = 0.0;
  std::array<double, 2> direction{0.0, 0.0};
  std::size_t steps = 0;
  std::size_t retries = 0;
};

/// φ_ω plus the configured perturbation.
ComplexField initial_data(const SimConfig& config, const SolitonProfile& p,
                          std::array<double, 2>* direction_used = nullptr);

/// Integrates to t_end or to the first sample with distance > tube_epsilon.
OrbitalTrace run_experiment(const SimConfig& config);

}  // namespace gdnls
