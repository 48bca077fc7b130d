#include "gdnls/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "gdnls/errors.hpp"
#include "gdnls/moments.hpp"
#include "gdnls/spectral.hpp"

namespace gdnls {

std::string to_string(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::none: return "none";
    case PerturbationKind::psi_hat_ray: return "psi_hat_ray";
    case PerturbationKind::random_h1: return "random_h1";
  }
  return "none";
}

PerturbationKind parse_perturbation_kind(const std::string& s) {
  if (s == "none") return PerturbationKind::none;
  if (s == "psi_hat_ray") return PerturbationKind::psi_hat_ray;
  if (s == "random_h1") return PerturbationKind::random_h1;
  throw DomainError("unknown perturbation kind '" + s + "'");
}

void SimConfig::validate() const {
  omega.require_admissible();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be non-negative");
  if (!(tube_epsilon > 0.0)) throw DomainError("tube_epsilon must be positive");
  if (!(dealias > 0.0 && dealias <= 1.0)) throw DomainError("dealias must lie in (0, 1]");
  if (sample_every < 1) throw DomainError("sample_every must be at least 1");
  if (!(cfl > 0.0)) throw DomainError("cfl must be positive");
  if (!(perturbation.amplitude >= 0.0)) throw DomainError("perturbation amplitude must be non-negative");
  if (perturbation.sign != 1 && perturbation.sign != -1) throw DomainError("perturbation sign must be +1 or -1");
  if (!(boundary_fraction > 0.0 && boundary_fraction < 0.5)) throw DomainError("boundary_fraction must lie in (0, 1/2)");
}

// ---------------------------------------------------------------------------
// Orbital distance

namespace {

struct Correlation {
  const Grid& grid;
  cvec x;  // û conj(φ̂)(1 + k²), scaled so that c(s) = Σ x_k e^{iks}

  // c(s) and its first two s-derivatives
  std::array<cplx, 3> eval(double s) const {
    std::array<cplx, 3> out{};
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double k = grid.wavenumber(j);
      cplx e;
      cplx de;
      if (j == grid.nyquist()) {
        e = std::cos(k * s);
        de = -k * std::sin(k * s);
      } else {
        e = std::polar(1.0, k * s);
        de = cplx(0.0, k) * e;
      }
      out[0] += x[j] * e;
      out[1] += x[j] * de;
      out[2] += x[j] * (-k * k) * e;
    }
    return out;
  }
};

double wrap_shift(double s, double length) {
  s = std::remainder(s, length);
  if (s >= 0.5 * length) s -= length;
  return s;
}

}  // namespace

OrbitalFit orbital_distance(const ComplexField& u, const ComplexField& phi) {
  if (!(u.grid == phi.grid)) throw DomainError("fields live on different grids");
  const Grid& grid = u.grid;
  const Spectral sp(grid);
  const std::size_t n = grid.points();
  const double h = grid.spacing();

  const cvec uh = sp.forward(u.values);
  const cvec ph = sp.forward(phi.values);
  Correlation corr{grid, cvec(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double k = sp.first_symbol(j);
    corr.x[j] = uh[j] * std::conj(ph[j]) * (1.0 + k * k) * (h / static_cast<double>(n));
  }

  // c at every grid shift s_m = m h is an inverse DFT of x.
  cvec on_grid(n);
  sp.backward(corr.x, on_grid);
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double a = std::abs(on_grid[m]);
    if (a > best_abs) {
      best_abs = a;
      best = m;
    }
  }

  double s = wrap_shift(h * static_cast<double>(best), grid.length());
  if (best_abs > 0.0) {
    const double gm = std::norm(on_grid[(best + n - 1) % n]);
    const double g0 = std::norm(on_grid[best]);
    const double gp = std::norm(on_grid[(best + 1) % n]);
    const double curv = gm - 2.0 * g0 + gp;
    if (curv < 0.0) s += 0.5 * h * (gm - gp) / curv;

    // Newton on g(s) = |c(s)|², kept within one cell of the grid maximum.
    const double anchor = s;
    for (int it = 0; it < 30; ++it) {
      const auto c = corr.eval(s);
      const double g1 = 2.0 * std::real(std::conj(c[0]) * c[1]);
      const double g2 = 2.0 * (std::norm(c[1]) + std::real(std::conj(c[0]) * c[2]));
      if (!(g2 < 0.0)) break;
      const double next = std::clamp(s - g1 / g2, anchor - h, anchor + h);
      const double ds = next - s;
      s = next;
      if (std::abs(ds) <= 1e-15 * grid.length()) break;
    }
    s = wrap_shift(s, grid.length());
  }

  const cplx c = corr.eval(s)[0];
  const double s0 = std::abs(c) > 0.0 ? std::arg(c) : 0.0;
  ComplexField residual = u - std::polar(1.0, s0) * sp.shift(phi, s);
  return {h1_norm(residual), s0, s};
}

OrbitalFit orbital_distance(const ComplexField& u, const SolitonProfile& p) { return orbital_distance(u, p.field); }

// ---------------------------------------------------------------------------
// Integrator

Integrator::Integrator(const Sigma& sigma, const Grid& grid, double dt, double dealias)
    : sigma_(sigma.value()), grid_(grid), dt_(dt) {
  const std::size_t n = grid.points();
  const Spectral sp(grid);
  ik_.resize(n);
  mask_.resize(n);
  half_.resize(n);
  const double cutoff = dealias * std::numbers::pi * static_cast<double>(n) / grid.length();
  for (std::size_t j = 0; j < n; ++j) {
    const double k = grid.wavenumber(j);
    ik_[j] = sp.first_symbol(j);
    const bool keep = j != grid.nyquist() && std::abs(k) <= cutoff * (1.0 + 1e-12);
    mask_[j] = keep ? 1.0 : 0.0;
    if (keep) k_max_ = std::max(k_max_, std::abs(k));
    half_[j] = std::polar(1.0, -0.5 * k * k * dt);
  }
  for (auto* v : {&u_, &ux_, &tmp_, &work_, &a_, &b_, &c_, &d_, &stage_}) v->resize(n);
}

// out = dt · P[−|v|^{2σ} v_x]^, P the dealiasing projection
void Integrator::nonlinear(const cvec& v_hat, cvec& out) {
  const Spectral sp(grid_);
  const std::size_t n = v_hat.size();
  sp.backward(v_hat, u_);
  for (std::size_t j = 0; j < n; ++j) tmp_[j] = v_hat[j] * cplx(0.0, ik_[j]);
  sp.backward(tmp_, ux_);
  for (std::size_t j = 0; j < n; ++j) {
    const double a2 = std::norm(u_[j]);
    const double pw = a2 > 0.0 ? std::exp(sigma_ * std::log(a2)) : 0.0;
    tmp_[j] = -pw * ux_[j];
  }
  sp.forward(tmp_, out);
  for (std::size_t j = 0; j < n; ++j) out[j] *= mask_[j] * dt_;
}

void Integrator::advance(cvec& u_hat) {
  const std::size_t n = u_hat.size();
  // Lawson form with E = e^{−ik²dt/2}:
  //   a = dt N(û), b = dt N(E(û + a/2)), c = dt N(Eû + b/2), d = dt N(E²û + Ec),
  //   û ← E²û + (E²a + 2E(b + c) + d)/6.
  nonlinear(u_hat, a_);
  for (std::size_t j = 0; j < n; ++j) stage_[j] = half_[j] * (u_hat[j] + 0.5 * a_[j]);
  nonlinear(stage_, b_);
  for (std::size_t j = 0; j < n; ++j) stage_[j] = half_[j] * u_hat[j] + 0.5 * b_[j];
  nonlinear(stage_, c_);
  for (std::size_t j = 0; j < n; ++j) stage_[j] = half_[j] * (half_[j] * u_hat[j] + c_[j]);
  nonlinear(stage_, d_);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx e = half_[j];
    const cplx e2 = e * e;
    u_hat[j] = e2 * u_hat[j] + (e2 * a_[j] + 2.0 * e * (b_[j] + c_[j]) + d_[j]) / 6.0;
  }
}

double Integrator::cfl_limit(const cvec& u, double cfl) const {
  double peak = 0.0;
  for (const auto& v : u) peak = std::max(peak, std::norm(v));
  const double rate = std::exp(sigma_ * std::log(std::max(peak, 1e-300))) * k_max_;
  return rate > 0.0 ? cfl / rate : std::numeric_limits<double>::infinity();
}

namespace {

int substeps_for(double dt, double limit) {
  if (!(dt > limit)) return 1;
  const double n = std::ceil(dt / limit);
  if (n > 1e6) throw BlowupError("nonlinear CFL bound requires more than 10^6 substeps");
  return static_cast<int>(n);
}

void require_finite(const cvec& v, double t) {
  for (const auto& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw BlowupError("non-finite field at t = " + std::to_string(t));
}

}  // namespace

SimState step(const SimState& state, const SimConfig& config) {
  config.validate();
  const Grid& grid = state.field.grid;
  const Spectral sp(grid);
  const Integrator probe(config.sigma, grid, config.dt, config.dealias);
  const int n = substeps_for(config.dt, probe.cfl_limit(state.field.values, config.cfl));
  Integrator integ(config.sigma, grid, config.dt / n, config.dealias);

  cvec hat = sp.forward(state.field.values);
  for (int i = 0; i < n; ++i) integ.advance(hat);
  require_finite(hat, state.t + config.dt);

  SimState next{state.t + config.dt, ComplexField(grid, sp.backward(hat)), {}, 0.0};
  next.ledger = ledger(next.field, config.sigma, next.t);
  if (config.omega.admissible()) {
    try {
      const auto p = sample_profile(config.sigma, config.omega, grid);
      next.orbital_distance = orbital_distance(next.field, p).distance;
    } catch (const GridTooSmallError&) {
      next.orbital_distance = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return next;
}

// ---------------------------------------------------------------------------
// Experiment driver

ComplexField initial_data(const SimConfig& config, const SolitonProfile& p, std::array<double, 2>* direction_used) {
  ComplexField u = p.field;
  const auto& pert = config.perturbation;
  const double lambda = pert.sign * pert.amplitude;
  switch (pert.kind) {
    case PerturbationKind::none:
      break;
    case PerturbationKind::psi_hat_ray: {
      auto xi = pert.direction;
      if (xi[0] == 0.0 && xi[1] == 0.0) xi = zero_eigenvector(config.sigma, config.omega);
      if (direction_used) *direction_used = xi;
      if (lambda != 0.0) u += lambda * parameter_derivative(config.sigma, config.omega, xi, 0.0, p.grid);
      break;
    }
    case PerturbationKind::random_h1: {
      // Smooth random field under the soliton envelope, unit H¹ norm.
      std::mt19937_64 rng(pert.seed);
      std::normal_distribution<double> normal;
      const Spectral sp(p.grid);
      cvec hat(p.grid.points());
      for (std::size_t j = 0; j < hat.size(); ++j) {
        const double k = p.grid.wavenumber(j);
        const double re = normal(rng);
        const double im = normal(rng);
        hat[j] = cplx(re, im) * std::exp(-0.125 * k * k);
      }
      ComplexField v(p.grid, sp.backward(hat));
      const double peak = *std::max_element(p.amplitude.begin(), p.amplitude.end());
      for (std::size_t j = 0; j < v.size(); ++j) v[j] *= p.amplitude[j] / peak;
      const double norm = h1_norm(v);
      if (norm > 0.0 && lambda != 0.0) u += (lambda / norm) * v;
      break;
    }
  }
  return u;
}

namespace {

double relative(double now, double start) {
  const double scale = std::abs(start);
  return scale > 0.0 ? (now - start) / scale : now - start;
}

}  // namespace

OrbitalTrace run_experiment(const SimConfig& config) {
  config.validate();
  const Grid& grid = config.grid;
  const auto profile = sample_profile(config.sigma, config.omega, grid);
  const Spectral sp(grid);

  OrbitalTrace trace;
  ComplexField u = initial_data(config, profile, &trace.direction);
  require_finite(u.values, 0.0);
  trace.initial = ledger(u, config.sigma, 0.0);

  const double band = config.boundary_fraction;
  auto record = [&](const ComplexField& field, double t) {
    const auto fit = orbital_distance(field, profile);
    const auto now = ledger(field, config.sigma, t);
    TraceRow row{t,
                 fit.distance,
                 fit.s0,
                 fit.s1,
                 relative(now.energy, trace.initial.energy),
                 relative(now.q0, trace.initial.q0),
                 relative(now.q1, trace.initial.q1)};
    trace.max_energy_drift = std::max(trace.max_energy_drift, std::abs(row.energy_drift));
    trace.max_q0_drift = std::max(trace.max_q0_drift, std::abs(row.q0_drift));
    trace.max_q1_drift = std::max(trace.max_q1_drift, std::abs(row.q1_drift));
    trace.rows.push_back(row);

    // Mass within `band`·L of the boundary, measured from the soliton centre.
    const Grid& g = field.grid;
    double edge = 0.0;
    for (std::size_t j = 0; j < field.size(); ++j) {
      const double d = std::abs(wrap_shift(g.x(j) - fit.s1, g.length()));
      if (d > (0.5 - band) * g.length()) edge += std::norm(field[j]);
    }
    edge *= 0.5 * g.spacing();
    if (edge > config.boundary_mass_limit)
      throw BoundaryContaminationError("mass " + std::to_string(edge) + " near the periodic boundary at t = " +
                                       std::to_string(t));
    return row;
  };

  trace.initial_distance = record(u, 0.0).distance;
  if (trace.initial_distance > config.tube_epsilon) {
    trace.exit_time = 0.0;
    if (config.stop_on_exit) return trace;
  }

  std::map<int, Integrator> integrators;
  auto integrator = [&](int substeps) -> Integrator& {
    auto it = integrators.find(substeps);
    if (it == integrators.end())
      it = integrators.emplace(substeps, Integrator(config.sigma, grid, config.dt / substeps, config.dealias)).first;
    return it->second;
  };

  const auto total = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
  cvec hat = sp.forward(u.values);
  ConservedLedger last = trace.initial;
  std::size_t done = 0;
  while (done < total) {
    const std::size_t block = std::min<std::size_t>(config.sample_every, total - done);
    const Integrator& base = integrator(1);
    int substeps = substeps_for(config.dt, base.cfl_limit(u.values, config.cfl));

    cvec trial;
    ComplexField field(grid);
    ConservedLedger now;
    for (int attempt = 0;; ++attempt) {
      trial = hat;
      Integrator& integ = integrator(substeps);
      for (std::size_t i = 0; i < block; ++i) {
        for (int k = 0; k < substeps; ++k) integ.advance(trial);
        require_finite(trial, config.dt * static_cast<double>(done + i + 1));
      }
      field = ComplexField(grid, sp.backward(trial));
      now = ledger(field, config.sigma);
      const double jump = std::max(std::abs(relative(now.energy, last.energy)), std::abs(relative(now.q0, last.q0)));
      if (jump <= config.spike_tolerance) break;
      if (attempt == 4) throw BlowupError("conserved quantities jump by " + std::to_string(jump) +
                                          " even with " + std::to_string(substeps) + " substeps");
      substeps *= 2;
      ++trace.retries;
    }

    hat = std::move(trial);
    u = std::move(field);
    last = now;
    done += block;
    trace.steps = done;
    const double t = config.dt * static_cast<double>(done);
    const auto row = record(u, t);
    if (row.distance > config.tube_epsilon) {
      trace.exit_time = t;
      if (config.stop_on_exit) break;
    }
  }
  return trace;
}

}  // namespace gdnls
