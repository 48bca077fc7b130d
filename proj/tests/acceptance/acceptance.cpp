// Acceptance gate: one PASS/FAIL line per criterion with the measured
// quantities and the wall time against its budget. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gdnls/errors.hpp"
#include "gdnls/functionals.hpp"
#include "gdnls/linearized.hpp"
#include "gdnls/moments.hpp"
#include "gdnls/simulator.hpp"
#include "gdnls/spectral.hpp"

using namespace gdnls;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records `value <= bound` under `name`, keeping the worst value.
  void bound(const char* name, double value, double limit) {
    if (!(value <= limit)) pass = false;
    detail << name << "=" << value << (value <= limit ? " " : " (> bound) ");
  }
  void require(const char* name, bool ok) {
    if (!ok) pass = false;
    detail << name << "=" << (ok ? "yes " : "NO ");
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double max_rel(const Sym2& got, const Sym2& want) {
  return std::max({rel(got.a00, want.a00), rel(got.a01, want.a01), rel(got.a11, want.a11)});
}

void special_values(Outcome& o) {
  const auto a = alpha_moments(Sigma(1.0), {1.0, 0.0});
  o.bound("|alpha0-pi/4|", std::abs(a.alpha0 - std::numbers::pi / 4), 1e-10);
  o.bound("|alpha1-1/2|", std::abs(a.alpha1 - 0.5), 1e-10);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double z = -0.99 + 1.98 * i / 49.0;
    worst = std::max(worst, std::abs(f_sigma(Sigma(1.0), z) + 1.0));
  }
  o.bound("max|F1+1|", worst, 1e-8);
}

void root_structure(Outcome& o) {
  double worst = 0.0;
  bool single = true;
  for (double s : {1.2, 1.5, 1.8}) {
    const auto r = find_z0(Sigma(s));
    worst = std::max(worst, std::abs(f_sigma(Sigma(s), r.z0)));
    single = single && scan_f_sigma(Sigma(s), 100).sign_changes == 1;
  }
  o.bound("max|F(z0)|", worst, 1e-10);
  o.require("one_sign_change", single);
  bool no_root = false;
  try {
    find_z0(Sigma(1.0));
  } catch (const NoRootError&) {
    no_root = true;
  }
  o.require("sigma1_no_root", no_root);
}

void hessian_oracles(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> sig(1.1, 1.9), w0(0.5, 2.0), zz(-0.9, 0.9);
  double fd = 0.0, identity = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Sigma s(sig(rng));
    const double a = w0(rng);
    const Omega w{a, 2.0 * std::sqrt(a) * zz(rng)};
    const Sym2 closed = hessian_closed(s, w);
    fd = std::max(fd, max_rel(hessian_fd(s, w, oracle_grid(s, w)), closed));
    identity = std::max(identity, rel(closed.a11, w.omega0 * closed.a00));
  }
  o.bound("max_rel(closed,fd)", fd, 1e-6);
  o.bound("max_rel(d11,w0*d00)", identity, 1e-10);
  int agree = 0, tested = 0;
  while (tested < 20) {
    const Sigma s(sig(rng));
    const double a = w0(rng);
    const Omega w{a, 2.0 * std::sqrt(a) * zz(rng)};
    const double f = f_sigma(s, w.z());
    if (std::abs(f) <= 1e-4) continue;
    ++tested;
    agree += std::signbit(hessian_closed(s, w).det()) == std::signbit(f);
  }
  o.detail << "sign_agreement=" << agree << "/" << tested << " ";
  if (agree != tested) o.pass = false;
}

void third_oracles(Outcome& o) {
  const Sigma s(1.5);
  const Omega w{1.0, 0.4};
  const auto c = third_partials(s, w);
  const auto f = third_partials_fd(s, w, oracle_grid(s, w));
  o.bound("max_rel(closed,fd)",
          std::max({rel(f.d000, c.d000), rel(f.d001, c.d001), rel(f.d011, c.d011), rel(f.d111, c.d111)}), 1e-4);
  const Sym2 h = hessian_closed(s, w);
  o.bound("rel(d000,(d011-d00)/w0)", rel(c.d000, (c.d011 - h.a00) / w.omega0), 1e-10);
  o.bound("rel(d111,w0*d001)", rel(c.d111, w.omega0 * c.d001), 1e-10);
  o.bound("fd:rel(d000,(d011-d00)/w0)", rel(f.d000, (f.d011 - h.a00) / w.omega0), 1e-4);
  o.bound("fd:rel(d111,w0*d001)", rel(f.d111, w.omega0 * f.d001), 1e-4);
}

void degenerate_line(Outcome& o) {
  double kernel = 0.0, branch = 0.0, fd = 0.0, reduced = 0.0, smallest = INFINITY;
  for (double s : {1.55, 1.6, 1.7, 1.8, 1.9}) {
    for (double w0 : {0.5, 1.0, 2.0}) {
      const auto r = degeneracy_report(Sigma(s), w0);
      kernel = std::max(kernel, r.kernel_residual);
      branch = std::max(branch, r.squared_identity_residual);
      fd = std::max(fd, r.fd_relative_error);
      reduced = std::max(reduced, r.reduced_relative_error);
      smallest = std::min(smallest, std::abs(r.nu));
    }
  }
  o.bound("max_kernel_residual", kernel, 1e-6);
  o.bound("max_branch_residual", branch, 1e-5);
  o.bound("max_rel(nu,nu_fd)", fd, 1e-4);
  o.bound("max_rel(nu,nu_reduced)", reduced, 1e-6);
  o.detail << "min|nu|=" << smallest << " ";
  if (!(smallest > 0.0)) o.pass = false;
}

void profile_and_linearization(Outcome& o) {
  const Sigma s(1.8);
  const Omega w{1.0, 2.0 * find_z0(s).z0};
  const Grid g(default_grid(s, w).length(), 1024);
  const auto p = sample_profile(s, w, g);
  o.bound("stationary_residual", stationary_residual(p), 1e-6);

  const Spectral sp(g);
  const auto gauge = cplx(0.0, 1.0) * p.field;
  const auto trans = -1.0 * sp.derivative(p.field, 1);
  o.bound("kernel(i*phi)", l2_norm(linearized_action(p.field, s, w, gauge)) / l2_norm(gauge), 1e-5);
  o.bound("kernel(-phi')", l2_norm(linearized_action(p.field, s, w, trans)) / l2_norm(trans), 1e-5);

  const auto xi = zero_eigenvector(s, w);
  const auto psi = parameter_derivative(s, w, xi, 0.0, g);
  const auto bphi = apply_B(xi, p.field);
  o.bound("rel(S''psi+B_xi phi)", l2_norm(linearized_action(p.field, s, w, psi) + bphi) / l2_norm(bphi), 1e-4);

  const auto coarse = sample_profile(s, w, default_grid(s, w, 256));
  const auto spec = lowest_spectrum(assemble(coarse), 8);
  int negative = 0, zero = 0;
  for (double e : spec.eigenvalues) {
    negative += e < -1e-3;
    zero += std::abs(e) < 1e-4;
  }
  o.detail << "N_dense=" << coarse.grid.points() << " lowest=" << spec.eigenvalues[0] << "," << spec.eigenvalues[1]
           << "," << spec.eigenvalues[2] << "," << spec.eigenvalues[3] << " ";
  o.require("one_negative", negative == 1);
  o.require("two_zero", zero >= 2);
}

cvec evolve(const Sigma& s, const ComplexField& u, double dt, double t_end) {
  Integrator integ(s, u.grid, dt);
  const Spectral sp(u.grid);
  cvec hat = sp.forward(u.values);
  const auto n = static_cast<int>(std::llround(t_end / dt));
  for (int i = 0; i < n; ++i) integ.advance(hat);
  return sp.backward(hat);
}

void simulator_fidelity(Outcome& o) {
  {  // plane wave, k a grid mode
    const Grid g(2.0 * std::numbers::pi, 64);
    double worst = 0.0;
    for (double sv : {1.0, 1.8}) {
      const double a = 0.5, k = 3.0;
      ComplexField u(g);
      for (std::size_t j = 0; j < 64; ++j) u[j] = a * std::polar(1.0, k * g.x(j));
      const auto v = evolve(Sigma(sv), u, 1e-3, 1.0);
      const double freq = k * k + std::pow(a, 2.0 * sv) * k;
      for (std::size_t j = 0; j < 64; ++j)
        worst = std::max(worst, std::abs(std::arg(v[j] / (a * std::polar(1.0, k * g.x(j) - freq)))));
    }
    o.bound("plane_wave_phase_err", worst, 1e-8);
  }
  {  // soliton translation, stepped as the simulator does (CFL substepping)
    double worst = 0.0;
    for (const auto& [sv, w] : {std::pair{1.5, Omega{1.0, 0.5}}, std::pair{1.8, Omega{1.0, -1.18}}}) {
      SimConfig c;
      c.sigma = Sigma(sv);
      c.omega = w;
      c.grid = default_grid(c.sigma, w);
      c.dt = 5.0;
      const auto p = sample_profile(c.sigma, w, c.grid);
      const auto u = step({0.0, p.field, {}, 0.0}, c).field;
      const auto exact = std::polar(1.0, 5.0 * w.omega0) * Spectral(c.grid).shift(p.field, 5.0 * w.omega1);
      worst = std::max(worst, h1_norm(u - exact));
    }
    o.bound("soliton_H1_err", worst, 1e-5);
  }
  {  // conservation on a perturbed soliton
    SimConfig c;
    c.sigma = Sigma(1.8);
    c.omega = {1.0, 2.0 * find_z0(c.sigma).z0};
    c.grid = Grid(default_grid(c.sigma, c.omega).length(), 1024);
    c.t_end = 20.0;
    c.sample_every = 1000;
    c.perturbation = {PerturbationKind::random_h1, 1e-2, 1, {0.0, 0.0}, 11};
    const auto tr = run_experiment(c);
    o.bound("max_drift", std::max({tr.max_energy_drift, tr.max_q0_drift, tr.max_q1_drift}), 1e-8);
  }
  {  // temporal order from dt-halving (self-convergence)
    const Sigma s(1.0);
    const Omega w{1.0, 0.4};
    const Grid g(default_grid(s, w).length(), 256);
    const auto p = sample_profile(s, w, g);
    ComplexField u0 = p.field;
    for (std::size_t j = 0; j < g.points(); ++j) u0[j] += 0.05 * std::exp(-g.x(j) * g.x(j) / 4.0);
    std::vector<ComplexField> runs;
    for (double dt : {0.04, 0.02, 0.01}) runs.emplace_back(g, evolve(s, u0, dt, 1.0));
    const double order = std::log2(h1_norm(runs[0] - runs[1]) / h1_norm(runs[1] - runs[2]));
    o.detail << "observed_order=" << order << " ";
    if (!(order >= 3.5)) o.pass = false;
  }
}

void instability(Outcome& o) {
  SimConfig c;
  c.sigma = Sigma(1.8);
  c.omega = {1.0, 2.0 * find_z0(c.sigma).z0};
  c.grid = default_grid(c.sigma, c.omega);
  c.dt = 1e-3;
  c.t_end = 600.0;
  c.sample_every = 1000;
  c.tube_epsilon = 0.05;
  c.perturbation = {PerturbationKind::psi_hat_ray, 1e-3, 1, {0.0, 0.0}, 0};
  bool exited = false;
  double drift = 0.0;
  for (int sign : {1, -1}) {
    c.perturbation.sign = sign;
    const auto tr = run_experiment(c);
    o.detail << "exit(lambda=" << (sign > 0 ? "+" : "-") << "1e-3)=";
    if (tr.exit_time) {
      o.detail << *tr.exit_time << " ";
    } else {
      o.detail << "none(d=" << tr.rows.back().distance << ") ";
    }
    exited = exited || tr.exit_time.has_value();
    drift = std::max({drift, tr.max_energy_drift, tr.max_q0_drift, tr.max_q1_drift});
  }
  o.require("exit_sigma1.8", exited);
  o.bound("max_drift", drift, 1e-8);

  // Control: same amplitude along ψ̂ for the unit eigenvector of d″ nearest zero.
  SimConfig ctl = c;
  ctl.sigma = Sigma(1.0);
  ctl.omega = {1.0, 0.4};
  ctl.grid = default_grid(ctl.sigma, ctl.omega);
  ctl.t_end = 50.0;
  const auto e = eigen_decompose(hessian_closed(ctl.sigma, ctl.omega));
  const int k = std::abs(e.values[0]) <= std::abs(e.values[1]) ? 0 : 1;
  ctl.perturbation = {PerturbationKind::psi_hat_ray, 1e-3, 1, e.vectors[k], 0};
  const auto tr = run_experiment(ctl);
  double peak = 0.0;
  for (const auto& r : tr.rows) peak = std::max(peak, r.distance);
  o.detail << "control_max_distance=" << peak << " ";
  o.require("control_inside_tube", !tr.exit_time && peak < ctl.tube_epsilon);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact special values", 1.0, special_values},
      {2, "root structure of F_sigma", 10.0, root_structure},
      {3, "Hessian closed form vs finite differences", 60.0, hessian_oracles},
      {4, "third partials closed form vs finite differences", 60.0, third_oracles},
      {5, "degenerate-line verification", 300.0, degenerate_line},
      {6, "profile and linearized operator", 300.0, profile_and_linearization},
      {7, "simulator fidelity", 600.0, simulator_fidelity},
      {8, "instability demonstration", 1800.0, instability},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    o.detail.precision(3);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what() << " ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail << "(over time budget) ";
    }
    failed += !o.pass;
    std::printf("[%s] %d %s: %s[%.2f s / %.0f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(),
                secs, c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
