#include "gdnls/moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "gdnls/errors.hpp"
#include "gdnls/finite_difference.hpp"
#include "gdnls/functionals.hpp"
#include "gdnls/profile.hpp"

namespace gdnls {

namespace {

constexpr double kBranchTolerance = 1e-5;
constexpr double kDegenerateLineTolerance = 1e-9;

// d(ω) on a fixed grid, memoized over the stencil points of one oracle call.
class DOracle {
 public:
  DOracle(const Sigma& sigma, const Grid& grid) : sigma_(sigma), grid_(grid) {}

  double operator()(double w0, double w1) {
    const auto key = std::make_pair(w0, w1);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Omega w{w0, w1};
    if (!w.admissible()) throw DomainError("finite-difference stencil leaves the admissible set");
    const double v = d_value(sigma_, w, grid_);
    cache_.emplace(key, v);
    return v;
  }

 private:
  Sigma sigma_;
  Grid grid_;
  std::map<std::pair<double, double>, double> cache_;
};

struct ClosedInputs {
  double s, w0, w1, r, k2, scale, a0, a1;
};

ClosedInputs closed_inputs(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  omega.require_admissible();
  const double k = kappa(omega);
  const auto [a0, a1] = alpha_moments(sigma, omega, spec);
  return {sigma.value(), omega.omega0, omega.omega1, std::sqrt(omega.omega0), k * k,
          hessian_scale(sigma, omega), a0, a1};
}

}  // namespace

SymEigen2 eigen_decompose(const Sym2& m) {
  const double mean = 0.5 * (m.a00 + m.a11);
  const double radius = std::hypot(0.5 * (m.a00 - m.a11), m.a01);
  SymEigen2 out{};
  // The eigenvalue of larger magnitude is cancellation-free; the other follows from det.
  const double big = mean >= 0.0 ? mean + radius : mean - radius;
  const double small = big != 0.0 ? m.det() / big : 0.0;
  out.values = {std::min(big, small), std::max(big, small)};
  for (int i = 0; i < 2; ++i) {
    const double lam = out.values[i];
    std::array<double, 2> u{m.a01, lam - m.a00};
    std::array<double, 2> v{lam - m.a11, m.a01};
    auto& pick = std::hypot(u[0], u[1]) >= std::hypot(v[0], v[1]) ? u : v;
    double n = std::hypot(pick[0], pick[1]);
    if (n == 0.0) {
      pick = i == 0 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
      n = 1.0;
    }
    out.vectors[i] = {pick[0] / n, pick[1] / n};
  }
  if (radius == 0.0) out.vectors = {{{1.0, 0.0}, {0.0, 1.0}}};
  return out;
}

double spectral_norm(const Sym2& m) {
  const auto e = eigen_decompose(m);
  return std::max(std::abs(e.values[0]), std::abs(e.values[1]));
}

double hessian_scale(const Sigma& sigma, const Omega& omega) {
  return kappa_tilde(sigma, omega) * std::pow(2.0, -2.0 / sigma.value());
}

Sym2 hessian_closed(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  const auto c = closed_inputs(sigma, omega, spec);
  Sym2 h;
  h.a00 = c.scale / c.r * (2.0 * c.w1 * c.w1 - 8.0 * (c.s - 1.0) * c.w0) * c.a0 - c.scale / c.w0 * c.k2 * c.w1 * c.a1;
  h.a01 = 4.0 * c.scale * c.w1 * (c.s - 2.0) * c.r * c.a0 + 2.0 * c.scale * c.k2 * c.a1;
  h.a11 = c.w0 * h.a00;
  return h;
}

Sym2 hessian_fd(const Sigma& sigma, const Omega& omega, const Grid& grid, double h) {
  omega.require_admissible();
  DOracle d(sigma, grid);
  auto f = [&d](double a, double b) { return d(a, b); };
  Sym2 out;
  out.a00 = fd::partial(f, omega.omega0, omega.omega1, 2, 0, h);
  out.a01 = fd::partial(f, omega.omega0, omega.omega1, 1, 1, h);
  out.a11 = fd::partial(f, omega.omega0, omega.omega1, 0, 2, h);
  return out;
}

ThirdPartials third_partials(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  const auto c = closed_inputs(sigma, omega, spec);
  const Sym2 h = hessian_closed(sigma, omega, spec);
  ThirdPartials t{};
  t.d001 = 2.0 * c.w1 * c.scale * c.a0 / (c.s * c.k2 * c.r) *
               (4.0 * (2.0 - 3.0 * c.s) * (c.s - 2.0) * c.w0 - (c.s - 1.0) * c.k2) +
           c.scale * c.a1 / (c.s * c.w0) * (4.0 * (2.0 - c.s) * c.w0 - 2.0 * c.s * c.w1 * c.w1 - (1.0 + c.s) * c.k2);
  t.d011 = 4.0 * c.r * c.scale * c.a0 / (c.s * c.k2) *
               ((3.0 * c.s - 2.0) * (c.s - 2.0) * c.w1 * c.w1 + (c.s - 1.0) * (c.s - 1.0) * c.k2) +
           2.0 * (3.0 * c.s - 2.0) * c.w1 * c.scale * c.a1 / c.s;
  t.d000 = (t.d011 - h.a00) / c.w0;
  t.d111 = c.w0 * t.d001;
  return t;
}

ThirdPartials third_partials_fd(const Sigma& sigma, const Omega& omega, const Grid& grid, double h) {
  omega.require_admissible();
  DOracle d(sigma, grid);
  auto f = [&d](double a, double b) { return d(a, b); };
  const double w0 = omega.omega0;
  const double w1 = omega.omega1;
  return {fd::partial(f, w0, w1, 3, 0, h), fd::partial(f, w0, w1, 2, 1, h), fd::partial(f, w0, w1, 1, 2, h),
          fd::partial(f, w0, w1, 0, 3, h)};
}

Grid oracle_grid(const Sigma& sigma, const Omega& omega) {
  const Grid base = default_grid(sigma, omega);
  const double length = 1.25 * base.length();
  const double width = analyticity_width(sigma, omega);
  std::size_t n = base.points();
  while (width * std::numbers::pi * static_cast<double>(n) / length < 25.0) n *= 2;
  return Grid(length, n);
}

bool is_degenerate(const Sym2& hessian) {
  const double norm = spectral_norm(hessian);
  return std::abs(hessian.det()) <= kDegeneracyTolerance * norm * norm;
}

std::array<double, 2> zero_eigenvector(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  sigma.require_open(1.0, 2.0, "zero_eigenvector");
  const Sym2 h = hessian_closed(sigma, omega, spec);
  if (!is_degenerate(h)) {
    std::ostringstream msg;
    msg << "Hessian is not degenerate at omega=(" << omega.omega0 << ", " << omega.omega1 << "): det=" << h.det();
    throw NotDegenerateError(msg.str());
  }
  const std::array<double, 2> xi{-omega.omega0 * h.a00, h.a01};
  if (xi[0] == 0.0 && xi[1] == 0.0) throw ZeroVectorError("zero eigenvector vanishes identically");
  return xi;
}

std::string to_string(Branch b) { return b == Branch::minus ? "minus" : "plus"; }

BranchInfo branch_detect(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  sigma.require_open(1.0, 2.0, "branch_detect");
  const Sym2 h = hessian_closed(sigma, omega, spec);
  if (!is_degenerate(h)) throw NotDegenerateError("branch_detect requires a degenerate Hessian");
  const double r = std::sqrt(omega.omega0);
  const double target = omega.omega0 * h.a00 * h.a00;
  BranchInfo info{};
  info.squared_identity_residual = target == 0.0 ? 0.0 : std::abs(h.a01 * h.a01 - target) / target;
  if (!(info.squared_identity_residual <= kBranchTolerance)) {
    std::ostringstream msg;
    msg << "squared branch identity fails: residual " << info.squared_identity_residual;
    throw InconsistentBranchError(msg.str());
  }
  const double scale = std::abs(r * h.a00);
  if (std::abs(h.a01 + r * h.a00) <= kBranchTolerance * scale) {
    info.branch = Branch::minus;
  } else if (std::abs(h.a01 - r * h.a00) <= kBranchTolerance * scale) {
    info.branch = Branch::plus;
  } else {
    throw InconsistentBranchError("neither branch relation holds");
  }
  return info;
}

double third_directional(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  const BranchInfo b = branch_detect(sigma, omega, spec);
  const Sym2 h = hessian_closed(sigma, omega, spec);
  const ThirdPartials t = third_partials(sigma, omega, spec);
  const double r = std::sqrt(omega.omega0);
  const double sign = b.branch == Branch::minus ? -1.0 : 1.0;
  const double bracket = -4.0 * t.d011 + sign * 4.0 * r * t.d001 + h.a00;
  return omega.omega0 * omega.omega0 * h.a00 * h.a00 * h.a00 * bracket;
}

double third_directional_contracted(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec) {
  const auto xi = zero_eigenvector(sigma, omega, spec);
  const ThirdPartials t = third_partials(sigma, omega, spec);
  const double a = xi[0];
  const double b = xi[1];
  return a * a * a * t.d000 + 3.0 * a * a * b * t.d001 + 3.0 * a * b * b * t.d011 + b * b * b * t.d111;
}

double reduced_bracket(const Sigma& sigma, const Omega& omega, Branch branch, const QuadratureSpec& spec) {
  const double s = sigma.value();
  const double z = omega.z();
  const double a0 = alpha_n(sigma, omega, 0, spec);
  const double lead = 8.0 * std::sqrt(omega.omega0) * hessian_scale(sigma, omega) * a0 / (s * (1.0 - z * z));
  const double tail = branch == Branch::minus ? (z - 1.0) * (z - 1.0) * (z + 1.0) : (z + 1.0) * (z + 1.0) * (z - 1.0);
  return lead * s * (s - 1.0) * tail;
}

double third_directional_fd(const Sigma& sigma, const Omega& omega, std::array<double, 2> xi, const Grid& grid,
                            double omega_step) {
  const double norm = std::hypot(xi[0], xi[1]);
  if (norm == 0.0) throw ZeroVectorError("third_directional_fd needs a nonzero direction");
  DOracle d(sigma, grid);
  auto ray = [&](double lambda) { return d(omega.omega0 + lambda * xi[0], omega.omega1 + lambda * xi[1]); };
  return fd::derivative(ray, 0.0, 3, omega_step / norm);
}

HessianReport hessian_report(const Sigma& sigma, const Omega& omega, const QuadratureSpec& spec,
                             std::optional<Grid> grid) {
  const Grid g = grid ? *grid : oracle_grid(sigma, omega);
  const SolitonProfile p = sample_profile(sigma, omega, default_grid(sigma, omega));
  HessianReport r{sigma, omega, {mass(p.field), momentum(p.field)}, {}, {}, 0.0, {}, 0.0, 0.0};
  r.hessian = hessian_closed(sigma, omega, spec);
  r.hessian_fd = hessian_fd(sigma, omega, g);
  r.det = r.hessian.det();
  r.eigen = eigen_decompose(r.hessian);
  r.f_value = f_sigma(sigma, omega.z(), spec);
  const double norm = spectral_norm(r.hessian);
  r.fd_residual = std::max({std::abs(r.hessian.a00 - r.hessian_fd.a00), std::abs(r.hessian.a01 - r.hessian_fd.a01),
                            std::abs(r.hessian.a11 - r.hessian_fd.a11)}) /
                  norm;
  return r;
}

bool DegeneracyReport::invariants_hold() const noexcept {
  return kernel_residual <= 1e-6 && fd_relative_error <= 1e-4 && nu != 0.0 && squared_identity_residual <= 1e-5;
}

DegeneracyReport degeneracy_report(const Sigma& sigma, double omega0, const QuadratureSpec& spec,
                                   std::optional<Grid> grid) {
  if (!(sigma.value() < 2.0)) sigma.require_open(1.0, 2.0, "degeneracy_report");
  if (!(omega0 > 0.0)) throw DomainError("degeneracy_report requires omega0 > 0");
  const Z0Result root = find_z0(sigma, spec);
  const Omega star{omega0, 2.0 * root.z0 * std::sqrt(omega0)};

  DegeneracyReport r{sigma, omega0, root.z0, root.f_residual, star, {}, {}, {}, Branch::minus,
                     0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, false};
  r.hessian = hessian_closed(sigma, star, spec);
  r.eigen = eigen_decompose(r.hessian);
  r.xi = zero_eigenvector(sigma, star, spec);
  const BranchInfo b = branch_detect(sigma, star, spec);
  r.branch = b.branch;
  r.squared_identity_residual = b.squared_identity_residual;
  r.nu = third_directional(sigma, star, spec);
  r.nu_contracted = third_directional_contracted(sigma, star, spec);
  const double d00 = r.hessian.a00;
  r.nu_reduced = omega0 * omega0 * d00 * d00 * d00 * reduced_bracket(sigma, star, r.branch, spec);

  const Grid g = grid ? *grid : oracle_grid(sigma, star);
  r.nu_fd = third_directional_fd(sigma, star, r.xi, g, 1e-2 * std::sqrt(omega0));

  const auto hx = r.hessian.apply(r.xi);
  r.kernel_residual = std::hypot(hx[0], hx[1]) / (spectral_norm(r.hessian) * std::hypot(r.xi[0], r.xi[1]));
  r.fd_relative_error = std::abs(r.nu - r.nu_fd) / std::abs(r.nu);
  r.reduced_relative_error = std::abs(r.nu - r.nu_reduced) / std::abs(r.nu);
  r.energy_is_c3 = sigma.value() >= 1.5;
  return r;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::degenerate_unstable: return "degenerate-unstable";
    case Stability::degenerate: return "degenerate";
  }
  return "unknown";
}

StabilityRow classify(const Sigma& sigma, const Omega& omega, std::optional<double> z0, const QuadratureSpec& spec) {
  omega.require_admissible();
  const double s = sigma.value();
  const double z = omega.z();
  StabilityRow row{s, omega.omega0, omega.omega1, hessian_closed(sigma, omega, spec).det(),
                   std::abs(z) <= kMaxAbsZ ? f_sigma(sigma, z, spec) : std::nan(""), Stability::stable};
  if (s == 1.0) {
    row.classification = Stability::stable;
  } else if (s >= 2.0) {
    row.classification = Stability::unstable;
  } else {
    if (!z0) throw DomainError("classify needs z0 for 1 < sigma < 2");
    if (std::abs(z - *z0) <= kDegenerateLineTolerance) {
      row.classification = s >= 1.5 ? Stability::degenerate_unstable : Stability::degenerate;
    } else {
      row.classification = z < *z0 ? Stability::stable : Stability::unstable;
    }
  }
  return row;
}

}  // namespace gdnls
