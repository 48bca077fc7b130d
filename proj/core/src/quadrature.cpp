#include "gdnls/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "gdnls/errors.hpp"

namespace gdnls {

namespace bq = boost::math::quadrature;

double cosh_minus(double y, double z) {
  const double s = std::sinh(0.5 * y);
  return (1.0 - z) + 2.0 * s * s;
}

double truncation_length(double p, const QuadratureSpec& spec) {
  if (spec.y_max > 0.0) return spec.y_max;
  // (cosh y − z)^{−p} ≤ 4^p e^{−p y} once y ≥ ln 4.
  return std::max(60.0, 2.0 * std::log(1.0 / spec.abs_tol) / p);
}

double cosh_power_tail(double p, double /*z*/, double y) {
  return std::pow(4.0, p) * std::exp(-p * y) / p;
}

namespace {

struct Panel {
  double value;
  double error;
  double l1;
};

// Kronrod-61 on [a, b], error taken as its distance from Kronrod-31; panels
// that miss the tolerance are bisected.
Panel kronrod_panel(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
                    int depth) {
  double l1 = 0.0;
  const double fine = bq::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, nullptr, &l1);
  const double coarse = bq::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0);
  const double err = std::abs(fine - coarse) + 50.0 * std::numeric_limits<double>::epsilon() * l1;
  if (err <= std::max(rel_tol * l1, abs_tol) || depth == 0) return {fine, err, l1};
  const double mid = 0.5 * (a + b);
  const Panel left = kronrod_panel(f, a, mid, rel_tol, 0.5 * abs_tol, depth - 1);
  const Panel right = kronrod_panel(f, mid, b, rel_tol, 0.5 * abs_tol, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

}  // namespace

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double p, double z,
                                     double tail_scale, const QuadratureSpec& spec) {
  spec.validate();
  QuadratureResult out;
  out.y_max = truncation_length(p, spec);
  const double tail = tail_scale * cosh_power_tail(p, z, out.y_max);

  // Near z = 1 the integrand peaks at y = 0 with width √(1−z): grade panels
  // geometrically from there, then use panels of length ≤ 4.
  std::vector<double> breaks{0.0};
  const double w = std::sqrt(std::max(1.0 - z, 0.0));
  for (double b = 0.25 * w; b < 2.0; b *= 2.0) {
    if (b > 1e-9) breaks.push_back(b);
  }
  for (double b = 2.0; b < out.y_max; b += 4.0) {
    if (b > breaks.back()) breaks.push_back(b);
  }
  breaks.push_back(out.y_max);

  const double panel_abs = spec.abs_tol / static_cast<double>(breaks.size());
  double total = 0.0;
  double err = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Panel pn = kronrod_panel(f, breaks[i], breaks[i + 1], spec.rel_tol, panel_abs, spec.max_subdivisions);
    total += pn.value;
    err += pn.error;
    l1 += pn.l1;
  }
  out.value = total;
  out.error = err + tail;
  const double allowed = std::max(spec.abs_tol, spec.rel_tol * l1);
  if (!(out.error <= allowed) || !std::isfinite(total)) {
    std::ostringstream msg;
    msg << "half-line quadrature did not converge: error estimate " << out.error
        << " exceeds tolerance " << allowed << " (p=" << p << ", z=" << z << ")";
    throw ConvergenceError(msg.str());
  }
  return out;
}

}  // namespace gdnls
