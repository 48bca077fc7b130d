#pragma once

#include <functional>

#include "gdnls/params.hpp"

namespace gdnls {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // quadrature estimate plus certified tail bound
  double y_max = 0.0;
};

/// Integration length for an integrand dominated by (cosh y − z)^{−p}.
double truncation_length(double p, const QuadratureSpec& spec);

/// Analytic bound on ∫_Y^∞ (cosh y − z)^{−p} dy, valid for Y ≥ ln 4.
double cosh_power_tail(double p, double z, double y);

/// ∫₀^∞ f(y) dy for integrands with |f(y)| ≤ tail_scale·(cosh y − z)^{−p}
/// beyond the truncation point. Panels are graded toward y = 0 on the
/// scale √(1−z), where the integrand sharpens as z → 1.
///
/// Throws ConvergenceError when the estimate exceeds the tolerance.
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double p, double z,
                                     double tail_scale, const QuadratureSpec& spec);

/// (cosh y − z) evaluated without cancellation near y = 0, z = 1.
double cosh_minus(double y, double z);

}  // namespace gdnls
