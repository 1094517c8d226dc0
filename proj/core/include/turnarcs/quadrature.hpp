#pragma once

#include <functional>
#include <span>

namespace turnarcs {

struct QuadratureResult {
  double value;
  double error_estimate;
};

struct QuadratureTolerance {
  double absolute = 1e-10;
  double relative = 1e-10;
};

// Adaptive Gauss-Kronrod over [a, b] split at the given interior breakpoints
// (which must be sorted and inside the interval). Throws QuadratureError,
// carrying the achieved estimate, when neither tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           QuadratureTolerance tol, std::span<const double> breakpoints = {});

// Same, over `panels` equal-width subintervals.
QuadratureResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                                  int panels, QuadratureTolerance tol);

}  // namespace turnarcs
