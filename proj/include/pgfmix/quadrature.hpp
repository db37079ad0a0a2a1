#pragma once

#include <functional>

namespace pgfmix {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// Adaptive bisection over [a, b] with a 10-point Gauss-Legendre rule per
// panel. A panel is accepted when the rule on the panel and the sum of the
// rule on its two halves agree to within that panel's share of `abs_tol`.
// Throws numeric_failure if `max_depth` bisections do not reach the target.
QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                         double b, double abs_tol, int max_depth = 60);

} // namespace pgfmix
