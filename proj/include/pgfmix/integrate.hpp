#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/rational.hpp"

namespace pgfmix {

namespace integrand {

// H(y, z) = z y / (1 - z + z y), z in (0, 1).
struct PgfKernel {
    double z;
};

// (1 - y)^k, k >= 0.
struct PowerOfA {
    int k;
};

// 1 / y
struct Reciprocal {};

// y
struct Identity {};

// exp(-y t), t >= 0.
struct ExpDecay {
    double t;
};

// Piecewise-linear interpolation through (x[i], f[i]); x strictly increasing.
// The support of the measure must lie inside [x.front(), x.back()].
struct Tabulated {
    std::vector<double> x;
    std::vector<double> f;
};

} // namespace integrand

using IntegrandSpec = std::variant<integrand::PgfKernel, integrand::PowerOfA,
                                   integrand::Reciprocal, integrand::Identity,
                                   integrand::ExpDecay, integrand::Tabulated>;

struct Integral {
    double value = 0.0; // +inf when diverges
    bool diverges = false;
    std::optional<Rational> exact;

    bool is_exact() const { return exact.has_value(); }
};

struct IntegrateOptions {
    double tol = 1e-12;
    // Skip closed forms and exact arithmetic on density segments.
    bool force_quadrature = false;
};

// Integral of f against q. Atoms are summed exactly. Density segments use the
// closed-form antiderivative for PowerOfA, Identity and ExpDecay, and adaptive
// quadrature otherwise. The result is exact when q is exact and the kind is
// PowerOfA or Identity (or Reciprocal on an atoms-only q).
//
// Reciprocal against a density segment that starts at 0 is reported as
// divergent, not integrated.
//
// Throws std::invalid_argument for tol <= 0 or parameters outside their domain.
Integral integrate(const MixingDistribution& q, const IntegrandSpec& f,
                   const IntegrateOptions& options = {});

// Integral of an arbitrary bounded function; quadrature on every segment.
double integrate_function(const MixingDistribution& q, const std::function<double(double)>& f,
                          double tol = 1e-12);

} // namespace pgfmix
