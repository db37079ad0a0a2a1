#include "pgfmix/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "pgfmix/errors.hpp"

namespace pgfmix {

namespace {

// Positive nodes and weights of the 10-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kNodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
constexpr std::array<double, 5> kWeights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

double gauss10(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
        const double dx = half * kNodes[i];
        sum += kWeights[i] * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

constexpr long kMaxRefinements = 1L << 20;

struct Adaptive {
    const std::function<double(double)>& f;
    double tol_density; // absolute tolerance per unit length
    int max_depth;
    int panels = 0;
    long refinements = 0;
    double error = 0.0;

    double refine(double a, double b, double whole, int depth) {
        if (++refinements > kMaxRefinements) {
            throw numeric_failure("quadrature: refinement budget exhausted");
        }
        const double mid = 0.5 * (a + b);
        const double left = gauss10(f, a, mid);
        const double right = gauss10(f, mid, b);
        const double halves = left + right;
        const double diff = std::abs(halves - whole);
        if (!std::isfinite(halves)) {
            throw numeric_failure("quadrature: non-finite integrand value");
        }
        if (diff <= tol_density * (b - a) || mid <= a || mid >= b) {
            ++panels;
            error += diff;
            return halves;
        }
        if (depth >= max_depth) {
            throw numeric_failure("quadrature: no convergence within the bisection limit");
        }
        return refine(a, mid, left, depth + 1) + refine(mid, b, right, depth + 1);
    }
};

} // namespace

QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                         double b, double abs_tol, int max_depth) {
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("quadrature: tolerance must be positive");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("quadrature: bounds must be finite");
    }
    if (a == b) {
        return {};
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    Adaptive state{f, abs_tol / (b - a), max_depth};
    const double value = state.refine(a, b, gauss10(f, a, b), 0);
    return {sign * value, state.error, state.panels};
}

} // namespace pgfmix
