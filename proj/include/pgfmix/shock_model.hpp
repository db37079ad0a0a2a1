#pragma once

#include <vector>

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/sdfr.hpp"
#include "pgfmix/sequence.hpp"

namespace pgfmix {

// Shocks arrive as a homogeneous Poisson process with intensity `lambda`;
// the device fails at the J-th shock.
struct ShockModelParams {
    double lambda = 1.0;
    double series_tol = 1e-12;    // bound on the dropped Poisson tail mass
    std::vector<double> time_grid; // sorted, non-negative

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Smallest K such that the Chernoff bound exp(-mu) (e mu / K)^K on
// P(Poisson(mu) >= K) is below `tol`; the series is summed over k < K.
int poisson_truncation(double mu, double tol);

// Survival S(t) = sum_k P_k exp(-lambda t) (lambda t)^k / k! of the shock
// model built from a validated tail sequence. The tail is converted to
// doubles once; evaluation is cheap and thread-compatible.
class ShockModel {
public:
    // Throws std::invalid_argument if `tail` is not a valid tail.
    ShockModel(const TailSequence& tail, ShockModelParams params);

    // Throws std::invalid_argument if t < 0 or the tail is too short for
    // the truncation order required at t.
    double survival(double t) const;
    std::vector<double> survival_on_grid() const;

    const ShockModelParams& params() const { return params_; }
    int tail_order() const { return static_cast<int>(tail_.size()) - 1; }

private:
    std::vector<double> tail_;
    ShockModelParams params_;
};

double survival(const TailSequence& tail, const ShockModelParams& params, double t);

// Laplace-Stieltjes transform of the failure time, L(s) = phi(lambda / (lambda + s)).
double laplace(const MixingDistribution& q, double lambda, double s, double tol = 1e-12);

// Exponential-mixture survival: integral of exp(-theta t) against a rate
// measure g (no mass at rate 0).
double exp_mixture_survival(const MixingDistribution& g, double t);

// Rate measure of the shock model with mixing measure q: theta = lambda y.
MixingDistribution rate_mixture_from_mixing(const MixingDistribution& q, double lambda);

// Rate measure theta = lambda (1 - p) for a tail sequence that is the moment
// sequence of f on [0, 1]. Throws if f has mass outside [0, 1] or an atom
// at p = 1 (which would put mass at rate 0).
MixingDistribution rate_mixture_from_moment_measure(const MixingDistribution& f, double lambda);

// Complete monotonicity of the skeleton u_n = S(n delta), n = 0..points-1,
// up to difference order `max_order` (points defaults to max_order + 11).
// Tolerance defaults to 1e-9 * max |u_n|.
CmVerdict sdfr_skeleton_check(const TailSequence& tail, const ShockModelParams& params,
                              double delta, int max_order, int points = 0);

} // namespace pgfmix
