#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pgfmix/mixing_distribution.hpp"

namespace pgfmix {

// How the number of shocks J is sampled beyond the tabulated tail order K.
enum class TailModel {
    none,      // residual mass P(J > K) must be at most 1e-6
    geometric, // P(J > k) = P_K r^(k - K), r = P_K / P_{K-1}
    harmonic,  // P(J > k) = P_K (K + 1) / (k + 1)
};

inline constexpr double kMaxUnmodelledTailMass = 1e-6;

struct FailureSimulationConfig {
    double lambda = 1.0;
    std::vector<double> time_grid;
    std::size_t replicates = 100000;
    std::uint64_t seed = 1;
    int tail_order = 200;
    TailModel tail_model = TailModel::none;
    unsigned workers = 1;
};

struct PointEstimate {
    double at = 0.0; // t or z
    double estimate = 0.0;
    double std_error = 0.0;
};

struct FailureSimulationResult {
    std::vector<PointEstimate> survival; // one per time_grid point
    double mean_failure_time = 0.0;
    double mean_std_error = 0.0;
    double residual_tail_mass = 0.0; // P(J > K)
};

// Monte Carlo of the shock model: J is drawn by inverting the tail sequence
// of q (tail model beyond K), then the failure time is the J-th arrival of a
// Poisson(lambda) process, i.e. Gamma(J, 1/lambda).
//
// Replicates are processed in fixed blocks, each with its own SplitMix64
// stream derived from (seed, block), and reduced in block order, so the
// result does not depend on `workers`.
//
// Throws std::invalid_argument for invalid tails, an undeclared residual
// tail mass above 1e-6, or a declared tail model that misfits the true tail
// by more than 1e-6.
FailureSimulationResult simulate_failure_times(const MixingDistribution& q,
                                               const FailureSimulationConfig& config);

struct DeFinettiConfig {
    std::vector<double> z_grid;
    std::size_t replicates = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

// Exchangeable-coin construction: y ~ q on (0, 1], then N is the index of the
// first success among independent flips with success probability y (drawn by
// geometric inversion). Returns the empirical mean of z^N for each z.
// Throws std::invalid_argument if q has mass outside (0, 1].
std::vector<PointEstimate> simulate_de_finetti(const MixingDistribution& q,
                                               const DeFinettiConfig& config);

} // namespace pgfmix
