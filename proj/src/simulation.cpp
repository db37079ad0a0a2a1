#include "pgfmix/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/random/gamma_distribution.hpp>

#include "pgfmix/integrate.hpp"
#include "pgfmix/pgf.hpp"
#include "pgfmix/random.hpp"
#include "pgfmix/sdfr.hpp"

namespace pgfmix {

namespace {

constexpr std::size_t kBlockSize = 4096;
constexpr double kSumOfExponentialsLimit = 64.0;

// Runs `body(block, rng)` for every block, spread over `workers` threads.
// Each block owns the stream SplitMix64::split(seed, block).
template <class BlockResult, class Body>
std::vector<BlockResult> run_blocks(std::size_t replicates, std::uint64_t seed, unsigned workers,
                                    Body body) {
    const std::size_t blocks = (replicates + kBlockSize - 1) / kBlockSize;
    std::vector<BlockResult> results(blocks);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t b = first; b < blocks; b += stride) {
            const std::size_t begin = b * kBlockSize;
            const std::size_t count = std::min(kBlockSize, replicates - begin);
            SplitMix64 rng = SplitMix64::split(seed, b);
            results[b] = body(count, rng);
        }
    };
    workers = std::max(1U, workers);
    if (workers == 1 || blocks <= 1) {
        work(0, 1);
        return results;
    }
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back(work, w, workers);
    }
    for (auto& t : threads) {
        t.join();
    }
    return results;
}

// Samples J >= 1 by inverting a tabulated tail and the declared model beyond it.
class ShockCountSampler {
public:
    ShockCountSampler(std::vector<double> tail, TailModel model)
        : tail_(std::move(tail)), model_(model) {
        const std::size_t k = tail_.size() - 1;
        if (model_ == TailModel::geometric && k >= 1 && tail_[k - 1] > 0.0) {
            ratio_ = tail_[k] / tail_[k - 1];
        }
    }

    // J = min{k : P_k < u}; P(J > k) = P_k for u uniform on (0, 1).
    double operator()(double u) const {
        const std::size_t order = tail_.size() - 1;
        if (u > tail_[order]) {
            // first index with tail < u
            auto it = std::upper_bound(tail_.begin(), tail_.end(), u, std::greater<>());
            return static_cast<double>(it - tail_.begin());
        }
        const double k = static_cast<double>(order);
        switch (model_) {
        case TailModel::harmonic:
            return std::floor(tail_[order] * (k + 1.0) / u);
        case TailModel::geometric:
            if (ratio_ <= 0.0) {
                return k + 1.0;
            }
            return k + std::floor(std::log(u / tail_[order]) / std::log(ratio_)) + 1.0;
        case TailModel::none:
            break;
        }
        return k + 1.0;
    }

    // Model prediction of P(J > k) for k beyond the table.
    double model_tail(double k) const {
        const std::size_t order = tail_.size() - 1;
        const double kk = static_cast<double>(order);
        switch (model_) {
        case TailModel::harmonic:
            return tail_[order] * (kk + 1.0) / (k + 1.0);
        case TailModel::geometric:
            return tail_[order] * std::pow(ratio_, k - kk);
        case TailModel::none:
            break;
        }
        return 0.0;
    }

private:
    std::vector<double> tail_;
    TailModel model_;
    double ratio_ = 0.0;
};

double gamma_arrival(double shocks, double lambda, SplitMix64& rng) {
    if (shocks <= kSumOfExponentialsLimit) {
        double t = 0.0;
        for (int i = 0; i < static_cast<int>(shocks); ++i) {
            t -= std::log(rng.uniform_open());
        }
        return t / lambda;
    }
    boost::random::gamma_distribution<double> gamma(shocks, 1.0 / lambda);
    return gamma(rng);
}

ShockCountSampler make_sampler(const MixingDistribution& q, const FailureSimulationConfig& c) {
    if (c.tail_order < 1) {
        throw std::invalid_argument("tail_order must be at least 1");
    }
    const TailSequence tail = tail_sequence(q, c.tail_order);
    const auto validity = tail_validity(tail.values);
    if (!validity.valid) {
        throw std::invalid_argument("invalid tail: " + validity.reason);
    }
    ShockCountSampler sampler(tail.values.doubles(), c.tail_model);
    const double residual = tail.values[tail.values.size() - 1];
    if (c.tail_model == TailModel::none) {
        if (residual > kMaxUnmodelledTailMass) {
            throw std::invalid_argument("residual tail mass " + format_double(residual) +
                                        " exceeds 1e-6; raise tail_order or declare a tail model");
        }
        return sampler;
    }
    for (int factor : {2, 4}) {
        const int k = factor * c.tail_order;
        const double actual = integrate(q, integrand::PowerOfA{k}).value;
        const double predicted = sampler.model_tail(k);
        if (std::abs(actual - predicted) > kMaxUnmodelledTailMass) {
            throw std::invalid_argument("declared tail model misfits P(J > " + std::to_string(k) +
                                        ") by " + format_double(std::abs(actual - predicted)));
        }
    }
    return sampler;
}

struct FailureBlock {
    std::vector<std::uint64_t> alive;
    double sum_t = 0.0;
    double sum_t2 = 0.0;
    std::size_t count = 0;
};

struct MomentBlock {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::size_t count = 0;
};

// Draws y from q by choosing a piece in proportion to its mass.
class MixingSampler {
public:
    explicit MixingSampler(const MixingDistribution& q) {
        double acc = 0.0;
        for (const auto& a : q.atoms()) {
            acc += a.mass.to_double();
            pieces_.push_back({acc, a.y.to_double(), a.y.to_double()});
        }
        for (const auto& s : q.segments()) {
            acc += s.mass().to_double();
            pieces_.push_back({acc, s.lo.to_double(), s.hi.to_double()});
        }
        total_ = acc;
    }

    double operator()(SplitMix64& rng) const {
        const double u = rng.uniform_open() * total_;
        auto it = std::lower_bound(pieces_.begin(), pieces_.end(), u,
                                   [](const Piece& p, double x) { return p.cumulative < x; });
        if (it == pieces_.end()) {
            --it;
        }
        const double v = rng.uniform_open();
        return it->lo + v * (it->hi - it->lo);
    }

private:
    struct Piece {
        double cumulative;
        double lo;
        double hi;
    };
    std::vector<Piece> pieces_;
    double total_ = 1.0;
};

} // namespace

FailureSimulationResult simulate_failure_times(const MixingDistribution& q,
                                               const FailureSimulationConfig& config) {
    if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (config.replicates < 1) {
        throw std::invalid_argument("replicates must be at least 1");
    }
    for (double t : config.time_grid) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw std::invalid_argument("time grid values must be finite and non-negative");
        }
    }
    const ShockCountSampler sampler = make_sampler(q, config);
    const std::vector<double>& grid = config.time_grid;

    auto blocks = run_blocks<FailureBlock>(
        config.replicates, config.seed, config.workers, [&](std::size_t count, SplitMix64& rng) {
            FailureBlock b;
            b.alive.assign(grid.size(), 0);
            b.count = count;
            for (std::size_t i = 0; i < count; ++i) {
                const double shocks = sampler(rng.uniform_open());
                const double t = gamma_arrival(shocks, config.lambda, rng);
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    if (t > grid[g]) {
                        ++b.alive[g];
                    }
                }
                b.sum_t += t;
                b.sum_t2 += t * t;
            }
            return b;
        });

    std::vector<std::uint64_t> alive(grid.size(), 0);
    double sum_t = 0.0;
    double sum_t2 = 0.0;
    for (const auto& b : blocks) {
        for (std::size_t g = 0; g < grid.size(); ++g) {
            alive[g] += b.alive[g];
        }
        sum_t += b.sum_t;
        sum_t2 += b.sum_t2;
    }

    const double n = static_cast<double>(config.replicates);
    FailureSimulationResult out;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double p = static_cast<double>(alive[g]) / n;
        out.survival.push_back({grid[g], p, std::sqrt(p * (1.0 - p) / n)});
    }
    out.mean_failure_time = sum_t / n;
    const double var = std::max(0.0, sum_t2 / n - out.mean_failure_time * out.mean_failure_time);
    out.mean_std_error = std::sqrt(var / n);
    out.residual_tail_mass = sampler.model_tail(config.tail_order);
    return out;
}

std::vector<PointEstimate> simulate_de_finetti(const MixingDistribution& q,
                                               const DeFinettiConfig& config) {
    if (config.replicates < 1) {
        throw std::invalid_argument("replicates must be at least 1");
    }
    for (double z : config.z_grid) {
        if (!(z > 0.0 && z <= 1.0)) {
            throw std::invalid_argument("z values must lie in (0, 1]");
        }
    }
    const Value unit_mass = mass_on(q, Interval::left_open(0, 1));
    const bool inside = unit_mass.is_exact() ? unit_mass.rational() == 1
                                             : std::abs(unit_mass.to_double() - 1.0) <= 1e-12;
    if (!inside) {
        throw std::invalid_argument("mixing measure has mass outside (0, 1]");
    }
    const MixingSampler draw_y(q);
    const std::vector<double>& grid = config.z_grid;

    auto blocks = run_blocks<MomentBlock>(
        config.replicates, config.seed, config.workers, [&](std::size_t count, SplitMix64& rng) {
            MomentBlock b;
            b.sum.assign(grid.size(), 0.0);
            b.sum_sq.assign(grid.size(), 0.0);
            b.count = count;
            for (std::size_t i = 0; i < count; ++i) {
                const double y = draw_y(rng);
                double first_success = 1.0;
                if (y < 1.0) {
                    // P(N > n) = (1 - y)^n
                    first_success += std::floor(std::log(rng.uniform_open()) / std::log1p(-y));
                }
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    const double v = std::pow(grid[g], first_success);
                    b.sum[g] += v;
                    b.sum_sq[g] += v * v;
                }
            }
            return b;
        });

    const double n = static_cast<double>(config.replicates);
    std::vector<PointEstimate> out;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const auto& b : blocks) {
            sum += b.sum[g];
            sum_sq += b.sum_sq[g];
        }
        const double mean = sum / n;
        const double var = std::max(0.0, sum_sq / n - mean * mean);
        out.push_back({grid[g], mean, std::sqrt(var / n)});
    }
    return out;
}

} // namespace pgfmix
