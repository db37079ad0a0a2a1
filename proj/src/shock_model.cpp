#include "pgfmix/shock_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pgfmix/integrate.hpp"
#include "pgfmix/pgf.hpp"

namespace pgfmix {

void ShockModelParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive and finite");
    }
    if (!(series_tol > 0.0 && series_tol < 1.0)) {
        throw std::invalid_argument("series_tol must lie in (0, 1)");
    }
    for (std::size_t i = 0; i < time_grid.size(); ++i) {
        if (!(time_grid[i] >= 0.0) || !std::isfinite(time_grid[i])) {
            throw std::invalid_argument("time_grid[" + std::to_string(i) +
                                        "] must be finite and non-negative");
        }
        if (i > 0 && time_grid[i] < time_grid[i - 1]) {
            throw std::invalid_argument("time_grid must be sorted");
        }
    }
}

int poisson_truncation(double mu, double tol) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("poisson mean must be finite and non-negative");
    }
    if (mu == 0.0) {
        return 1;
    }
    const double log_tol = std::log(tol);
    int k = static_cast<int>(std::ceil(mu)) + 1;
    while (-mu + k * (1.0 + std::log(mu) - std::log(static_cast<double>(k))) >= log_tol) {
        ++k;
    }
    return k;
}

ShockModel::ShockModel(const TailSequence& tail, ShockModelParams params)
    : tail_(tail.values.doubles()), params_(std::move(params)) {
    params_.validate();
    const auto validity = tail_validity(tail.values);
    if (!validity.valid) {
        throw std::invalid_argument("invalid tail: " + validity.reason);
    }
}

double ShockModel::survival(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("t must be finite and non-negative");
    }
    const double mu = params_.lambda * t;
    const int terms = poisson_truncation(mu, params_.series_tol);
    if (static_cast<std::size_t>(terms) > tail_.size()) {
        throw std::invalid_argument("tail of order " + std::to_string(tail_order()) +
                                    " is too short at t = " + format_double(t) + "; need order " +
                                    std::to_string(terms - 1));
    }
    if (mu == 0.0) {
        return tail_[0];
    }
    double sum = 0.0;
    const double log_mu = std::log(mu);
    for (int k = 0; k < terms; ++k) {
        const double log_w = -mu + k * log_mu - std::lgamma(k + 1.0);
        sum += tail_[static_cast<std::size_t>(k)] * std::exp(log_w);
    }
    return sum;
}

std::vector<double> ShockModel::survival_on_grid() const {
    std::vector<double> out;
    out.reserve(params_.time_grid.size());
    for (double t : params_.time_grid) {
        out.push_back(survival(t));
    }
    return out;
}

double survival(const TailSequence& tail, const ShockModelParams& params, double t) {
    return ShockModel(tail, params).survival(t);
}

double laplace(const MixingDistribution& q, double lambda, double s, double tol) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("s must be positive");
    }
    return pgf_eval(q, lambda / (lambda + s), tol);
}

double exp_mixture_survival(const MixingDistribution& g, double t) {
    return integrate(g, integrand::ExpDecay{t}).value;
}

MixingDistribution rate_mixture_from_mixing(const MixingDistribution& q, double lambda) {
    return scale_locations(q, lambda);
}

MixingDistribution rate_mixture_from_moment_measure(const MixingDistribution& f, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (f.support_max() > 1.0) {
        throw std::invalid_argument("moment measure must live on [0, 1]");
    }
    const Value lam = Value::approx(lambda);
    const Value one = Value::exact(1);
    std::vector<Atom> atoms;
    for (const auto& a : f.atoms()) {
        if (compare(a.y, one) == 0) {
            throw std::invalid_argument("atom at p = 1 would put mass at rate 0");
        }
        atoms.push_back({lam * (one - a.y), a.mass});
    }
    std::vector<Segment> segments;
    for (const auto& s : f.segments()) {
        segments.push_back({lam * (one - s.hi), lam * (one - s.lo), s.density / lam});
    }
    return MixingDistribution(std::move(atoms), std::move(segments));
}

CmVerdict sdfr_skeleton_check(const TailSequence& tail, const ShockModelParams& params,
                              double delta, int max_order, int points) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("delta must be positive");
    }
    if (max_order < 1) {
        throw std::invalid_argument("difference order must be at least 1");
    }
    if (points <= 0) {
        points = max_order + 11;
    }
    const ShockModel model(tail, params);
    std::vector<double> u;
    u.reserve(static_cast<std::size_t>(points));
    for (int n = 0; n < points; ++n) {
        u.push_back(model.survival(n * delta));
    }
    const Sequence seq(std::move(u));
    return is_completely_monotone(seq, max_order, default_cm_tolerance(seq));
}

} // namespace pgfmix
