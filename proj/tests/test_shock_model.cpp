#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/poisson.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pgfmix/counterexample.hpp"
#include "pgfmix/families.hpp"
#include "pgfmix/integrate.hpp"
#include "pgfmix/pgf.hpp"
#include "pgfmix/shock_model.hpp"

using namespace pgfmix;

namespace {

const CounterexampleParams kParams(Rational(1, 7), Rational(2, 3));

// S(t) for the (1/7, 2/3) measure with lambda = 1, from integrating exp(-y t)
// over each piece by hand.
double cex_survival(double t) {
    if (t == 0.0) {
        return 1.0;
    }
    return (1.0 / 3.0) * -std::expm1(-t) / t + (14.0 / 3.0) * (std::exp(-t) - std::exp(-8.0 * t / 7.0)) / t;
}

ShockModelParams params(double lambda, double tol = 1e-12) {
    ShockModelParams p;
    p.lambda = lambda;
    p.series_tol = tol;
    return p;
}

} // namespace

TEST_CASE("params validation") {
    auto p = params(1.0);
    CHECK_NOTHROW(p.validate());
    p.lambda = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = params(1.0, 0.0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = params(1.0);
    p.time_grid = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.time_grid = {-1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("poisson truncation bounds the dropped mass") {
    CHECK(poisson_truncation(0.0, 1e-12) == 1);
    for (double mu : {0.01, 0.5, 3.0, 20.0, 150.0}) {
        for (double tol : {1e-6, 1e-12, 1e-15}) {
            const int k = poisson_truncation(mu, tol);
            CHECK(k > mu);
            const boost::math::poisson_distribution<double> pois(mu);
            CHECK(boost::math::cdf(boost::math::complement(pois, static_cast<double>(k - 1))) <= tol);
        }
    }
    CHECK_THROWS_AS(poisson_truncation(-1.0, 1e-9), std::invalid_argument);
}

TEST_CASE("survival: closed forms") {
    const auto one = tail_sequence(MixingDistribution::point_mass(1), 80);
    const auto half = tail_sequence(MixingDistribution::point_mass(Rational(1, 2)), 80);
    for (double t : {0.0, 0.3, 1.0, 4.0, 10.0}) {
        CHECK(std::abs(survival(one, params(2.0), t) - std::exp(-2.0 * t)) < 1e-13);
        CHECK(std::abs(survival(half, params(2.0), t) - std::exp(-t)) < 1e-13);
    }
    const auto cex_tail = tail_sequence(counterexample_q(kParams), 100, false);
    const ShockModel model(cex_tail, params(1.0));
    for (double t : {0.0, 0.1, 1.0, 5.0, 20.0}) {
        CHECK(std::abs(model.survival(t) - cex_survival(t)) < 1e-11);
    }
    CHECK(model.tail_order() == 100);
}

TEST_CASE("survival: domain and truncation errors") {
    const auto tail = tail_sequence(MixingDistribution::point_mass(Rational(1, 2)), 10);
    const ShockModel model(tail, params(1.0));
    CHECK_THROWS_AS(model.survival(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(model.survival(50.0), std::invalid_argument);
    const TailSequence bad{Sequence(std::vector<double>{1.0, 0.2, 0.4})};
    CHECK_THROWS_AS(ShockModel(bad, params(1.0)), std::invalid_argument);
}

TEST_CASE("survival on a grid") {
    auto p = params(1.0);
    p.time_grid = {0.0, 0.5, 1.0, 2.0};
    const ShockModel model(tail_sequence(counterexample_q(kParams), 60), p);
    const auto s = model.survival_on_grid();
    REQUIRE(s.size() == 4);
    CHECK(s[0] == 1.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i] < s[i - 1]);
        CHECK(std::abs(s[i] - cex_survival(p.time_grid[i])) < 1e-12);
    }
}

TEST_CASE("property: survival equals the exponential mixture with rates lambda y") {
    SplitMix64 rng(616);
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = trial % 2 ? families::unit_support(rng) : families::mass_in_one_two(rng);
        const auto tail = tail_sequence(q, 200, false);
        if (!tail_validity(tail.values).valid) {
            continue;
        }
        const double lambda = 0.5 + trial * 0.1;
        const auto g = rate_mixture_from_mixing(q, lambda);
        const ShockModel model(tail, params(lambda));
        for (double t : {0.0, 0.5, 2.0, 10.0}) {
            CHECK(std::abs(model.survival(t) - exp_mixture_survival(g, t)) < 1e-11);
        }
    }
}

TEST_CASE("laplace transform") {
    CHECK(std::abs(laplace(counterexample_q(kParams), 1.0, 1.0) - 0.446984206207578123) < 1e-11);
    // L(s) = 1 - s * integral of exp(-s t) S(t) dt.
    for (double s : {0.5, 1.0, 3.0}) {
        const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [s](double t) { return std::exp(-s * t) * cex_survival(t); }, 0.0, 60.0 / s, 15, 1e-14);
        CHECK(std::abs(laplace(counterexample_q(kParams), 1.0, s) - (1.0 - s * integral)) < 1e-10);
    }
    // Atom at y: exponential with rate lambda y.
    CHECK(laplace(MixingDistribution::point_mass(Rational(1, 2)), 2.0, 3.0) == doctest::Approx(1.0 / 4.0));
    CHECK_THROWS_AS(laplace(MixingDistribution::point_mass(1), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(laplace(MixingDistribution::point_mass(1), 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("exponential mixtures") {
    const auto g = MixingDistribution::uniform(1, 2);
    for (double t : {0.5, 1.0, 3.0}) {
        CHECK(exp_mixture_survival(g, t) == doctest::Approx((std::exp(-t) - std::exp(-2.0 * t)) / t));
    }
    CHECK(exp_mixture_survival(g, 0.0) == doctest::Approx(1.0));

    const auto rates = rate_mixture_from_moment_measure(MixingDistribution::uniform(0, 1), 2.0);
    REQUIRE(rates.segments().size() == 1);
    CHECK(rates.segments()[0].lo.to_double() == 0.0);
    CHECK(rates.segments()[0].hi.to_double() == 2.0);
    CHECK(rates.segments()[0].density.to_double() == 0.5);
    CHECK_THROWS_AS(rate_mixture_from_moment_measure(MixingDistribution::point_mass(1), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(rate_mixture_from_moment_measure(MixingDistribution::uniform(0, 2), 1.0),
                    std::invalid_argument);
}

TEST_CASE("property: moment-measure rates reproduce the survival") {
    // A tail P_k = integral of p^k f(dp) gives S(t) = integral of exp(-lambda (1 - p) t) f(dp).
    SplitMix64 rng(17);
    int used = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = families::unit_support(rng);
        bool atom_at_one = false;
        for (const auto& a : f.atoms()) {
            atom_at_one = atom_at_one || a.y.rational() == 1;
        }
        if (atom_at_one) {
            continue;
        }
        ++used;
        // Moments of f are the tails of its reflection y = 1 - p.
        std::vector<double> u;
        for (int k = 0; k <= 200; ++k) {
            u.push_back(integrate_function(f, [k](double x) { return std::pow(x, k); }));
        }
        const MixingDistribution reflected = rate_mixture_from_moment_measure(f, 1.0);
        const auto reflected_tail = tail_sequence(reflected, 200, false);
        for (std::size_t k = 0; k < u.size(); ++k) {
            CHECK(std::abs(reflected_tail.values[k] - u[k]) < 1e-12);
        }
        const auto g = rate_mixture_from_moment_measure(f, 1.5);
        const ShockModel model(reflected_tail, params(1.5));
        for (double t : {0.0, 1.0, 5.0}) {
            CHECK(std::abs(model.survival(t) - exp_mixture_survival(g, t)) < 1e-11);
        }
    }
    CHECK(used > 0);
}

TEST_CASE("skeleton complete monotonicity") {
    auto p = params(1.0, 1e-15);
    // Exponential mixtures: every skeleton is a moment sequence on (0, 1).
    const auto cex_tail = tail_sequence(counterexample_q(kParams), 200, false);
    for (double delta : {0.25, 1.0}) {
        CHECK(sdfr_skeleton_check(cex_tail, p, delta, 10).completely_monotone);
    }
    SplitMix64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto tail = tail_sequence(families::unit_support(rng), 200, false);
        CHECK(sdfr_skeleton_check(tail, p, 0.5, 10).completely_monotone);
    }
    CHECK_THROWS_AS(sdfr_skeleton_check(cex_tail, p, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(sdfr_skeleton_check(cex_tail, p, 1.0, 0), std::invalid_argument);
}
