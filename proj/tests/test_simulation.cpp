#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pgfmix/counterexample.hpp"
#include "pgfmix/pgf.hpp"
#include "pgfmix/random.hpp"
#include "pgfmix/shock_model.hpp"
#include "pgfmix/simulation.hpp"

using namespace pgfmix;

namespace {

FailureSimulationConfig failure_config(std::size_t n, unsigned workers = 1) {
    FailureSimulationConfig c;
    c.lambda = 1.0;
    c.time_grid = {0.0, 0.5, 1.0, 2.0, 5.0};
    c.replicates = n;
    c.seed = 12345;
    c.tail_order = 80;
    c.workers = workers;
    return c;
}

} // namespace

TEST_CASE("splitmix streams") {
    SplitMix64 a(7);
    SplitMix64 b(7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a() == b());
    }
    auto s0 = SplitMix64::split(7, 0);
    auto s1 = SplitMix64::split(7, 1);
    CHECK(s0() != s1());
    SplitMix64 r(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform_open();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        const auto k = r.uniform_int(-2, 2);
        CHECK(k >= -2);
        CHECK(k <= 2);
    }
}

TEST_CASE("failure simulation matches the analytic survival") {
    // Atom at 1/2: J geometric, T exponential with rate 1/2.
    const auto q = MixingDistribution::point_mass(Rational(1, 2));
    const auto res = simulate_failure_times(q, failure_config(40000));
    REQUIRE(res.survival.size() == 5);
    CHECK(res.survival[0].estimate == 1.0);
    for (const auto& p : res.survival) {
        CHECK(std::abs(p.estimate - std::exp(-p.at / 2.0)) <= 4.0 * p.std_error + 1e-12);
    }
    CHECK(std::abs(res.mean_failure_time - 2.0) <= 4.0 * res.mean_std_error);
    CHECK(res.residual_tail_mass == 0.0);
}

TEST_CASE("failure simulation with long gamma arrivals") {
    // Atom at 1/100: mean 100 shocks, exercising the gamma sampler.
    const auto q = MixingDistribution::point_mass(Rational(1, 100));
    auto c = failure_config(20000);
    c.tail_order = 1500;
    c.lambda = 10.0;
    c.time_grid = {5.0, 10.0, 20.0};
    const auto res = simulate_failure_times(q, c);
    for (const auto& p : res.survival) {
        CHECK(std::abs(p.estimate - std::exp(-p.at / 10.0)) <= 4.0 * p.std_error);
    }
    CHECK(std::abs(res.mean_failure_time - 10.0) <= 4.0 * res.mean_std_error);
}

TEST_CASE("failure simulation is independent of the worker count") {
    const auto q = counterexample_q(CounterexampleParams(Rational(1, 7), Rational(2, 3)));
    auto c1 = failure_config(30000, 1);
    c1.tail_order = 200;
    c1.tail_model = TailModel::harmonic;
    auto c4 = c1;
    c4.workers = 4;
    const auto a = simulate_failure_times(q, c1);
    const auto b = simulate_failure_times(q, c4);
    const auto again = simulate_failure_times(q, c1);
    REQUIRE(a.survival.size() == b.survival.size());
    for (std::size_t i = 0; i < a.survival.size(); ++i) {
        CHECK(a.survival[i].estimate == b.survival[i].estimate);
        CHECK(a.survival[i].std_error == b.survival[i].std_error);
        CHECK(a.survival[i].estimate == again.survival[i].estimate);
    }
    CHECK(a.mean_failure_time == b.mean_failure_time);

    c1.seed = 99;
    const auto other = simulate_failure_times(q, c1);
    CHECK(other.survival[2].estimate != a.survival[2].estimate);
}

TEST_CASE("counterexample simulation with a harmonic tail") {
    const auto q = counterexample_q(CounterexampleParams(Rational(1, 7), Rational(2, 3)));
    auto c = failure_config(50000);
    c.tail_order = 200;
    c.tail_model = TailModel::harmonic;
    const auto res = simulate_failure_times(q, c);
    const ShockModel model(tail_sequence(q, 200, false), [] {
        ShockModelParams p;
        p.lambda = 1.0;
        return p;
    }());
    for (const auto& p : res.survival) {
        CHECK(std::abs(p.estimate - model.survival(p.at)) <= 4.0 * p.std_error + 1e-12);
    }
    CHECK(res.residual_tail_mass > 1e-3);
}

TEST_CASE("tail model checks") {
    const auto q = counterexample_q(CounterexampleParams(Rational(1, 7), Rational(2, 3)));
    auto c = failure_config(100);
    c.tail_order = 200;
    CHECK_THROWS_AS(simulate_failure_times(q, c), std::invalid_argument);
    c.tail_model = TailModel::geometric;
    CHECK_THROWS_AS(simulate_failure_times(q, c), std::invalid_argument);
    // Geometric tails are fitted exactly by the geometric model.
    auto g = failure_config(2000);
    g.tail_order = 10;
    g.tail_model = TailModel::geometric;
    const auto res = simulate_failure_times(MixingDistribution::point_mass(Rational(1, 2)), g);
    CHECK(res.residual_tail_mass == doctest::Approx(std::ldexp(1.0, -10)));

    auto bad = failure_config(100);
    bad.lambda = -1.0;
    CHECK_THROWS_AS(simulate_failure_times(MixingDistribution::point_mass(1), bad), std::invalid_argument);
    bad = failure_config(0);
    CHECK_THROWS_AS(simulate_failure_times(MixingDistribution::point_mass(1), bad), std::invalid_argument);
    bad = failure_config(10);
    bad.tail_order = 0;
    CHECK_THROWS_AS(simulate_failure_times(MixingDistribution::point_mass(1), bad), std::invalid_argument);
    bad = failure_config(10);
    CHECK_THROWS_AS(simulate_failure_times(MixingDistribution::point_mass(3), bad), std::invalid_argument);
}

TEST_CASE("de Finetti simulation recovers the p.g.f.") {
    const auto q = MixingDistribution::uniform(Rational(1, 4), 1);
    DeFinettiConfig c;
    c.z_grid = {0.1, 0.5, 0.9, 1.0};
    c.replicates = 40000;
    c.seed = 8;
    const auto est = simulate_de_finetti(q, c);
    REQUIRE(est.size() == 4);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(est[i].estimate - pgf_eval(q, est[i].at)) <= 4.0 * est[i].std_error);
    }
    CHECK(est[3].estimate == 1.0);

    c.workers = 3;
    const auto par = simulate_de_finetti(q, c);
    for (std::size_t i = 0; i < est.size(); ++i) {
        CHECK(par[i].estimate == est[i].estimate);
    }

    const auto atom = simulate_de_finetti(MixingDistribution::point_mass(1), c);
    CHECK(atom[1].estimate == 0.5);

    CHECK_THROWS_AS(
        simulate_de_finetti(counterexample_q(CounterexampleParams(Rational(1, 7), Rational(2, 3))), c),
        std::invalid_argument);
    c.z_grid = {0.0};
    CHECK_THROWS_AS(simulate_de_finetti(q, c), std::invalid_argument);
}
