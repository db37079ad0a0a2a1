#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pgfmix/counterexample.hpp"
#include "pgfmix/families.hpp"
#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/pgf.hpp"
#include "pgfmix/sdfr.hpp"

using namespace pgfmix;

namespace {

const CounterexampleParams kParams(Rational(1, 7), Rational(2, 3));

Sequence geometric_tail(const Rational& r, int order) {
    std::vector<Rational> u;
    Rational x = 1;
    for (int k = 0; k <= order; ++k) {
        u.push_back(x);
        x *= r;
    }
    return Sequence(std::move(u));
}

} // namespace

TEST_CASE("difference table") {
    const DifferenceTable t(geometric_tail(Rational(1, 2), 4), 4);
    CHECK(t.exact());
    CHECK(t.max_order() == 4);
    CHECK(t.row(0).size() == 5);
    CHECK(t.row(4).size() == 1);
    // d^j (1/2)^k = (1/2)^(j + k)
    for (int j = 0; j <= 4; ++j) {
        for (int k = 0; k + j <= 4; ++k) {
            Rational expected = 1;
            for (int i = 0; i < j + k; ++i) {
                expected /= 2;
            }
            CHECK(t.entry(j, k).rational() == expected);
        }
    }
    const DifferenceTable f(Sequence(std::vector<double>{1.0, 0.25, 0.0}), 2);
    CHECK_FALSE(f.exact());
    CHECK(f.entry(1, 0).to_double() == 0.75);
    CHECK(f.entry(2, 0).to_double() == 0.5);
    CHECK_THROWS_AS(DifferenceTable(Sequence(std::vector<double>{1.0, 0.5}), 2), std::invalid_argument);
    CHECK_THROWS_AS(DifferenceTable(Sequence(std::vector<double>{1.0}), -1), std::invalid_argument);
}

TEST_CASE("complete monotonicity: examples") {
    const auto geo = is_completely_monotone(geometric_tail(Rational(1, 3), 20), 20, 0.0);
    CHECK(geo.completely_monotone);
    CHECK_FALSE(geo.first_violation);

    // 1, 0, 1: first difference at k = 1 is -1.
    const auto bump = is_completely_monotone(Sequence(std::vector<Rational>{1, 0, 1}), 2, 0.0);
    CHECK_FALSE(bump.completely_monotone);
    REQUIRE(bump.first_violation);
    CHECK(bump.first_violation->order == 1);
    CHECK(bump.first_violation->index == 1);

    // A negative entry in row 0 is reported before any row 1 entry.
    const auto neg = is_completely_monotone(Sequence(std::vector<double>{1.0, -0.5, 2.0}), 2, 0.0);
    CHECK(neg.first_violation->order == 0);
    CHECK(neg.first_violation->index == 1);

    // Float tolerance absorbs rounding-sized violations only.
    const Sequence noisy(std::vector<double>{1.0, 1.0, 1.0, 1.0 + 1e-13});
    CHECK(is_completely_monotone(noisy, 3, 1e-9).completely_monotone);
    CHECK_FALSE(is_completely_monotone(noisy, 3, 0.0).completely_monotone);
    CHECK_THROWS_AS(is_completely_monotone(noisy, 3, -1.0), std::invalid_argument);

    CHECK(default_cm_tolerance(geometric_tail(Rational(1, 2), 3)) == 0.0);
    CHECK(default_cm_tolerance(Sequence(std::vector<double>{1.0, 4.0})) == doctest::Approx(4e-9));
}

TEST_CASE("complete monotonicity: counterexample tails") {
    const auto tail = tail_sequence(counterexample_q(kParams), 10);
    REQUIRE(tail.exact());
    CHECK(tail_validity(tail.values).valid);
    const DifferenceTable table(tail.values, 10);
    CHECK(table.entry(1, 1).rational() == Rational(5, 42) - Rational(51, 441));
    CHECK(table.entry(2, 1).rational() == Rational(-121, 4116));
    const auto v = is_completely_monotone(table, 0.0);
    CHECK_FALSE(v.completely_monotone);
    REQUIRE(v.first_violation);
    CHECK(v.first_violation->order == 2);
    CHECK(v.first_violation->index == 1);
    // Same verdict through the float path with the default tolerance.
    const auto approx = tail_sequence(counterexample_q(kParams), 10, false);
    const auto fv = is_completely_monotone(approx.values, 10, default_cm_tolerance(approx.values));
    CHECK_FALSE(fv.completely_monotone);
    CHECK(fv.first_violation->order == 2);
    CHECK(fv.first_violation->index == 1);
}

TEST_CASE("property: moments of measures on (0, 1] are completely monotone") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const auto q = families::unit_support(rng);
        const auto tail = tail_sequence(q, 40);
        CHECK(tail_validity(tail.values).valid);
        const auto v = is_completely_monotone(tail.values, 39, 0.0);
        CHECK(v.completely_monotone);
        CHECK(classify_support(q).verdict == SupportVerdict::sdfr_support_in_unit);
    }
}

TEST_CASE("property: valid tails with mass in (1, 2) are not completely monotone") {
    SplitMix64 rng(8);
    int valid = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const auto q = families::mass_in_one_two(rng);
        CHECK(classify_support(q).verdict == SupportVerdict::candidate_mass_in_1_2);
        const auto tail = tail_sequence(q, 60);
        if (!tail_validity(tail.values).valid) {
            continue;
        }
        ++valid;
        CHECK_FALSE(is_completely_monotone(tail.values, 59, 0.0).completely_monotone);
    }
    CHECK(valid > 0);
}

TEST_CASE("property: mass at or beyond 2 breaks validity") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        const auto q = families::mass_beyond_two(rng);
        CHECK(classify_support(q).verdict == SupportVerdict::not_pgf_mass_at_or_beyond_2);
        CHECK_FALSE(tail_validity(tail_sequence(q, 50).values).valid);
    }
}

TEST_CASE("tail validity") {
    CHECK(tail_validity(geometric_tail(Rational(1, 2), 5)).valid);
    const auto start = tail_validity(Sequence(std::vector<Rational>{Rational(1, 2)}));
    CHECK_FALSE(start.valid);
    CHECK_FALSE(start.reason.empty());
    CHECK_FALSE(tail_validity(Sequence(std::vector<Rational>{1, Rational(-1, 9)})).valid);
    CHECK_FALSE(tail_validity(Sequence(std::vector<Rational>{1, Rational(1, 4), Rational(1, 3)})).valid);
    CHECK(tail_validity(Sequence(std::vector<double>{1.0, 0.5, 0.5 + 1e-13})).valid);
    CHECK_FALSE(tail_validity(Sequence(std::vector<double>{1.0, 0.5, 0.5 + 1e-9})).valid);
}

TEST_CASE("classify_support boundaries") {
    CHECK(classify_support(MixingDistribution::point_mass(1)).verdict ==
          SupportVerdict::sdfr_support_in_unit);
    CHECK(classify_support(MixingDistribution::point_mass(2)).verdict ==
          SupportVerdict::not_pgf_mass_at_or_beyond_2);
    CHECK(classify_support(MixingDistribution::uniform(1, 2)).verdict ==
          SupportVerdict::candidate_mass_in_1_2);
    const auto c = classify_support(counterexample_q(kParams));
    CHECK(c.verdict == SupportVerdict::candidate_mass_in_1_2);
    CHECK(c.m01.rational() == Rational(1, 3));
    CHECK(c.m12.rational() == Rational(2, 3));
    CHECK(c.m2.rational() == 0);
    CHECK(to_string(SupportVerdict::sdfr_support_in_unit) != to_string(SupportVerdict::candidate_mass_in_1_2));
}

TEST_CASE("expected shocks and mixing mean") {
    CHECK_FALSE(expected_shocks(counterexample_q(kParams)).finite());
    CHECK(std::isinf(expected_shocks(counterexample_q(kParams)).to_double()));
    const auto half = expected_shocks(MixingDistribution::point_mass(Rational(1, 2)));
    REQUIRE(half.finite());
    CHECK(half.value->rational() == 2);
    CHECK(std::abs(expected_shocks(MixingDistribution::uniform(1, 2)).to_double() - std::log(2.0)) < 1e-12);
    CHECK(expected_mixing_value(counterexample_q(kParams)).rational() == Rational(37, 42));
}

TEST_CASE("pgf bounds") {
    for (double z : {0.1, 0.5, 0.9}) {
        const auto b = pgf_bounds(MixingDistribution::point_mass(1), z);
        CHECK(b.lower == z);
        CHECK(b.upper == z);
        CHECK(b.phi == z);
        CHECK(b.upper_is_pgf);
    }
    const auto c = pgf_bounds(counterexample_q(kParams), 0.5);
    CHECK(c.lower == 0.0);
    CHECK(c.upper == doctest::Approx(0.5 * 37.0 / 42.0 / (0.5 + 0.5 * 37.0 / 42.0)));
    CHECK(c.upper_is_pgf);
    CHECK(c.phi <= c.upper);
    CHECK_FALSE(pgf_bounds(MixingDistribution::uniform(1, 2), 0.5).upper_is_pgf);
    CHECK_THROWS_AS(pgf_bounds(MixingDistribution::point_mass(1), 1.0), std::invalid_argument);
}

TEST_CASE("property: lower <= phi <= upper for random measures") {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const auto q = trial % 2 ? families::unit_support(rng) : families::mass_in_one_two(rng);
        for (double z = 0.05; z < 1.0; z += 0.1) {
            const auto b = pgf_bounds(q, z);
            CHECK(b.lower <= b.phi + 1e-12);
            CHECK(b.phi <= b.upper + 1e-12);
        }
    }
}

TEST_CASE("laplace order bounds") {
    const auto q = MixingDistribution::point_mass(Rational(1, 2));
    const double lambda = 2.0;
    const double s = 3.0;
    const auto b = laplace_order_bounds(q, lambda, s);
    CHECK(b.z == doctest::Approx(0.4));
    // E J = 2: exponential with mean E J / lambda.
    CHECK(b.lower == doctest::Approx(lambda / (lambda + s * 2.0)));
    // E Y = 1/2: exponential with rate lambda E Y.
    CHECK(b.upper == doctest::Approx(lambda * 0.5 / (lambda * 0.5 + s)));
    CHECK(b.lower <= b.phi + 1e-12);
    CHECK(b.phi <= b.upper + 1e-12);
    CHECK_THROWS_AS(laplace_order_bounds(q, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(laplace_order_bounds(q, 1.0, 0.0), std::invalid_argument);
}
