#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "pgfmix/counterexample.hpp"
#include "pgfmix/io.hpp"
#include "pgfmix/pgf.hpp"

using namespace pgfmix;
using nlohmann::json;

TEST_CASE("values") {
    CHECK(io::value_from_json(json(3), "x").rational() == 3);
    CHECK(io::value_from_json(json("1/7"), "x").rational() == Rational(1, 7));
    CHECK(io::value_from_json(json("0.25"), "x").rational() == Rational(1, 4));
    const Value f = io::value_from_json(json(0.25), "x");
    CHECK_FALSE(f.is_exact());
    CHECK(f.to_double() == 0.25);
    CHECK_THROWS_WITH_AS(io::value_from_json(json("1/0"), "alpha"), doctest::Contains("alpha"),
                         std::invalid_argument);
    CHECK_THROWS_AS(io::value_from_json(json::array(), "x"), std::invalid_argument);

    const json e = io::value_to_json(Value::exact(Rational(2, 4)));
    CHECK(e["value"] == "1/2");
    CHECK(e["decimal"] == 0.5);
    CHECK(io::value_to_json(Value::approx(0.1))["value"] == 0.1);
}

TEST_CASE("distribution round trip") {
    const auto q = counterexample_q(CounterexampleParams(Rational(1, 7), Rational(2, 3)));
    const json j = io::distribution_to_json(q);
    CHECK(j["segments"][1]["density"] == "14/3");
    const auto back = io::distribution_from_json(j);
    CHECK(io::distribution_to_json(back) == j);

    const auto inline_q = io::load_distribution(R"({"atoms":[{"y":"1/2","p":1}]})");
    REQUIRE(inline_q.atoms().size() == 1);
    CHECK(inline_q.atoms()[0].y.rational() == Rational(1, 2));
}

TEST_CASE("distribution diagnostics name the field") {
    CHECK_THROWS_WITH_AS(io::distribution_from_json(json::parse(R"({"atom":[]})")),
                         doctest::Contains("atom"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::distribution_from_json(json::parse(R"({"atoms":[{"y":1}]})")),
                         doctest::Contains("atoms[0]"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::distribution_from_json(json::parse(R"({"segments":[{"lo":0,"hi":1,"density":"x"}]})")),
                         doctest::Contains("segments[0].density"), std::invalid_argument);
    CHECK_THROWS_AS(io::distribution_from_json(json::parse(R"({"atoms":[{"y":1,"p":"1/2"}]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::load_distribution("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(io::load_distribution("/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("sequences") {
    const Sequence s(std::vector<Rational>{1, Rational(1, 3)});
    std::ostringstream csv;
    io::write_sequence_csv(csv, s);
    CHECK(csv.str() == "k,value,decimal\n0,1/1,1\n1,1/3,0.33333333333333331\n");
    const json j = io::sequence_to_json(s);
    CHECK(j["exact"] == true);
    CHECK(j["values"][1]["value"] == "1/3");
    const Sequence back = io::sequence_from_json(j);
    CHECK(back.rationals() == s.rationals());

    const Sequence f = io::sequence_from_json(json::parse(R"({"values":[1, 0.5]})"));
    CHECK_FALSE(f.is_exact());
    CHECK(f[1] == 0.5);
    CHECK_THROWS_AS(io::sequence_from_json(json::parse(R"({"vals":[1]})")), std::invalid_argument);
}

TEST_CASE("difference tables and verdicts") {
    const DifferenceTable t(Sequence(std::vector<Rational>{1, 0, 1}), 2);
    std::ostringstream csv;
    io::write_difference_table_csv(csv, t);
    CHECK(csv.str() == "j,k0,k1,k2\n0,1/1,0/1,1/1\n1,1/1,-1/1,\n2,2/1,,\n");
    CHECK(io::difference_table_to_json(t)["rows"][1][1] == "-1/1");

    const auto v = is_completely_monotone(t, 0.0);
    CHECK(io::describe(v) == "false (first violation order 1)");
    const json vj = io::cm_verdict_to_json(v);
    CHECK(vj["first_violation"]["k"] == 1);
    CHECK(io::describe(CmVerdict{true, std::nullopt}) == "true");
    CHECK(io::cm_verdict_to_json(CmVerdict{true, std::nullopt})["first_violation"].is_null());
}

TEST_CASE("classification and simulation output") {
    const auto c = classify_support(MixingDistribution::uniform(1, 2));
    const json j = io::classification_to_json(c);
    CHECK(j["verdict"] == to_string(SupportVerdict::candidate_mass_in_1_2));
    CHECK(j["masses"]["m12"]["value"] == "1/1");

    std::ostringstream sim;
    io::write_failure_simulation_csv(sim, {{0.5, 0.25, 0.01}}, {0.3});
    CHECK(sim.str() == "t,empirical_survival,std_err,analytic_survival\n0.5,0.25,0.01,0.29999999999999999\n");
    std::ostringstream curve;
    io::write_curve_csv(curve, "z", "phi", {0.5}, {0.25});
    CHECK(curve.str() == "z,phi\n0.5,0.25\n");
}
