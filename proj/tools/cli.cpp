#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pgfmix/counterexample.hpp"
#include "pgfmix/errors.hpp"
#include "pgfmix/io.hpp"
#include "pgfmix/pgf.hpp"
#include "pgfmix/sdfr.hpp"
#include "pgfmix/shock_model.hpp"
#include "pgfmix/simulation.hpp"

namespace pgfmix::cli {

namespace {

using nlohmann::json;

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

const std::vector<std::string> kSubcommands{"pgf",          "tail",     "cm-check", "classify",
                                            "counterexample", "survival", "laplace",  "bounds",
                                            "simulate"};

struct Options {
    std::string format = "csv";
    std::string out_path;
    std::string dist;
    std::string seq;
    std::vector<std::string> z;
    std::vector<std::string> t;
    std::vector<std::string> lambdas;
    std::vector<std::string> s;
    std::string lambda = "1";
    std::optional<std::string> tol;
    std::string alpha;
    std::string beta;
    std::optional<int> K;
    std::optional<int> J;
    bool pmf = false;
    bool approx = false;
    std::optional<std::string> delta;
    std::string mode = "failure";
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string tail_model = "none";
};

// ---- option parsing -------------------------------------------------------

Rational parse_exact(const std::string& field, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw validation_error(field + ": " + e.what());
    }
}

double parse_real(const std::string& field, const std::string& text) {
    return to_double(parse_exact(field, text));
}

double parse_positive(const std::string& field, const std::string& text) {
    const double v = parse_real(field, text);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw validation_error(field + ": must be positive, got " + text);
    }
    return v;
}

std::vector<double> parse_grid(const std::string& field, const std::vector<std::string>& items) {
    if (items.empty()) {
        throw validation_error(field + ": at least one value is required");
    }
    std::vector<double> out;
    for (const auto& item : items) {
        out.push_back(parse_real(field, item));
    }
    return out;
}

void require_open_unit(const std::string& field, const std::vector<double>& values) {
    for (double v : values) {
        if (!(v > 0.0 && v < 1.0)) {
            throw validation_error(field + ": " + format_double(v) + " is outside (0, 1)");
        }
    }
}

void require_positive(const std::string& field, const std::vector<double>& values) {
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw validation_error(field + ": " + format_double(v) + " must be positive");
        }
    }
}

void require_non_negative(const std::string& field, const std::vector<double>& values) {
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw validation_error(field + ": " + format_double(v) + " must be non-negative");
        }
    }
}

double series_tolerance(const Options& o) {
    if (!o.tol) {
        return 1e-12;
    }
    const double tol = parse_positive("--tol", *o.tol);
    if (tol >= 1.0) {
        throw validation_error("--tol: must be below 1");
    }
    return tol;
}

MixingDistribution load_dist(const Options& o) {
    if (o.dist.empty()) {
        throw validation_error("--dist: a distribution is required");
    }
    try {
        return io::load_distribution(o.dist);
    } catch (const std::invalid_argument& e) {
        throw validation_error(std::string("--dist: ") + e.what());
    }
}

Sequence load_seq(const std::string& text) {
    std::string body = text;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) {
        std::ifstream in(text);
        if (!in) {
            throw validation_error("--seq: cannot open '" + text + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        json j = json::parse(body);
        if (j.is_array()) {
            j = json{{"values", j}};
        }
        return io::sequence_from_json(j);
    } catch (const json::exception& e) {
        throw validation_error(std::string("--seq: malformed JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw validation_error(std::string("--seq: ") + e.what());
    }
}

TailModel parse_tail_model(const std::string& name) {
    if (name == "geometric") {
        return TailModel::geometric;
    }
    if (name == "harmonic") {
        return TailModel::harmonic;
    }
    return TailModel::none;
}

json expected_shocks_json(const ExpectedShocks& e) {
    if (e.finite()) {
        return io::value_to_json(*e.value);
    }
    return "infinite";
}

std::string expected_shocks_csv(const ExpectedShocks& e) {
    if (e.finite()) {
        return to_string(*e.value) + ',' + format_double(e.value->to_double());
    }
    return "infinite,inf";
}

json validity_json(const TailValidity& v) {
    return {{"valid", v.valid}, {"reason", v.reason}};
}

std::string verdict_comment(const CmVerdict& v) {
    std::string line = "# completely_monotone: " + io::describe(v) + '\n';
    if (v.first_violation) {
        line += "# first_violation: j=" + std::to_string(v.first_violation->order) +
                " k=" + std::to_string(v.first_violation->index) + '\n';
    }
    return line;
}

// Tail order needed for the Poisson series to reach every time in `times`.
int tail_order_for(double lambda, const std::vector<double>& times, double tol) {
    int needed = 1;
    for (double t : times) {
        needed = std::max(needed, poisson_truncation(lambda * t, tol) - 1);
    }
    return needed;
}

ShockModel build_model(const MixingDistribution& q, double lambda, double tol, int order) {
    ShockModelParams params;
    params.lambda = lambda;
    params.series_tol = tol;
    try {
        return ShockModel(tail_sequence(q, order, false), params);
    } catch (const std::invalid_argument& e) {
        throw validation_error(std::string("--dist: ") + e.what());
    }
}

// ---- subcommands ----------------------------------------------------------

void run_pgf(const Options& o, bool as_json, std::ostream& os) {
    const auto zs = parse_grid("--z", o.z);
    require_open_unit("--z", zs);
    const double tol = o.tol ? parse_positive("--tol", *o.tol) : 1e-12;
    const auto q = load_dist(o);
    std::vector<double> phi;
    for (double z : zs) {
        phi.push_back(pgf_eval(q, z, tol));
    }
    if (as_json) {
        json points = json::array();
        for (std::size_t i = 0; i < zs.size(); ++i) {
            points.push_back({{"z", zs[i]}, {"phi", phi[i]}});
        }
        os << json{{"command", "pgf"}, {"points", points}}.dump(2) << '\n';
        return;
    }
    io::write_curve_csv(os, "z", "phi", zs, phi);
}

void run_tail(const Options& o, bool as_json, std::ostream& os) {
    const int order = o.K.value_or(kDefaultTailOrder);
    const auto q = load_dist(o);
    const auto tail = tail_sequence(q, order, !o.approx);
    const auto validity = tail_validity(tail.values);
    std::optional<PmfSequence> pmf;
    if (o.pmf) {
        if (!validity.valid) {
            throw validation_error("--pmf: tail is not valid: " + validity.reason);
        }
        pmf = pmf_from_tail(tail);
    }
    if (as_json) {
        json doc = {{"command", "tail"},
                    {"order", order},
                    {"validity", validity_json(validity)},
                    {"tail", io::sequence_to_json(tail.values)}};
        if (pmf) {
            doc["pmf"] = io::sequence_to_json(pmf->values);
        }
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# valid: " << (validity.valid ? "true" : "false (" + validity.reason + ")") << '\n';
    os << "k,value,decimal" << (pmf ? ",pmf,pmf_decimal" : "") << '\n';
    for (std::size_t k = 0; k < tail.values.size(); ++k) {
        os << k << ',' << to_string(tail.values.at(k)) << ',' << format_double(tail.values[k]);
        if (pmf) {
            os << ',' << to_string(pmf->values.at(k)) << ',' << format_double(pmf->values[k]);
        }
        os << '\n';
    }
}

void run_cm_check(const Options& o, bool as_json, std::ostream& os) {
    Sequence u;
    if (!o.seq.empty()) {
        u = load_seq(o.seq);
    } else if (!o.dist.empty()) {
        u = tail_sequence(load_dist(o), o.K.value_or(60)).values;
    } else {
        throw validation_error("--dist or --seq: one input is required");
    }
    if (u.size() == 0) {
        throw validation_error("--seq: the sequence is empty");
    }
    const int last = static_cast<int>(u.size()) - 1;
    const int order = o.J.value_or(last);
    if (order > last) {
        throw validation_error("--J: order " + std::to_string(order) + " needs " +
                               std::to_string(order + 1) + " terms, sequence has " +
                               std::to_string(u.size()));
    }
    double tol = default_cm_tolerance(u);
    if (o.tol) {
        tol = parse_real("--tol", *o.tol);
        if (!(tol >= 0.0)) {
            throw validation_error("--tol: must be non-negative");
        }
    }
    const DifferenceTable table(u, order);
    const auto verdict = is_completely_monotone(table, tol);
    const auto validity = tail_validity(u);
    if (as_json) {
        os << json{{"command", "cm-check"},
                   {"J", order},
                   {"tol", tol},
                   {"validity", validity_json(validity)},
                   {"verdict", io::cm_verdict_to_json(verdict)},
                   {"table", io::difference_table_to_json(table)}}
                  .dump(2)
           << '\n';
        return;
    }
    os << verdict_comment(verdict);
    io::write_difference_table_csv(os, table);
}

void run_classify(const Options& o, bool as_json, std::ostream& os) {
    const double tol = o.tol ? parse_positive("--tol", *o.tol) : 1e-12;
    const auto q = load_dist(o);
    const auto c = classify_support(q);
    const auto ej = expected_shocks(q, tol);
    const auto ey = expected_mixing_value(q);
    // J >= 1 forces E J >= 1; reported, not enforced.
    const bool ej_at_least_one =
        !ej.finite() || (ej.value->is_exact() ? ej.value->rational() >= 1 : ej.value->to_double() >= 1.0);
    if (as_json) {
        json doc = io::classification_to_json(c);
        doc["command"] = "classify";
        doc["expected_y"] = io::value_to_json(ey);
        doc["expected_shocks"] = expected_shocks_json(ej);
        doc["expected_shocks_at_least_one"] = ej_at_least_one;
        os << doc.dump(2) << '\n';
        return;
    }
    os << "field,value,decimal\n";
    os << "verdict," << to_string(c.verdict) << ",\n";
    os << "m01," << to_string(c.m01) << ',' << format_double(c.m01.to_double()) << '\n';
    os << "m12," << to_string(c.m12) << ',' << format_double(c.m12.to_double()) << '\n';
    os << "m2," << to_string(c.m2) << ',' << format_double(c.m2.to_double()) << '\n';
    os << "expected_y," << to_string(ey) << ',' << format_double(ey.to_double()) << '\n';
    os << "expected_shocks," << expected_shocks_csv(ej) << '\n';
    os << "expected_shocks_at_least_one," << (ej_at_least_one ? "true" : "false") << ",\n";
}

void run_counterexample(const Options& o, bool as_json, std::ostream& os) {
    const Rational alpha = parse_exact("--alpha", o.alpha);
    const Rational beta = parse_exact("--beta", o.beta);
    if (!(alpha > 0 && alpha < 1)) {
        throw validation_error("--alpha: must lie in (0, 1), got " + o.alpha);
    }
    if (!(beta > 0 && beta < 1)) {
        throw validation_error("--beta: must lie in (0, 1), got " + o.beta);
    }
    const int order = o.K.value_or(10);
    if (order < 2) {
        throw validation_error("--K: must be at least 2");
    }
    const int cm_order = o.J.value_or(order);
    if (cm_order < 1 || cm_order > order) {
        throw validation_error("--J: must lie in [1, K]");
    }
    const CounterexampleParams p(alpha, beta);
    const auto q = counterexample_q(p);
    const auto tail = tail_sequence(q, order);
    bool closed_form = true;
    for (int k = 0; k <= order; ++k) {
        closed_form = closed_form &&
                      tail.values.rationals()[static_cast<std::size_t>(k)] == counterexample_tail(p, k);
    }
    const auto validity = tail_validity(tail.values);
    const DifferenceTable table(tail.values, cm_order);
    const auto verdict = is_completely_monotone(table, 0.0);
    const DifferenceTable low(tail.values, 2);
    const auto ey = expected_mixing_value(q);
    const auto ej = expected_shocks(q);

    if (as_json) {
        json mono = json::array();
        for (int n = 0; 2 * n + 2 <= order; ++n) {
            const auto m = monotonicity_condition(p, n);
            mono.push_back({{"n", n},
                            {"lhs", io::value_to_json(Value::exact(m.lhs))},
                            {"rhs", io::value_to_json(Value::exact(m.rhs))},
                            {"holds", m.holds}});
        }
        json doc = {{"command", "counterexample"},
                    {"alpha", to_fraction_string(alpha)},
                    {"beta", to_fraction_string(beta)},
                    {"admissible", p.admissible()},
                    {"distribution", io::distribution_to_json(q)},
                    {"order", order},
                    {"J", cm_order},
                    {"tail", io::sequence_to_json(tail.values)},
                    {"closed_form_matches", closed_form},
                    {"validity", validity_json(validity)},
                    {"verdict", io::cm_verdict_to_json(verdict)},
                    {"delta1", io::sequence_to_json(low.row(1))},
                    {"delta2", io::sequence_to_json(low.row(2))},
                    {"expected_y", io::value_to_json(ey)},
                    {"expected_shocks", expected_shocks_json(ej)},
                    {"monotonicity", mono}};
        if (verdict.first_violation) {
            doc["verdict"]["value"] = io::value_to_json(
                table.entry(verdict.first_violation->order, verdict.first_violation->index));
        }
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# alpha: " << to_fraction_string(alpha) << '\n';
    os << "# beta: " << to_fraction_string(beta) << '\n';
    os << "# admissible: " << (p.admissible() ? "true" : "false") << '\n';
    os << "# valid: " << (validity.valid ? "true" : "false (" + validity.reason + ")") << '\n';
    os << verdict_comment(verdict);
    if (verdict.first_violation) {
        const Value v = table.entry(verdict.first_violation->order, verdict.first_violation->index);
        os << "# violating_entry: " << to_string(v) << " (" << format_double(v.to_double()) << ")\n";
    }
    os << "k,tail,tail_decimal,delta1,delta1_decimal,delta2,delta2_decimal\n";
    for (std::size_t k = 0; k < tail.values.size(); ++k) {
        os << k << ',' << to_string(tail.values.at(k)) << ',' << format_double(tail.values[k]);
        for (int j = 1; j <= 2; ++j) {
            const Sequence& row = low.row(j);
            if (k < row.size()) {
                os << ',' << to_string(row.at(k)) << ',' << format_double(row[k]);
            } else {
                os << ",,";
            }
        }
        os << '\n';
    }
}

void run_survival(const Options& o, bool as_json, std::ostream& os) {
    const double lambda = parse_positive("--lambda", o.lambda);
    const auto ts = parse_grid("--t", o.t);
    require_non_negative("--t", ts);
    const double tol = series_tolerance(o);
    std::optional<double> delta;
    const int cm_order = o.J.value_or(10);
    if (o.delta) {
        delta = parse_positive("--delta", *o.delta);
        if (cm_order < 1) {
            throw validation_error("--J: must be at least 1");
        }
    }
    const auto q = load_dist(o);

    std::vector<double> reach = ts;
    const int points = cm_order + 11;
    if (delta) {
        reach.push_back(*delta * (points - 1));
    }
    const int order = o.K.value_or(tail_order_for(lambda, reach, tol));
    const ShockModel model = build_model(q, lambda, tol, order);
    std::vector<double> values;
    for (double t : ts) {
        try {
            values.push_back(model.survival(t));
        } catch (const std::invalid_argument& e) {
            throw validation_error(std::string("--K: ") + e.what());
        }
    }
    std::optional<CmVerdict> skeleton;
    if (delta) {
        ShockModelParams params = model.params();
        const TailSequence tail = tail_sequence(q, order, false);
        try {
            skeleton = sdfr_skeleton_check(tail, params, *delta, cm_order, points);
        } catch (const std::invalid_argument& e) {
            throw validation_error(std::string("--K: ") + e.what());
        }
    }
    if (as_json) {
        json pts = json::array();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            pts.push_back({{"t", ts[i]}, {"survival", values[i]}});
        }
        json doc = {{"command", "survival"}, {"lambda", lambda}, {"series_tol", tol},
                    {"tail_order", order}, {"points", pts}};
        if (skeleton) {
            doc["skeleton"] = {{"delta", *delta}, {"J", cm_order}, {"points", points},
                               {"verdict", io::cm_verdict_to_json(*skeleton)}};
        }
        os << doc.dump(2) << '\n';
        return;
    }
    if (skeleton) {
        os << "# skeleton_delta: " << format_double(*delta) << '\n';
        os << verdict_comment(*skeleton);
    }
    io::write_curve_csv(os, "t", "survival", ts, values);
}

void run_laplace(const Options& o, bool as_json, std::ostream& os) {
    const auto lambdas = parse_grid("--lambda", o.lambdas);
    require_positive("--lambda", lambdas);
    const auto ss = parse_grid("--s", o.s);
    require_positive("--s", ss);
    const double tol = o.tol ? parse_positive("--tol", *o.tol) : 1e-12;
    const auto q = load_dist(o);
    json pts = json::array();
    std::ostringstream csv;
    csv << "lambda,s,L\n";
    for (double lambda : lambdas) {
        for (double s : ss) {
            const double value = laplace(q, lambda, s, tol);
            pts.push_back({{"lambda", lambda}, {"s", s}, {"L", value}});
            csv << format_double(lambda) << ',' << format_double(s) << ',' << format_double(value) << '\n';
        }
    }
    if (as_json) {
        os << json{{"command", "laplace"}, {"points", pts}}.dump(2) << '\n';
        return;
    }
    os << csv.str();
}

void run_bounds(const Options& o, bool as_json, std::ostream& os) {
    const bool by_z = !o.z.empty();
    std::vector<double> zs;
    std::vector<double> lambdas;
    std::vector<double> ss;
    if (by_z) {
        zs = parse_grid("--z", o.z);
        require_open_unit("--z", zs);
    } else {
        if (o.lambdas.empty() && o.s.empty()) {
            throw validation_error("--z or --lambda/--s: one grid is required");
        }
        lambdas = parse_grid("--lambda", o.lambdas);
        require_positive("--lambda", lambdas);
        ss = parse_grid("--s", o.s);
        require_positive("--s", ss);
    }
    const double tol = o.tol ? parse_positive("--tol", *o.tol) : 1e-12;
    const auto q = load_dist(o);

    std::vector<PgfBounds> rows;
    std::vector<std::pair<double, double>> params;
    if (by_z) {
        for (double z : zs) {
            rows.push_back(pgf_bounds(q, z, tol));
        }
    } else {
        for (double lambda : lambdas) {
            for (double s : ss) {
                rows.push_back(laplace_order_bounds(q, lambda, s, tol));
                params.emplace_back(lambda, s);
            }
        }
    }
    const char* value_name = by_z ? "phi" : "L";
    if (as_json) {
        json pts = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            json p = {{"z", rows[i].z},
                      {"lower", rows[i].lower},
                      {value_name, rows[i].phi},
                      {"upper", rows[i].upper},
                      {"upper_is_pgf", rows[i].upper_is_pgf}};
            if (!by_z) {
                p["lambda"] = params[i].first;
                p["s"] = params[i].second;
            }
            pts.push_back(std::move(p));
        }
        os << json{{"command", "bounds"},
                   {"mode", by_z ? "pgf" : "laplace"},
                   {"expected_y", io::value_to_json(expected_mixing_value(q))},
                   {"expected_shocks", expected_shocks_json(expected_shocks(q, tol))},
                   {"points", pts}}
                  .dump(2)
           << '\n';
        return;
    }
    os << (by_z ? "" : "lambda,s,") << "z,lower," << value_name << ",upper,upper_is_pgf\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!by_z) {
            os << format_double(params[i].first) << ',' << format_double(params[i].second) << ',';
        }
        os << format_double(rows[i].z) << ',' << format_double(rows[i].lower) << ','
           << format_double(rows[i].phi) << ',' << format_double(rows[i].upper) << ','
           << (rows[i].upper_is_pgf ? "true" : "false") << '\n';
    }
}

void run_simulate_failure(const Options& o, bool as_json, std::ostream& os) {
    FailureSimulationConfig c;
    c.lambda = parse_positive("--lambda", o.lambda);
    c.time_grid = parse_grid("--t", o.t);
    require_non_negative("--t", c.time_grid);
    c.replicates = o.n;
    c.seed = o.seed;
    c.workers = o.workers;
    c.tail_order = o.K.value_or(200);
    if (c.tail_order < 1) {
        throw validation_error("--K: must be at least 1");
    }
    c.tail_model = parse_tail_model(o.tail_model);
    const double tol = series_tolerance(o);
    const auto q = load_dist(o);

    FailureSimulationResult res;
    try {
        res = simulate_failure_times(q, c);
    } catch (const std::invalid_argument& e) {
        throw validation_error(std::string("--dist: ") + e.what());
    }
    const ShockModel model =
        build_model(q, c.lambda, tol, tail_order_for(c.lambda, c.time_grid, tol));
    const auto analytic = [&] {
        std::vector<double> v;
        for (double t : c.time_grid) {
            v.push_back(model.survival(t));
        }
        return v;
    }();

    if (as_json) {
        json pts = json::array();
        for (std::size_t i = 0; i < res.survival.size(); ++i) {
            pts.push_back({{"t", res.survival[i].at},
                           {"empirical", res.survival[i].estimate},
                           {"std_err", res.survival[i].std_error},
                           {"analytic", analytic[i]}});
        }
        os << json{{"command", "simulate"},
                   {"mode", "failure"},
                   {"n", c.replicates},
                   {"seed", c.seed},
                   {"lambda", c.lambda},
                   {"tail_order", c.tail_order},
                   {"tail_model", o.tail_model},
                   {"residual_tail_mass", res.residual_tail_mass},
                   {"mean_failure_time", res.mean_failure_time},
                   {"mean_std_error", res.mean_std_error},
                   {"points", pts}}
                  .dump(2)
           << '\n';
        return;
    }
    os << "# n: " << c.replicates << '\n';
    os << "# seed: " << c.seed << '\n';
    os << "# residual_tail_mass: " << format_double(res.residual_tail_mass) << '\n';
    os << "# mean_failure_time: " << format_double(res.mean_failure_time) << '\n';
    os << "# mean_std_error: " << format_double(res.mean_std_error) << '\n';
    io::write_failure_simulation_csv(os, res.survival, analytic);
}

void run_simulate_definetti(const Options& o, bool as_json, std::ostream& os) {
    DeFinettiConfig c;
    c.z_grid = parse_grid("--z", o.z);
    for (double z : c.z_grid) {
        if (!(z > 0.0 && z <= 1.0)) {
            throw validation_error("--z: " + format_double(z) + " is outside (0, 1]");
        }
    }
    c.replicates = o.n;
    c.seed = o.seed;
    c.workers = o.workers;
    const double tol = o.tol ? parse_positive("--tol", *o.tol) : 1e-12;
    const auto q = load_dist(o);

    std::vector<PointEstimate> est;
    try {
        est = simulate_de_finetti(q, c);
    } catch (const std::invalid_argument& e) {
        throw validation_error(std::string("--dist: ") + e.what());
    }
    std::vector<double> exact;
    for (double z : c.z_grid) {
        exact.push_back(z < 1.0 ? pgf_eval(q, z, tol) : 1.0);
    }
    if (as_json) {
        json pts = json::array();
        for (std::size_t i = 0; i < est.size(); ++i) {
            pts.push_back({{"z", est[i].at},
                           {"empirical", est[i].estimate},
                           {"std_err", est[i].std_error},
                           {"pgf", exact[i]}});
        }
        os << json{{"command", "simulate"}, {"mode", "definetti"}, {"n", c.replicates},
                   {"seed", c.seed}, {"points", pts}}
                  .dump(2)
           << '\n';
        return;
    }
    os << "# n: " << c.replicates << '\n';
    os << "# seed: " << c.seed << '\n';
    os << "z,empirical,std_err,pgf\n";
    for (std::size_t i = 0; i < est.size(); ++i) {
        os << format_double(est[i].at) << ',' << format_double(est[i].estimate) << ','
           << format_double(est[i].std_error) << ',' << format_double(exact[i]) << '\n';
    }
}

void run_simulate(const Options& o, bool as_json, std::ostream& os) {
    if (o.mode == "definetti") {
        run_simulate_definetti(o, as_json, os);
    } else {
        run_simulate_failure(o, as_json, os);
    }
}

// ---- config expansion -----------------------------------------------------

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

std::string scalar_text(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

// Replaces `--config <path>` by the flags it mirrors. Flags given explicitly
// on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw validation_error("--config: a path is required");
            }
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw validation_error("--config: cannot open '" + path + "'");
    }
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw validation_error(std::string("--config: malformed JSON: ") + e.what());
    }
    if (!cfg.is_object()) {
        throw validation_error("--config: expected a JSON object");
    }
    const bool has_subcommand = std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
    });
    if (!has_subcommand && cfg.contains("subcommand")) {
        if (!cfg["subcommand"].is_string()) {
            throw validation_error("--config: \"subcommand\" must be a string");
        }
        args.insert(args.begin(), cfg["subcommand"].get<std::string>());
    }
    for (const auto& [key, value] : cfg.items()) {
        if (key == "subcommand") {
            continue;
        }
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        const std::string flag = "--" + name;
        if (has_flag(args, flag)) {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                args.push_back(flag);
            }
            continue;
        }
        if (value.is_null()) {
            continue;
        }
        std::string text;
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                text += (i ? "," : "") + scalar_text(value[i]);
            }
        } else if (value.is_object()) {
            text = value.dump();
        } else {
            text = scalar_text(value);
        }
        args.push_back(flag);
        args.push_back(text);
    }
    return args;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') {
        s.pop_back();
    }
    return s;
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Mixture p.g.f., tail sequence, complete monotonicity and shock-model tools",
                 "pgfmix"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", o.out_path, "Write output to this file instead of stdout");
    std::string config_placeholder;
    app.add_option("--config", config_placeholder, "JSON file mirroring the flags");

    const auto add_dist = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--dist", o.dist, "Mixing distribution: inline JSON or file path");
        if (required) {
            opt->required();
        }
    };
    const auto add_list = [](CLI::App* sub, const std::string& name, std::vector<std::string>& v,
                             const std::string& help) { sub->add_option(name, v, help)->delimiter(','); };

    auto* pgf = app.add_subcommand("pgf", "Evaluate phi on a z grid");
    add_dist(pgf, true);
    add_list(pgf, "--z", o.z, "Comma-separated z values in (0, 1)");
    pgf->add_option("--tol", o.tol, "Quadrature tolerance");

    auto* tail = app.add_subcommand("tail", "Tail sequence P_0..P_K");
    add_dist(tail, true);
    tail->add_option("--K", o.K, "Tail order")->check(CLI::NonNegativeNumber);
    tail->add_flag("--pmf", o.pmf, "Also print the pmf of J");
    tail->add_flag("--approx", o.approx, "Use floating point even for exact input");

    auto* cm = app.add_subcommand("cm-check", "Difference table and complete monotonicity verdict");
    add_dist(cm, false);
    auto* seq_opt = cm->add_option("--seq", o.seq, "Sequence: inline JSON or file path");
    cm->get_option("--dist")->excludes(seq_opt);
    cm->add_option("--K", o.K, "Tail order when --dist is given")->check(CLI::NonNegativeNumber);
    cm->add_option("--J", o.J, "Highest difference order")->check(CLI::NonNegativeNumber);
    cm->add_option("--tol", o.tol, "Tolerance (default 1e-9 max|u|, 0 for exact input)");

    auto* classify = app.add_subcommand("classify", "Support verdict, masses, E Y and E J");
    add_dist(classify, true);
    classify->add_option("--tol", o.tol, "Quadrature tolerance");

    auto* cex = app.add_subcommand("counterexample", "Two-piece measure with mass on (1, 1 + alpha)");
    cex->add_option("--alpha", o.alpha, "alpha in (0, 1)")->required();
    cex->add_option("--beta", o.beta, "beta in (0, 1)")->required();
    cex->add_option("--K", o.K, "Tail order (default 10)");
    cex->add_option("--J", o.J, "Highest difference order (default K)");

    auto* surv = app.add_subcommand("survival", "Shock-model survival on a time grid");
    add_dist(surv, true);
    surv->add_option("--lambda", o.lambda, "Shock intensity");
    add_list(surv, "--t", o.t, "Comma-separated times");
    surv->add_option("--tol", o.tol, "Poisson series tolerance");
    surv->add_option("--K", o.K, "Tail order (default: enough for the grid)")->check(CLI::NonNegativeNumber);
    surv->add_option("--delta", o.delta, "Also check the skeleton S(n delta) for complete monotonicity");
    surv->add_option("--J", o.J, "Skeleton difference order (default 10)");

    auto* lap = app.add_subcommand("laplace", "Laplace-Stieltjes transform of the failure time");
    add_dist(lap, true);
    add_list(lap, "--lambda", o.lambdas, "Comma-separated intensities");
    add_list(lap, "--s", o.s, "Comma-separated transform arguments");
    lap->add_option("--tol", o.tol, "Quadrature tolerance");

    auto* bounds = app.add_subcommand("bounds", "Geometric bounds on phi or Laplace-order bounds");
    add_dist(bounds, true);
    add_list(bounds, "--z", o.z, "Comma-separated z values in (0, 1)");
    add_list(bounds, "--lambda", o.lambdas, "Comma-separated intensities");
    add_list(bounds, "--s", o.s, "Comma-separated transform arguments");
    bounds->get_option("--z")->excludes(bounds->get_option("--lambda"));
    bounds->get_option("--z")->excludes(bounds->get_option("--s"));
    bounds->add_option("--tol", o.tol, "Quadrature tolerance");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo of failure times or the coin construction");
    add_dist(sim, true);
    sim->add_option("--mode", o.mode, "failure or definetti")
        ->check(CLI::IsMember({"failure", "definetti"}));
    sim->add_option("--n", o.n, "Replicates")->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed, "Seed");
    sim->add_option("--workers", o.workers, "Threads")->check(CLI::Range(1U, 256U));
    sim->add_option("--lambda", o.lambda, "Shock intensity (failure mode)");
    add_list(sim, "--t", o.t, "Comma-separated times (failure mode)");
    add_list(sim, "--z", o.z, "Comma-separated z values in (0, 1] (definetti mode)");
    sim->add_option("--K", o.K, "Tabulated tail order (failure mode)");
    sim->add_option("--tail-model", o.tail_model, "none, geometric or harmonic")
        ->check(CLI::IsMember({"none", "geometric", "harmonic"}));
    sim->add_option("--tol", o.tol, "Tolerance for the analytic column");

    try {
        std::vector<std::string> args = expand_config(raw_args);
        if (!args.empty() && args.front().rfind('-', 0) != 0 &&
            std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
            throw validation_error("subcommand: unknown subcommand '" + args.front() + "'");
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);

        const bool as_json = o.format == "json";
        std::ostringstream buffer;
        if (pgf->parsed()) {
            run_pgf(o, as_json, buffer);
        } else if (tail->parsed()) {
            run_tail(o, as_json, buffer);
        } else if (cm->parsed()) {
            run_cm_check(o, as_json, buffer);
        } else if (classify->parsed()) {
            run_classify(o, as_json, buffer);
        } else if (cex->parsed()) {
            run_counterexample(o, as_json, buffer);
        } else if (surv->parsed()) {
            run_survival(o, as_json, buffer);
        } else if (lap->parsed()) {
            run_laplace(o, as_json, buffer);
        } else if (bounds->parsed()) {
            run_bounds(o, as_json, buffer);
        } else if (sim->parsed()) {
            run_simulate(o, as_json, buffer);
        }

        if (o.out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(o.out_path, std::ios::binary);
            if (!file || !(file << buffer.str())) {
                throw validation_error("--out: cannot write '" + o.out_path + "'");
            }
        }
        return kExitOk;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "pgfmix: error: " << one_line(e.what()) << '\n';
        return kExitValidation;
    } catch (const numeric_failure& e) {
        err << "pgfmix: numeric failure: " << one_line(e.what()) << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        err << "pgfmix: error: " << one_line(e.what()) << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "pgfmix: internal error: " << one_line(e.what()) << '\n';
        return kExitInternal;
    }
}

} // namespace pgfmix::cli
