#include "pgfmix/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pgfmix::io {

using nlohmann::json;

Value value_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
        return Value::exact(parse_rational(j.dump()));
    }
    if (j.is_number_float()) {
        return Value::approx(j.get<double>());
    }
    if (j.is_string()) {
        try {
            return Value::exact(parse_rational(j.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(field + ": " + e.what());
        }
    }
    throw std::invalid_argument(field + ": expected a number or a \"num/den\" string");
}

json value_to_json(const Value& v) {
    if (v.is_exact()) {
        return {{"value", to_fraction_string(v.rational())}, {"decimal", v.to_double()}};
    }
    return {{"value", v.to_double()}, {"decimal", v.to_double()}};
}

namespace {

json number_to_json(const Value& v) {
    if (v.is_exact()) {
        return to_fraction_string(v.rational());
    }
    return v.to_double();
}

const json& require(const json& obj, const char* key, const std::string& field) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw std::invalid_argument(field + ": missing \"" + key + "\"");
    }
    return obj.at(key);
}

} // namespace

MixingDistribution distribution_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("distribution: expected a JSON object");
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "atoms" && key != "segments") {
            throw std::invalid_argument("distribution: unknown field \"" + key + "\"");
        }
    }
    std::vector<Atom> atoms;
    std::vector<Segment> segments;
    if (j.contains("atoms")) {
        const json& arr = j.at("atoms");
        if (!arr.is_array()) {
            throw std::invalid_argument("atoms: expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string f = "atoms[" + std::to_string(i) + "]";
            atoms.push_back({value_from_json(require(arr[i], "y", f), f + ".y"),
                             value_from_json(require(arr[i], "p", f), f + ".p")});
        }
    }
    if (j.contains("segments")) {
        const json& arr = j.at("segments");
        if (!arr.is_array()) {
            throw std::invalid_argument("segments: expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string f = "segments[" + std::to_string(i) + "]";
            segments.push_back({value_from_json(require(arr[i], "lo", f), f + ".lo"),
                                value_from_json(require(arr[i], "hi", f), f + ".hi"),
                                value_from_json(require(arr[i], "density", f), f + ".density")});
        }
    }
    return MixingDistribution(std::move(atoms), std::move(segments));
}

json distribution_to_json(const MixingDistribution& q) {
    json atoms = json::array();
    for (const auto& a : q.atoms()) {
        atoms.push_back({{"y", number_to_json(a.y)}, {"p", number_to_json(a.mass)}});
    }
    json segments = json::array();
    for (const auto& s : q.segments()) {
        segments.push_back({{"lo", number_to_json(s.lo)},
                            {"hi", number_to_json(s.hi)},
                            {"density", number_to_json(s.density)}});
    }
    return {{"atoms", atoms}, {"segments", segments}};
}

MixingDistribution load_distribution(const std::string& text) {
    std::string body = text;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::ifstream in(text);
        if (!in) {
            throw std::invalid_argument("cannot open '" + text + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    return distribution_from_json(j);
}

void write_sequence_csv(std::ostream& os, const Sequence& s) {
    os << "k,value,decimal\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << k << ',' << to_string(s.at(k)) << ',' << format_double(s[k]) << '\n';
    }
}

json sequence_to_json(const Sequence& s) {
    json values = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) {
        json entry = value_to_json(s.at(k));
        entry["k"] = k;
        values.push_back(std::move(entry));
    }
    return {{"exact", s.is_exact()}, {"values", values}};
}

Sequence sequence_from_json(const json& j) {
    const json& values = require(j, "values", "sequence");
    if (!values.is_array()) {
        throw std::invalid_argument("sequence.values: expected an array");
    }
    bool exact = true;
    std::vector<Value> parsed;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string f = "sequence.values[" + std::to_string(i) + "]";
        const json& raw = values[i].is_object() ? require(values[i], "value", f) : values[i];
        parsed.push_back(value_from_json(raw, f));
        exact = exact && parsed.back().is_exact();
    }
    if (exact) {
        std::vector<Rational> r;
        for (const auto& v : parsed) {
            r.push_back(v.rational());
        }
        return Sequence(std::move(r));
    }
    std::vector<double> d;
    for (const auto& v : parsed) {
        d.push_back(v.to_double());
    }
    return Sequence(std::move(d));
}

void write_difference_table_csv(std::ostream& os, const DifferenceTable& table) {
    const std::size_t width = table.row(0).size();
    os << 'j';
    for (std::size_t k = 0; k < width; ++k) {
        os << ",k" << k;
    }
    os << '\n';
    for (int j = 0; j <= table.max_order(); ++j) {
        const Sequence& row = table.row(j);
        os << j;
        for (std::size_t k = 0; k < width; ++k) {
            os << ',';
            if (k < row.size()) {
                os << to_string(row.at(k));
            }
        }
        os << '\n';
    }
}

json difference_table_to_json(const DifferenceTable& table) {
    json rows = json::array();
    for (int j = 0; j <= table.max_order(); ++j) {
        json row = json::array();
        const Sequence& r = table.row(j);
        for (std::size_t k = 0; k < r.size(); ++k) {
            row.push_back(number_to_json(r.at(k)));
        }
        rows.push_back(std::move(row));
    }
    return {{"exact", table.exact()}, {"rows", rows}};
}

json cm_verdict_to_json(const CmVerdict& v) {
    json out = {{"completely_monotone", v.completely_monotone}, {"summary", describe(v)}};
    if (v.first_violation) {
        out["first_violation"] = {{"j", v.first_violation->order}, {"k", v.first_violation->index}};
    } else {
        out["first_violation"] = nullptr;
    }
    return out;
}

std::string describe(const CmVerdict& v) {
    if (v.completely_monotone) {
        return "true";
    }
    return "false (first violation order " + std::to_string(v.first_violation->order) + ")";
}

json classification_to_json(const SupportClassification& c) {
    return {{"verdict", to_string(c.verdict)},
            {"masses",
             {{"m01", value_to_json(c.m01)},
              {"m12", value_to_json(c.m12)},
              {"m2", value_to_json(c.m2)}}}};
}

void write_failure_simulation_csv(std::ostream& os, const std::vector<PointEstimate>& empirical,
                                  const std::vector<double>& analytic) {
    os << "t,empirical_survival,std_err,analytic_survival\n";
    for (std::size_t i = 0; i < empirical.size(); ++i) {
        os << format_double(empirical[i].at) << ',' << format_double(empirical[i].estimate) << ','
           << format_double(empirical[i].std_error) << ','
           << (i < analytic.size() ? format_double(analytic[i]) : std::string()) << '\n';
    }
}

void write_curve_csv(std::ostream& os, const std::string& x_name, const std::string& y_name,
                     const std::vector<double>& x, const std::vector<double>& y) {
    os << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        os << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
    }
}

} // namespace pgfmix::io
