#include "pgfmix/sdfr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pgfmix/integrate.hpp"
#include "pgfmix/pgf.hpp"

namespace pgfmix {

namespace {

constexpr double kTailSlack = 1e-12;

template <class T>
std::vector<T> next_row(const std::vector<T>& row) {
    std::vector<T> out;
    out.reserve(row.size() - 1);
    for (std::size_t k = 0; k + 1 < row.size(); ++k) {
        out.push_back(row[k] - row[k + 1]);
    }
    return out;
}

} // namespace

DifferenceTable::DifferenceTable(const Sequence& u, int max_order) : exact_(u.is_exact()) {
    if (max_order < 0) {
        throw std::invalid_argument("difference order must be non-negative");
    }
    if (u.size() < static_cast<std::size_t>(max_order) + 1) {
        throw std::invalid_argument("difference order " + std::to_string(max_order) +
                                    " needs at least " + std::to_string(max_order + 1) +
                                    " terms, got " + std::to_string(u.size()));
    }
    rows_.push_back(u);
    for (int j = 1; j <= max_order; ++j) {
        const Sequence& prev = rows_.back();
        if (exact_) {
            rows_.emplace_back(next_row(prev.rationals()));
        } else {
            rows_.emplace_back(next_row(prev.doubles()));
        }
    }
}

CmVerdict is_completely_monotone(const DifferenceTable& table, double tol) {
    if (!(tol >= 0.0)) {
        throw std::invalid_argument("tol must be non-negative");
    }
    const Rational threshold = table.exact() ? Rational(-Rational(tol)) : Rational(0);
    for (int j = 0; j <= table.max_order(); ++j) {
        const Sequence& row = table.row(j);
        if (table.exact()) {
            const auto& r = row.rationals();
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (r[k] < threshold) {
                    return {false, TableIndex{j, static_cast<int>(k)}};
                }
            }
        } else {
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k] < -tol) {
                    return {false, TableIndex{j, static_cast<int>(k)}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

CmVerdict is_completely_monotone(const Sequence& u, int max_order, double tol) {
    return is_completely_monotone(DifferenceTable(u, max_order), tol);
}

double default_cm_tolerance(const Sequence& u) {
    if (u.is_exact()) {
        return 0.0;
    }
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        m = std::max(m, std::abs(u[i]));
    }
    return 1e-9 * m;
}

TailValidity tail_validity(const Sequence& u) {
    if (u.empty()) {
        return {false, "empty sequence"};
    }
    if (u.is_exact()) {
        const auto& r = u.rationals();
        if (r[0] != 1) {
            return {false, "u_0 = " + to_fraction_string(r[0]) + " is not 1"};
        }
        for (std::size_t k = 1; k < r.size(); ++k) {
            if (r[k] < 0) {
                return {false, "u_" + std::to_string(k) + " is negative"};
            }
            if (r[k] > r[k - 1]) {
                return {false, "u_" + std::to_string(k) + " exceeds u_" + std::to_string(k - 1)};
            }
        }
        return {true, {}};
    }
    const auto d = u.doubles();
    if (std::abs(d[0] - 1.0) > kTailSlack) {
        return {false, "u_0 = " + format_double(d[0]) + " is not 1"};
    }
    for (std::size_t k = 1; k < d.size(); ++k) {
        if (!std::isfinite(d[k])) {
            return {false, "u_" + std::to_string(k) + " is not finite"};
        }
        if (d[k] < -kTailSlack) {
            return {false, "u_" + std::to_string(k) + " is negative"};
        }
        if (d[k] > d[k - 1] + kTailSlack) {
            return {false, "u_" + std::to_string(k) + " exceeds u_" + std::to_string(k - 1)};
        }
    }
    return {true, {}};
}

std::string to_string(SupportVerdict v) {
    switch (v) {
    case SupportVerdict::not_pgf_mass_at_or_beyond_2:
        return "not_pgf_mass_at_or_beyond_2";
    case SupportVerdict::sdfr_support_in_unit:
        return "sdfr_support_in_unit";
    case SupportVerdict::candidate_mass_in_1_2:
        return "candidate_mass_in_1_2";
    }
    return "unknown";
}

SupportClassification classify_support(const MixingDistribution& q) {
    SupportClassification c;
    c.m01 = mass_on(q, Interval::left_open(0, 1));
    c.m12 = mass_on(q, Interval::open(1, Rational(2)));
    c.m2 = mass_on(q, Interval::right_open(2, std::nullopt));
    const Value zero = Value::exact(0);
    if (compare(c.m2, zero) > 0) {
        c.verdict = SupportVerdict::not_pgf_mass_at_or_beyond_2;
    } else if (compare(c.m12, zero) > 0) {
        c.verdict = SupportVerdict::candidate_mass_in_1_2;
    } else {
        c.verdict = SupportVerdict::sdfr_support_in_unit;
    }
    return c;
}

double ExpectedShocks::to_double() const {
    return value ? value->to_double() : std::numeric_limits<double>::infinity();
}

ExpectedShocks expected_shocks(const MixingDistribution& q, double tol) {
    const Integral r = integrate(q, integrand::Reciprocal{}, {tol});
    if (r.diverges) {
        return {};
    }
    return {r.exact ? Value::exact(*r.exact) : Value::approx(r.value)};
}

Value expected_mixing_value(const MixingDistribution& q) {
    const Integral r = integrate(q, integrand::Identity{});
    return r.exact ? Value::exact(*r.exact) : Value::approx(r.value);
}

PgfBounds pgf_bounds(const MixingDistribution& q, double z, double tol) {
    if (!(z > 0.0 && z < 1.0)) {
        throw std::invalid_argument("bounds: z must lie in (0, 1), got " + format_double(z));
    }
    const ExpectedShocks ej = expected_shocks(q, tol);
    const Value ey = expected_mixing_value(q);
    PgfBounds b;
    b.z = z;
    // Forms chosen so that E J = 1 and E Y = 1 return z exactly.
    b.lower = ej.finite() ? z / (1.0 + (1.0 - z) * (ej.to_double() - 1.0)) : 0.0;
    b.upper = z * ey.to_double() / (1.0 + z * (ey.to_double() - 1.0));
    b.upper_is_pgf = compare(ey, Value::exact(1)) <= 0;
    b.phi = pgf_eval(q, z, tol);
    return b;
}

PgfBounds laplace_order_bounds(const MixingDistribution& q, double lambda, double s,
                               double tol) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::invalid_argument("s must be positive");
    }
    return pgf_bounds(q, lambda / (lambda + s), tol);
}

} // namespace pgfmix
