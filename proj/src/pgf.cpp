#include "pgfmix/pgf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pgfmix/integrate.hpp"
#include "pgfmix/sdfr.hpp"

namespace pgfmix {

namespace {

void require_open_unit(double z, const char* who) {
    if (!(z > 0.0 && z < 1.0)) {
        throw std::invalid_argument(std::string(who) + ": z must lie in (0, 1), got " +
                                    format_double(z));
    }
}

// Accumulates (1 - y)^k term by term; far cheaper than one integral per k.
struct ExactTailBuilder {
    const MixingDistribution& q;

    std::vector<Rational> build(int order) const {
        std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
        for (const auto& a : q.atoms()) {
            const Rational base = 1 - a.y.rational();
            Rational power = a.mass.rational();
            for (auto& v : out) {
                v += power;
                power *= base;
            }
        }
        for (const auto& s : q.segments()) {
            const Rational base_lo = 1 - s.lo.rational();
            const Rational base_hi = 1 - s.hi.rational();
            Rational p_lo = base_lo;
            Rational p_hi = base_hi;
            for (std::size_t k = 0; k < out.size(); ++k) {
                out[k] += s.density.rational() * (p_lo - p_hi) / static_cast<unsigned>(k + 1);
                p_lo *= base_lo;
                p_hi *= base_hi;
            }
        }
        return out;
    }
};

Rational binomial(unsigned n, unsigned k) {
    Rational r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

} // namespace

double kernel(double y, double z) {
    if (!(y >= 0.0)) {
        throw std::invalid_argument("kernel: y must be non-negative");
    }
    if (!(z > 0.0 && z <= 1.0)) {
        throw std::invalid_argument("kernel: z must lie in (0, 1]");
    }
    if (std::isinf(y)) {
        return 1.0;
    }
    if (y == 0.0) {
        return 0.0;
    }
    return z * y / (1.0 + z * (y - 1.0));
}

double pgf_eval(const MixingDistribution& q, double z, double tol) {
    require_open_unit(z, "pgf");
    return integrate(q, integrand::PgfKernel{z}, {tol}).value;
}

TailSequence tail_sequence(const MixingDistribution& q, int order, bool prefer_exact) {
    if (order < 0) {
        throw std::invalid_argument("tail order must be non-negative");
    }
    if (q.is_exact() && prefer_exact) {
        return {Sequence(ExactTailBuilder{q}.build(order))};
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        out.push_back(integrate(q, integrand::PowerOfA{k}).value);
    }
    return {Sequence(std::move(out))};
}

PmfSequence pmf_from_tail(const TailSequence& tail) {
    const auto validity = tail_validity(tail.values);
    if (!validity.valid) {
        throw std::invalid_argument("invalid tail: " + validity.reason);
    }
    const std::size_t n = tail.values.size();
    if (tail.exact()) {
        const auto& u = tail.values.rationals();
        std::vector<Rational> q(n);
        q[0] = 1 - u[0];
        for (std::size_t i = 1; i < n; ++i) {
            q[i] = u[i - 1] - u[i];
        }
        return {Sequence(std::move(q))};
    }
    const auto u = tail.values.doubles();
    std::vector<double> q(n);
    q[0] = 1.0 - u[0];
    for (std::size_t i = 1; i < n; ++i) {
        q[i] = u[i - 1] - u[i];
    }
    return {Sequence(std::move(q))};
}

TailSequence tail_from_pmf(const PmfSequence& pmf) {
    const std::size_t n = pmf.values.size();
    if (pmf.exact()) {
        const auto& q = pmf.values.rationals();
        std::vector<Rational> u(n);
        Rational acc = 1;
        for (std::size_t i = 0; i < n; ++i) {
            acc -= q[i];
            u[i] = acc;
        }
        return {Sequence(std::move(u))};
    }
    const auto q = pmf.values.doubles();
    std::vector<double> u(n);
    double acc = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc -= q[i];
        u[i] = acc;
    }
    return {Sequence(std::move(u))};
}

double resistance_gf(const MixingDistribution& q, double z, double tol) {
    require_open_unit(z, "resistance_gf");
    return (1.0 - pgf_eval(q, z, tol)) / (1.0 - z);
}

Sequence reflected_pgf_coefficients(const PmfSequence& pmf, int order, double tail_tolerance) {
    if (order < 0) {
        throw std::invalid_argument("order must be non-negative");
    }
    const std::size_t n = pmf.values.size();
    if (n == 0) {
        throw std::invalid_argument("empty pmf");
    }
    const auto& values = pmf.values;
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i] < 0.0) {
            throw std::invalid_argument("pmf entry " + std::to_string(i) + " is negative");
        }
    }

    if (pmf.exact()) {
        const auto& q = values.rationals();
        Rational missing = 1;
        for (const auto& x : q) {
            missing -= x;
        }
        if (missing < 0) {
            throw std::invalid_argument("pmf sums to more than 1");
        }
        if (missing > 0 && (to_double(missing) > tail_tolerance ||
                            static_cast<std::size_t>(order) >= n)) {
            throw std::invalid_argument("insufficient tail decay for order " +
                                        std::to_string(order));
        }
        std::vector<Rational> c(static_cast<std::size_t>(order) + 1, Rational(0));
        for (std::size_t k = 0; k < c.size() && k < n; ++k) {
            Rational sum = 0;
            for (std::size_t m = k; m < n; ++m) {
                sum += binomial(static_cast<unsigned>(m), static_cast<unsigned>(k)) * q[m];
            }
            c[k] = (k % 2 == 0) ? sum : Rational(-sum);
        }
        return Sequence(std::move(c));
    }

    const auto q = values.doubles();
    double missing = 1.0;
    for (double x : q) {
        missing -= x;
    }
    if (missing > tail_tolerance ||
        (missing > 0.0 && static_cast<std::size_t>(order) >= n)) {
        throw std::invalid_argument("insufficient tail decay for order " + std::to_string(order));
    }
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t k = 0; k < c.size() && k < n; ++k) {
        double sum = 0.0;
        for (std::size_t m = k; m < n; ++m) {
            sum += std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(m - k + 1.0)) * q[m];
        }
        c[k] = (k % 2 == 0) ? sum : -sum;
    }
    return Sequence(std::move(c));
}

Sequence geometric_reflected_pgf_coefficients(const Rational& p, int order) {
    if (!(p > 0 && p <= 1)) {
        throw std::invalid_argument("success probability must lie in (0, 1]");
    }
    if (order < 0) {
        throw std::invalid_argument("order must be non-negative");
    }
    const Rational fail = 1 - p;
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    Rational fail_pow = 1;    // (1 - p)^k
    Rational series = 1 / p;  // sum_j C(k + j, k) (1 - p)^j = p^-(k + 1)
    for (int k = 0; k <= order; ++k) {
        Rational ck = p * fail_pow * series;
        c.push_back(k % 2 == 0 ? ck : Rational(-ck));
        fail_pow *= fail;
        series /= p;
    }
    return Sequence(std::move(c));
}

PmfSequence geometric_pmf(const Rational& p, int last) {
    if (!(p > 0 && p <= 1)) {
        throw std::invalid_argument("success probability must lie in (0, 1]");
    }
    std::vector<Rational> q;
    Rational term = p;
    for (int n = 0; n <= last; ++n) {
        q.push_back(term);
        term *= 1 - p;
    }
    return {Sequence(std::move(q))};
}

} // namespace pgfmix
