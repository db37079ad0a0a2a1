#include "pgfmix/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "pgfmix/quadrature.hpp"

namespace pgfmix {

namespace {

Rational ipow(Rational base, unsigned n) {
    Rational result = 1;
    while (n > 0) {
        if (n & 1U) {
            result *= base;
        }
        n >>= 1U;
        if (n > 0) {
            base *= base;
        }
    }
    return result;
}

void validate(const IntegrandSpec& f, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be positive");
    }
    std::visit(
        [](const auto& spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, integrand::PgfKernel>) {
                if (!(spec.z > 0.0 && spec.z < 1.0)) {
                    throw std::invalid_argument("pgf kernel: z must lie in (0, 1)");
                }
            } else if constexpr (std::is_same_v<T, integrand::PowerOfA>) {
                if (spec.k < 0) {
                    throw std::invalid_argument("power of a: k must be non-negative");
                }
            } else if constexpr (std::is_same_v<T, integrand::ExpDecay>) {
                if (!(spec.t >= 0.0) || !std::isfinite(spec.t)) {
                    throw std::invalid_argument("exp decay: t must be finite and non-negative");
                }
            } else if constexpr (std::is_same_v<T, integrand::Tabulated>) {
                if (spec.x.size() < 2 || spec.x.size() != spec.f.size()) {
                    throw std::invalid_argument("tabulated: need >= 2 nodes and matching values");
                }
                for (std::size_t i = 1; i < spec.x.size(); ++i) {
                    if (!(spec.x[i] > spec.x[i - 1])) {
                        throw std::invalid_argument("tabulated: nodes must increase strictly");
                    }
                }
            }
        },
        f);
}

double interpolate(const integrand::Tabulated& tab, double y) {
    auto it = std::upper_bound(tab.x.begin(), tab.x.end(), y);
    if (it == tab.x.begin()) {
        return tab.f.front();
    }
    if (it == tab.x.end()) {
        return tab.f.back();
    }
    std::size_t i = static_cast<std::size_t>(it - tab.x.begin());
    double w = (y - tab.x[i - 1]) / (tab.x[i] - tab.x[i - 1]);
    return tab.f[i - 1] + w * (tab.f[i] - tab.f[i - 1]);
}

// Pointwise evaluation of the integrand.
double evaluate(const IntegrandSpec& f, double y) {
    return std::visit(
        [y](const auto& spec) -> double {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, integrand::PgfKernel>) {
                // Written so that y = 1 returns z exactly.
                return spec.z * y / (1.0 + spec.z * (y - 1.0));
            } else if constexpr (std::is_same_v<T, integrand::PowerOfA>) {
                return std::pow(1.0 - y, spec.k);
            } else if constexpr (std::is_same_v<T, integrand::Reciprocal>) {
                return 1.0 / y;
            } else if constexpr (std::is_same_v<T, integrand::Identity>) {
                return y;
            } else if constexpr (std::is_same_v<T, integrand::ExpDecay>) {
                return std::exp(-y * spec.t);
            } else {
                return interpolate(spec, y);
            }
        },
        f);
}

std::optional<double> closed_form(const IntegrandSpec& f, double lo, double hi, double density) {
    if (const auto* p = std::get_if<integrand::PowerOfA>(&f)) {
        const double n = p->k + 1.0;
        return density * (std::pow(1.0 - lo, n) - std::pow(1.0 - hi, n)) / n;
    }
    if (std::holds_alternative<integrand::Identity>(f)) {
        return density * (hi - lo) * (hi + lo) / 2.0;
    }
    if (const auto* e = std::get_if<integrand::ExpDecay>(&f)) {
        if (e->t == 0.0) {
            return density * (hi - lo);
        }
        return density * std::exp(-lo * e->t) * -std::expm1(-(hi - lo) * e->t) / e->t;
    }
    return std::nullopt;
}

std::optional<Rational> exact_segment(const IntegrandSpec& f, const Segment& s) {
    const Rational& lo = s.lo.rational();
    const Rational& hi = s.hi.rational();
    const Rational& d = s.density.rational();
    if (const auto* p = std::get_if<integrand::PowerOfA>(&f)) {
        const unsigned n = static_cast<unsigned>(p->k) + 1;
        return Rational(d * (ipow(1 - lo, n) - ipow(1 - hi, n)) / n);
    }
    if (std::holds_alternative<integrand::Identity>(f)) {
        return Rational(d * (hi * hi - lo * lo) / 2);
    }
    return std::nullopt;
}

std::optional<Rational> exact_atom(const IntegrandSpec& f, const Atom& a) {
    const Rational& y = a.y.rational();
    const Rational& p = a.mass.rational();
    if (const auto* pa = std::get_if<integrand::PowerOfA>(&f)) {
        return Rational(p * ipow(1 - y, static_cast<unsigned>(pa->k)));
    }
    if (std::holds_alternative<integrand::Identity>(f)) {
        return Rational(p * y);
    }
    if (std::holds_alternative<integrand::Reciprocal>(f)) {
        return Rational(p / y);
    }
    return std::nullopt;
}

// Quadrature of density * f over [lo, hi), split at tabulation nodes.
double quadrature_segment(const IntegrandSpec& f, double lo, double hi, double density,
                          double tol) {
    std::vector<double> cuts{lo};
    if (const auto* tab = std::get_if<integrand::Tabulated>(&f)) {
        for (double x : tab->x) {
            if (x > lo && x < hi) {
                cuts.push_back(x);
            }
        }
    }
    cuts.push_back(hi);
    const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        sum += adaptive_gauss_legendre([&](double y) { return density * evaluate(f, y); },
                                       cuts[i - 1], cuts[i], piece_tol)
                   .value;
    }
    return sum;
}

void check_tabulated_domain(const IntegrandSpec& f, const MixingDistribution& q) {
    const auto* tab = std::get_if<integrand::Tabulated>(&f);
    if (!tab) {
        return;
    }
    auto inside = [tab](double y) { return y >= tab->x.front() && y <= tab->x.back(); };
    for (const auto& a : q.atoms()) {
        if (!inside(a.y.to_double())) {
            throw std::invalid_argument("tabulated: atom at " + to_string(a.y) +
                                        " lies outside the table");
        }
    }
    for (const auto& s : q.segments()) {
        if (!inside(s.lo.to_double()) || !inside(s.hi.to_double())) {
            throw std::invalid_argument("tabulated: segment outside the table");
        }
    }
}

} // namespace

Integral integrate(const MixingDistribution& q, const IntegrandSpec& f,
                   const IntegrateOptions& options) {
    validate(f, options.tol);
    check_tabulated_domain(f, q);

    const bool reciprocal = std::holds_alternative<integrand::Reciprocal>(f);
    if (reciprocal) {
        for (const auto& s : q.segments()) {
            if (s.lo.to_double() == 0.0) {
                return {std::numeric_limits<double>::infinity(), true, std::nullopt};
            }
        }
    }

    const bool exact_kind = std::holds_alternative<integrand::PowerOfA>(f) ||
                            std::holds_alternative<integrand::Identity>(f) ||
                            (reciprocal && q.segments().empty());
    if (q.is_exact() && exact_kind && !(options.force_quadrature && !q.segments().empty())) {
        Rational sum = 0;
        for (const auto& a : q.atoms()) {
            sum += *exact_atom(f, a);
        }
        for (const auto& s : q.segments()) {
            sum += *exact_segment(f, s);
        }
        Integral out;
        out.value = to_double(sum);
        out.exact = std::move(sum);
        return out;
    }

    double sum = 0.0;
    for (const auto& a : q.atoms()) {
        sum += a.mass.to_double() * evaluate(f, a.y.to_double());
    }
    const double seg_tol =
        options.tol / static_cast<double>(std::max<std::size_t>(1, q.segments().size()));
    for (const auto& s : q.segments()) {
        const double lo = s.lo.to_double();
        const double hi = s.hi.to_double();
        const double d = s.density.to_double();
        std::optional<double> cf;
        if (!options.force_quadrature) {
            cf = closed_form(f, lo, hi, d);
        }
        sum += cf ? *cf : quadrature_segment(f, lo, hi, d, seg_tol);
    }
    return {sum, false, std::nullopt};
}

double integrate_function(const MixingDistribution& q, const std::function<double(double)>& f,
                          double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be positive");
    }
    double sum = 0.0;
    for (const auto& a : q.atoms()) {
        sum += a.mass.to_double() * f(a.y.to_double());
    }
    const double seg_tol =
        tol / static_cast<double>(std::max<std::size_t>(1, q.segments().size()));
    for (const auto& s : q.segments()) {
        const double d = s.density.to_double();
        sum += adaptive_gauss_legendre([&](double y) { return d * f(y); }, s.lo.to_double(),
                                       s.hi.to_double(), seg_tol)
                   .value;
    }
    return sum;
}

} // namespace pgfmix
