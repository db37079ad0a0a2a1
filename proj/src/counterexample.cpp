#include "pgfmix/counterexample.hpp"

#include <stdexcept>

namespace pgfmix {

namespace {

Rational ipow(const Rational& base, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) {
        r *= base;
    }
    return r;
}

} // namespace

CounterexampleParams::CounterexampleParams(Rational alpha, Rational beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (!(alpha_ > 0 && alpha_ < 1)) {
        throw std::invalid_argument("alpha must lie in (0, 1), got " + to_fraction_string(alpha_));
    }
    if (!(beta_ > 0 && beta_ < 1)) {
        throw std::invalid_argument("beta must lie in (0, 1), got " + to_fraction_string(beta_));
    }
}

bool CounterexampleParams::admissible() const {
    return beta_ >= Rational(1, 3) && alpha_ < Rational(2, 7);
}

MixingDistribution counterexample_q(const CounterexampleParams& p) {
    const Rational one = 1;
    return MixingDistribution(
        {}, {Segment{Value::exact(0), Value::exact(one), Value::exact(one - p.beta())},
             Segment{Value::exact(one), Value::exact(one + p.alpha()),
                     Value::exact(p.beta() / p.alpha())}});
}

Rational counterexample_tail(const CounterexampleParams& p, int k) {
    if (k < 0) {
        throw std::invalid_argument("k must be non-negative");
    }
    const Rational sign = (k % 2 == 0) ? 1 : -1;
    return Rational((1 - p.beta()) / (k + 1) + sign * p.beta() * ipow(p.alpha(), k) / (k + 1));
}

MonotonicityCheck monotonicity_condition(const CounterexampleParams& p, int n) {
    if (n < 0) {
        throw std::invalid_argument("n must be non-negative");
    }
    const Rational& a = p.alpha();
    const Rational& b = p.beta();
    MonotonicityCheck out;
    out.lhs = b * ipow(a, 2 * n + 1) * (2 * n * (1 + a) + (3 + 2 * a));
    out.rhs = 1 - b;
    out.holds = out.lhs <= out.rhs;
    return out;
}

} // namespace pgfmix
