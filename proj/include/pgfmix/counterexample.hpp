#pragma once

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/rational.hpp"

namespace pgfmix {

// Parameters of the two-piece mixing measure
//   density (1 - beta) on [0, 1),  density beta / alpha on [1, 1 + alpha),
// i.e. Y = 1 - V where V has density beta/alpha on [-alpha, 0) and
// 1 - beta on [0, 1). Both parameters must lie in (0, 1).
class CounterexampleParams {
public:
    CounterexampleParams(Rational alpha, Rational beta);

    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

    // Sufficient condition for a valid tail: beta >= 1/3 and alpha < 2/7.
    bool admissible() const;

private:
    Rational alpha_;
    Rational beta_;
};

MixingDistribution counterexample_q(const CounterexampleParams& p);

// Closed form P_k = (1 - beta)/(k + 1) + (-1)^k beta alpha^k / (k + 1).
Rational counterexample_tail(const CounterexampleParams& p, int k);

struct MonotonicityCheck {
    Rational lhs;
    Rational rhs;
    bool holds = false;
};

// Both sides of the odd-to-even monotonicity requirement
//   beta alpha^(2n+1) (2n(1 + alpha) + 3 + 2 alpha) <= 1 - beta,
// which is equivalent to P_{2n+1} >= P_{2n+2}.
MonotonicityCheck monotonicity_condition(const CounterexampleParams& p, int n);

} // namespace pgfmix
