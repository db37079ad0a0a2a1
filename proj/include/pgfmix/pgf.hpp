#pragma once

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/rational.hpp"
#include "pgfmix/sequence.hpp"

namespace pgfmix {

inline constexpr int kDefaultTailOrder = 200;

// H(y, z) = z y / (1 - z + z y) for y >= 0 and z in (0, 1]. Increasing and
// concave in y with H(0, z) = 0, H(1, z) = z and H -> 1 as y -> inf.
double kernel(double y, double z);

// phi(z) = integral of H(y, z) against q, for z in (0, 1).
double pgf_eval(const MixingDistribution& q, double z, double tol = 1e-12);

// Candidate tail sequence P_k = integral of (1 - y)^k against q, k = 0..order.
// Exact when q is exact and `prefer_exact` is set. No validity is implied:
// for mass at or beyond 2 the values grow and alternate.
TailSequence tail_sequence(const MixingDistribution& q, int order = kDefaultTailOrder,
                           bool prefer_exact = true);

// q_0 = 1 - P_0 and q_n = P_{n-1} - P_n. Throws std::invalid_argument when
// `tail` is not a valid tail (u_0 = 1, non-negative, non-increasing).
PmfSequence pmf_from_tail(const TailSequence& tail);

// Inverse of pmf_from_tail: P_k = 1 - (q_0 + ... + q_k).
TailSequence tail_from_pmf(const PmfSequence& pmf);

// M(z) = sum_k P_k z^k = (1 - phi(z)) / (1 - z), z in (0, 1).
double resistance_gf(const MixingDistribution& q, double z, double tol = 1e-12);

// Coefficients c_k, k = 0..order, of E(1 - z)^N = sum_k c_k z^k, computed
// directly as c_k = (-1)^k sum_{n >= k} C(n, k) q_n over the stored terms.
// The pmf may be truncated only if its missing mass 1 - sum q_n is at most
// `tail_tolerance`, and then `order` may not exceed the last stored index.
// Throws std::invalid_argument otherwise ("insufficient tail decay").
Sequence reflected_pgf_coefficients(const PmfSequence& pmf, int order,
                              double tail_tolerance = 1e-12);

// Same coefficients for the untruncated geometric pmf
// q_n = p (1 - p)^n, n >= 0, p in (0, 1]. The inner negative binomial series
// sum_j C(k + j, k) (1 - p)^j is summed in closed form as p^-(k + 1).
Sequence geometric_reflected_pgf_coefficients(const Rational& success_probability, int order);

// Truncated copy of the geometric pmf above (n = 0..last), exact.
PmfSequence geometric_pmf(const Rational& success_probability, int last);

} // namespace pgfmix
