#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/sequence.hpp"

namespace pgfmix {

// Iterated forward differences with the sign convention du_k = u_k - u_{k+1},
// so a sequence is completely monotone iff every entry is non-negative.
// Row j holds d^j u_k for k = 0..K-j.
class DifferenceTable {
public:
    // Throws std::invalid_argument if u has fewer than max_order + 1 terms.
    DifferenceTable(const Sequence& u, int max_order);

    int max_order() const { return static_cast<int>(rows_.size()) - 1; }
    bool exact() const { return exact_; }
    const Sequence& row(int j) const { return rows_.at(static_cast<std::size_t>(j)); }
    Value entry(int j, int k) const { return row(j).at(static_cast<std::size_t>(k)); }

private:
    std::vector<Sequence> rows_;
    bool exact_ = false;
};

struct TableIndex {
    int order = 0; // j
    int index = 0; // k
};

struct CmVerdict {
    bool completely_monotone = false;
    std::optional<TableIndex> first_violation; // lexicographically smallest (j, k)
};

// True iff every entry of the difference table is >= -tol. Exact inputs are
// compared exactly against -tol.
CmVerdict is_completely_monotone(const Sequence& u, int max_order, double tol);
CmVerdict is_completely_monotone(const DifferenceTable& table, double tol);

// Default float tolerance 1e-9 * max |u_k|; 0 for exact sequences.
double default_cm_tolerance(const Sequence& u);

struct TailValidity {
    bool valid = false;
    std::string reason; // empty when valid
};

// u_0 = 1, u_k >= 0 and u_{k+1} <= u_k over the available terms. Float
// sequences are checked with an absolute slack of 1e-12.
TailValidity tail_validity(const Sequence& u);

enum class SupportVerdict {
    not_pgf_mass_at_or_beyond_2,
    sdfr_support_in_unit,
    candidate_mass_in_1_2,
};

std::string to_string(SupportVerdict v);

struct SupportClassification {
    SupportVerdict verdict{};
    Value m01; // Q(0, 1]
    Value m12; // Q(1, 2)
    Value m2;  // Q[2, inf)
};

SupportClassification classify_support(const MixingDistribution& q);

// E J = integral of 1/y against q; nullopt when it diverges.
struct ExpectedShocks {
    std::optional<Value> value;

    bool finite() const { return value.has_value(); }
    double to_double() const;
};

ExpectedShocks expected_shocks(const MixingDistribution& q, double tol = 1e-12);

// E Y = integral of y against q.
Value expected_mixing_value(const MixingDistribution& q);

struct PgfBounds {
    double z = 0.0;
    double lower = 0.0;        // z / (z + (1 - z) E J); 0 when E J is infinite
    double upper = 0.0;        // z E Y / (1 - z + z E Y)
    bool upper_is_pgf = false; // the upper bound is a geometric p.g.f. only when E Y <= 1
    double phi = 0.0;
};

PgfBounds pgf_bounds(const MixingDistribution& q, double z, double tol = 1e-12);

// pgf_bounds at z = lambda / (lambda + s). `lower` is then the transform of
// an exponential with mean E J / lambda and `upper` that of an exponential
// with mean 1 / (lambda E Y); `phi` is the Laplace-Stieltjes transform L(s).
PgfBounds laplace_order_bounds(const MixingDistribution& q, double lambda, double s,
                               double tol = 1e-12);

} // namespace pgfmix
