#pragma once

#include <optional>
#include <vector>

#include "pgfmix/rational.hpp"

namespace pgfmix {

// Point mass `mass` at location `y` > 0.
struct Atom {
    Value y;
    Value mass;
};

// Constant density on [lo, hi).
struct Segment {
    Value lo;
    Value hi;
    Value density;

    Value mass() const;
};

// A probability measure on [0, inf) made of atoms and piecewise-constant
// density segments. Used for the mixing measure Q of the p.g.f. kernel and,
// with locations read as rates, for exponential mixtures.
//
// Construction validates:
//   - locations, lo and hi are non-negative and finite, lo < hi
//   - atom masses and densities are positive (zero-mass pieces are dropped)
//   - no atom at 0
//   - segments do not overlap
//   - total mass is 1 (exactly for exact inputs, within 1e-12 otherwise)
// and throws std::invalid_argument naming the offending field otherwise.
class MixingDistribution {
public:
    MixingDistribution(std::vector<Atom> atoms, std::vector<Segment> segments);

    static MixingDistribution point_mass(const Rational& y);
    static MixingDistribution uniform(const Rational& lo, const Rational& hi);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Segment>& segments() const { return segments_; }

    // True when every location, mass and density is an exact rational.
    bool is_exact() const { return exact_; }

    // Largest point of the closed support.
    double support_max() const;

private:
    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
    bool exact_ = true;
};

// An interval with optional infinite upper end and per-endpoint inclusion.
struct Interval {
    Rational lo;
    std::optional<Rational> hi; // nullopt means +inf
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval open(Rational lo, std::optional<Rational> hi) {
        return {std::move(lo), std::move(hi), false, false};
    }
    static Interval left_open(Rational lo, Rational hi) {
        return {std::move(lo), std::move(hi), false, true};
    }
    static Interval right_open(Rational lo, std::optional<Rational> hi) {
        return {std::move(lo), std::move(hi), true, false};
    }
};

// Measure of `interval` under q; exact when q is exact.
Value mass_on(const MixingDistribution& q, const Interval& interval);

// Pushes q forward through y -> scale * y (scale > 0).
MixingDistribution scale_locations(const MixingDistribution& q, const Rational& scale);
MixingDistribution scale_locations(const MixingDistribution& q, double scale);

} // namespace pgfmix
