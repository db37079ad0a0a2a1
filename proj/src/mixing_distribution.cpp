#include "pgfmix/mixing_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pgfmix {

namespace {

constexpr double kMassTolerance = 1e-12;

bool is_zero(const Value& v) {
    return v.is_exact() ? v.rational() == 0 : v.to_double() == 0.0;
}

void require_finite_nonnegative(const Value& v, const std::string& field) {
    if (!std::isfinite(v.to_double())) {
        throw std::invalid_argument(field + " must be finite");
    }
    if (compare(v, Value::exact(0)) < 0) {
        throw std::invalid_argument(field + " must be non-negative, got " + to_string(v));
    }
}

Value scaled(const Value& v, const Value& s) {
    return v * s;
}

} // namespace

Value Segment::mass() const {
    return density * (hi - lo);
}

MixingDistribution::MixingDistribution(std::vector<Atom> atoms, std::vector<Segment> segments) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto& a = atoms[i];
        std::string field = "atoms[" + std::to_string(i) + "]";
        require_finite_nonnegative(a.y, field + ".y");
        require_finite_nonnegative(a.mass, field + ".p");
        if (is_zero(a.mass)) {
            continue;
        }
        if (is_zero(a.y)) {
            throw std::invalid_argument(field + ".y: mass at 0 is not allowed");
        }
        exact_ = exact_ && a.y.is_exact() && a.mass.is_exact();
        atoms_.push_back(a);
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        std::string field = "segments[" + std::to_string(i) + "]";
        require_finite_nonnegative(s.lo, field + ".lo");
        require_finite_nonnegative(s.hi, field + ".hi");
        require_finite_nonnegative(s.density, field + ".density");
        if (compare(s.lo, s.hi) >= 0) {
            throw std::invalid_argument(field + ": lo must be below hi");
        }
        if (is_zero(s.density)) {
            continue;
        }
        exact_ = exact_ && s.lo.is_exact() && s.hi.is_exact() && s.density.is_exact();
        segments_.push_back(s);
    }

    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return compare(a.y, b.y) < 0; });
    std::sort(segments_.begin(), segments_.end(),
              [](const Segment& a, const Segment& b) { return compare(a.lo, b.lo) < 0; });
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (compare(segments_[i].lo, segments_[i - 1].hi) < 0) {
            throw std::invalid_argument("segments overlap at " + to_string(segments_[i].lo));
        }
    }

    Value total = Value::exact(0);
    for (const auto& a : atoms_) {
        total = total + a.mass;
    }
    for (const auto& s : segments_) {
        total = total + s.mass();
    }
    if (total.is_exact()) {
        if (total.rational() != 1) {
            throw std::invalid_argument("total mass must be 1, got " + to_string(total));
        }
    } else if (std::abs(total.to_double() - 1.0) > kMassTolerance) {
        throw std::invalid_argument("total mass must be 1, got " + to_string(total));
    }
}

MixingDistribution MixingDistribution::point_mass(const Rational& y) {
    return MixingDistribution({Atom{Value::exact(y), Value::exact(1)}}, {});
}

MixingDistribution MixingDistribution::uniform(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("uniform: lo must be below hi");
    }
    return MixingDistribution(
        {}, {Segment{Value::exact(lo), Value::exact(hi), Value::exact(Rational(1) / (hi - lo))}});
}

double MixingDistribution::support_max() const {
    double m = 0.0;
    for (const auto& a : atoms_) {
        m = std::max(m, a.y.to_double());
    }
    for (const auto& s : segments_) {
        m = std::max(m, s.hi.to_double());
    }
    return m;
}

Value mass_on(const MixingDistribution& q, const Interval& iv) {
    const Value lo = Value::exact(iv.lo);
    Value total = Value::exact(0);
    for (const auto& a : q.atoms()) {
        int c_lo = compare(a.y, lo);
        bool above_lo = c_lo > 0 || (c_lo == 0 && iv.lo_closed);
        bool below_hi = true;
        if (iv.hi) {
            int c_hi = compare(a.y, Value::exact(*iv.hi));
            below_hi = c_hi < 0 || (c_hi == 0 && iv.hi_closed);
        }
        if (above_lo && below_hi) {
            total = total + a.mass;
        }
    }
    for (const auto& s : q.segments()) {
        Value left = compare(s.lo, lo) > 0 ? s.lo : lo;
        Value right = s.hi;
        if (iv.hi) {
            Value hi = Value::exact(*iv.hi);
            if (compare(hi, right) < 0) {
                right = hi;
            }
        }
        if (compare(left, right) < 0) {
            total = total + s.density * (right - left);
        }
    }
    return total;
}

MixingDistribution scale_locations(const MixingDistribution& q, const Rational& scale) {
    if (!(scale > 0)) {
        throw std::invalid_argument("scale must be positive");
    }
    const Value s = Value::exact(scale);
    std::vector<Atom> atoms;
    for (const auto& a : q.atoms()) {
        atoms.push_back({scaled(a.y, s), a.mass});
    }
    std::vector<Segment> segments;
    for (const auto& seg : q.segments()) {
        segments.push_back({scaled(seg.lo, s), scaled(seg.hi, s), seg.density / s});
    }
    return MixingDistribution(std::move(atoms), std::move(segments));
}

MixingDistribution scale_locations(const MixingDistribution& q, double scale) {
    if (!(scale > 0) || !std::isfinite(scale)) {
        throw std::invalid_argument("scale must be positive");
    }
    const Value s = Value::approx(scale);
    std::vector<Atom> atoms;
    for (const auto& a : q.atoms()) {
        atoms.push_back({scaled(a.y, s), a.mass});
    }
    std::vector<Segment> segments;
    for (const auto& seg : q.segments()) {
        segments.push_back({scaled(seg.lo, s), scaled(seg.hi, s), seg.density / s});
    }
    return MixingDistribution(std::move(atoms), std::move(segments));
}

} // namespace pgfmix
