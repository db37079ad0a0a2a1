#include "pgfmix/families.hpp"

#include <vector>

namespace pgfmix::families {

namespace {

Rational random_unit_atom_location(SplitMix64& rng) {
    const auto den = rng.uniform_int(1, 32);
    const auto num = rng.uniform_int(1, den);
    return Rational(num, den);
}

struct Piece {
    bool is_atom = true;
    Rational a; // atom location, or segment lo
    Rational b; // segment hi
    Rational weight;
};

// Unit-interval pieces with unnormalised integer weights.
std::vector<Piece> unit_pieces(SplitMix64& rng) {
    std::vector<Piece> pieces;
    const auto n_atoms = rng.uniform_int(0, 3);
    for (std::int64_t i = 0; i < n_atoms; ++i) {
        pieces.push_back({true, random_unit_atom_location(rng), 0, rng.uniform_int(1, 8)});
    }
    auto n_segments = rng.uniform_int(0, 2);
    if (n_atoms == 0 && n_segments == 0) {
        n_segments = 1;
    }
    if (n_segments == 1) {
        const auto lo = rng.uniform_int(0, 6);
        const auto hi = rng.uniform_int(lo + 1, 8);
        pieces.push_back({false, Rational(lo, 8), Rational(hi, 8), rng.uniform_int(1, 8)});
    } else if (n_segments == 2) {
        // One segment inside [0, 1/2], the other inside [1/2, 1].
        const auto lo1 = rng.uniform_int(0, 3);
        const auto hi1 = rng.uniform_int(lo1 + 1, 4);
        const auto lo2 = rng.uniform_int(4, 7);
        const auto hi2 = rng.uniform_int(lo2 + 1, 8);
        pieces.push_back({false, Rational(lo1, 8), Rational(hi1, 8), rng.uniform_int(1, 8)});
        pieces.push_back({false, Rational(lo2, 8), Rational(hi2, 8), rng.uniform_int(1, 8)});
    }
    return pieces;
}

// Builds a distribution from pieces scaled so their weights sum to `total`.
void append_scaled(const std::vector<Piece>& pieces, const Rational& total,
                   std::vector<Atom>& atoms, std::vector<Segment>& segments) {
    Rational sum = 0;
    for (const auto& p : pieces) {
        sum += p.weight;
    }
    for (const auto& p : pieces) {
        const Rational mass = total * p.weight / sum;
        if (p.is_atom) {
            atoms.push_back({Value::exact(p.a), Value::exact(mass)});
        } else {
            segments.push_back(
                {Value::exact(p.a), Value::exact(p.b), Value::exact(Rational(mass / (p.b - p.a)))});
        }
    }
}

// Merges atoms that landed on the same location.
std::vector<Atom> merge_atoms(const std::vector<Atom>& atoms) {
    std::vector<Atom> out;
    for (const auto& a : atoms) {
        bool merged = false;
        for (auto& o : out) {
            if (o.y == a.y) {
                o.mass = o.mass + a.mass;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.push_back(a);
        }
    }
    return out;
}

} // namespace

MixingDistribution unit_support(SplitMix64& rng) {
    std::vector<Atom> atoms;
    std::vector<Segment> segments;
    append_scaled(unit_pieces(rng), 1, atoms, segments);
    return MixingDistribution(merge_atoms(atoms), std::move(segments));
}

MixingDistribution mass_in_one_two(SplitMix64& rng) {
    const Rational w(rng.uniform_int(1, 8), 16);
    const Rational alpha(rng.uniform_int(1, 8), 32);
    const Rational h(rng.uniform_int(2, 4), 4);
    std::vector<Atom> atoms;
    std::vector<Segment> segments;
    if (rng.uniform_int(0, 1) == 0) {
        atoms.push_back({Value::exact(Rational(1 + alpha)), Value::exact(w)});
    } else {
        segments.push_back({Value::exact(1), Value::exact(Rational(1 + alpha)),
                            Value::exact(Rational(w / alpha))});
    }
    Rational rest = 1 - w;
    if (rng.uniform_int(0, 1) == 0) {
        const Rational y = random_unit_atom_location(rng);
        const Rational p = rest * Rational(rng.uniform_int(0, 4), 8);
        if (p > 0) {
            atoms.push_back({Value::exact(y), Value::exact(p)});
            rest -= p;
        }
    }
    segments.push_back({Value::exact(0), Value::exact(h), Value::exact(Rational(rest / h))});
    return MixingDistribution(std::move(atoms), std::move(segments));
}

MixingDistribution mass_beyond_two(SplitMix64& rng) {
    const Rational w(rng.uniform_int(1, 2), 3);
    const Rational y_far = 2 + Rational(rng.uniform_int(0, 16), 8);
    std::vector<Atom> atoms{{Value::exact(y_far), Value::exact(w)}};
    std::vector<Segment> segments;
    Rational rest = 1 - w;
    const Rational y = random_unit_atom_location(rng);
    const Rational p = rest * Rational(rng.uniform_int(0, 4), 8);
    if (p > 0) {
        atoms.push_back({Value::exact(y), Value::exact(p)});
        rest -= p;
    }
    const Rational h(rng.uniform_int(2, 4), 4);
    segments.push_back({Value::exact(0), Value::exact(h), Value::exact(Rational(rest / h))});
    return MixingDistribution(std::move(atoms), std::move(segments));
}

} // namespace pgfmix::families
