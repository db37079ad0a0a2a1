#pragma once

#include "pgfmix/mixing_distribution.hpp"
#include "pgfmix/random.hpp"

namespace pgfmix::families {

// Seeded generators of exact mixing measures used by the property and
// acceptance tests. Atoms sit at rationals with denominator <= 32, segment
// endpoints on the grid of eighths, and every mass is rational.

// Support inside (0, 1]: up to three atoms and up to two segments.
MixingDistribution unit_support(SplitMix64& rng);

// Positive mass (1/16 to 1/2) on (1, 1 + alpha) with alpha <= 1/4 plus a
// unit-interval part carrying a density on [0, h). Tails of these measures
// are usually, but not always, valid; callers filter with tail_validity.
MixingDistribution mass_in_one_two(SplitMix64& rng);

// Mass 1/3 or 2/3 on a single atom in [2, 4] plus a unit-interval part.
MixingDistribution mass_beyond_two(SplitMix64& rng);

} // namespace pgfmix::families
