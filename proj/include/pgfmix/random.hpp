#pragma once

#include <cstdint>
#include <limits>

namespace pgfmix {

// SplitMix64 (Steele, Lea, Flood). Small, fast and splittable: independent
// streams are derived with `split`, so work can be partitioned into blocks
// whose output does not depend on how the blocks are scheduled.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31U);
    }

    // Stream `index` of the generator seeded with `seed`.
    static SplitMix64 split(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
        return SplitMix64(mixer());
    }

    // Uniform on (0, 1): 53 random bits, never 0.
    double uniform_open() {
        return (static_cast<double>((*this)() >> 11U) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>((*this)() % span);
    }

private:
    std::uint64_t state_;
};

} // namespace pgfmix
