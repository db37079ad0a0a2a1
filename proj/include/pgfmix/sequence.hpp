#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "pgfmix/rational.hpp"

namespace pgfmix {

// A finite real sequence held either as exact rationals or as doubles.
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(std::vector<Rational> values) : data_(std::move(values)) {}
    explicit Sequence(std::vector<double> values) : data_(std::move(values)) {}

    bool is_exact() const { return std::holds_alternative<std::vector<Rational>>(data_); }
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    double operator[](std::size_t i) const;
    Value at(std::size_t i) const;

    // Throws std::logic_error when the sequence is not exact.
    const std::vector<Rational>& rationals() const;
    std::vector<double> doubles() const;

    Sequence prefix(std::size_t n) const;

private:
    std::variant<std::vector<double>, std::vector<Rational>> data_;
};

// Shock-resistance tail probabilities P(J > k), k = 0..K. Not validated on
// construction: the tail formula is applied to arbitrary mixing measures and
// may produce sequences that are not tails at all (see tail_validity).
struct TailSequence {
    Sequence values;

    bool exact() const { return values.is_exact(); }
    std::size_t order() const { return values.empty() ? 0 : values.size() - 1; }
};

// Probabilities q_n = P(N = n), n = 0..K.
struct PmfSequence {
    Sequence values;

    bool exact() const { return values.is_exact(); }
};

} // namespace pgfmix
