#include "pgfmix/sequence.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgfmix {

std::size_t Sequence::size() const {
    return std::visit([](const auto& v) { return v.size(); }, data_);
}

double Sequence::operator[](std::size_t i) const {
    if (const auto* r = std::get_if<std::vector<Rational>>(&data_)) {
        return to_double(r->at(i));
    }
    return std::get<std::vector<double>>(data_).at(i);
}

Value Sequence::at(std::size_t i) const {
    if (const auto* r = std::get_if<std::vector<Rational>>(&data_)) {
        return Value::exact(r->at(i));
    }
    return Value::approx(std::get<std::vector<double>>(data_).at(i));
}

const std::vector<Rational>& Sequence::rationals() const {
    if (const auto* r = std::get_if<std::vector<Rational>>(&data_)) {
        return *r;
    }
    throw std::logic_error("sequence is not exact");
}

std::vector<double> Sequence::doubles() const {
    if (const auto* r = std::get_if<std::vector<Rational>>(&data_)) {
        std::vector<double> out;
        out.reserve(r->size());
        for (const auto& x : *r) {
            out.push_back(to_double(x));
        }
        return out;
    }
    return std::get<std::vector<double>>(data_);
}

Sequence Sequence::prefix(std::size_t n) const {
    return std::visit(
        [n](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            return Sequence(V(v.begin(), v.begin() + static_cast<long>(std::min(n, v.size()))));
        },
        data_);
}

} // namespace pgfmix
