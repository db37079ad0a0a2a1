#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pgfmix {

using Rational = boost::multiprecision::mpq_rational;

// Parses "p", "p/q", or a finite decimal literal such as "0.25" or "1e-3"
// into an exact rational. Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

// Renders as "num/den" (always with a denominator, e.g. "1/1").
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

// Round-trippable decimal rendering ("%.17g").
std::string format_double(double x);

// A real number that optionally carries an exact rational value.
class Value {
public:
    Value() = default;
    static Value exact(Rational r);
    static Value approx(double x);

    bool is_exact() const { return exact_.has_value(); }
    double to_double() const { return approx_; }
    // Throws std::logic_error when the value is not exact.
    const Rational& rational() const;

    friend bool operator==(const Value& a, const Value& b);

private:
    std::optional<Rational> exact_;
    double approx_ = 0.0;
};

// Arithmetic stays exact while both operands are exact.
Value operator+(const Value& a, const Value& b);
Value operator-(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
Value operator/(const Value& a, const Value& b);

// Three-way comparison, exact when both operands are.
int compare(const Value& a, const Value& b);

// "num/den" when exact, otherwise the decimal rendering.
std::string to_string(const Value& v);

} // namespace pgfmix
