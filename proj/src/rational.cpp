#include "pgfmix/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pgfmix {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

boost::multiprecision::mpz_int parse_integer(std::string_view s) {
    if (!is_integer_literal(s)) {
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    }
    std::string sign;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? "-" : "";
        s.remove_prefix(1);
    }
    // Leading zeros would select octal in GMP's base detection.
    while (s.size() > 1 && s[0] == '0') {
        s.remove_prefix(1);
    }
    return boost::multiprecision::mpz_int(sign + std::string(s));
}

boost::multiprecision::mpz_int pow10(unsigned n) {
    boost::multiprecision::mpz_int r = 1;
    for (unsigned i = 0; i < n; ++i) {
        r *= 10;
    }
    return r;
}

// Decimal literal [sign] digits [. digits] [e|E [sign] digits].
Rational parse_decimal(std::string_view s) {
    std::string text(s);
    std::size_t epos = text.find_first_of("eE");
    long exponent = 0;
    if (epos != std::string::npos) {
        std::string_view exp_part = std::string_view(text).substr(epos + 1);
        if (!is_integer_literal(exp_part)) {
            throw std::invalid_argument("malformed number '" + text + "'");
        }
        exponent = std::stol(std::string(exp_part));
        text = text.substr(0, epos);
    }
    std::size_t dot = text.find('.');
    std::string digits = text;
    long frac_digits = 0;
    if (dot != std::string::npos) {
        frac_digits = static_cast<long>(text.size() - dot - 1);
        digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") {
            throw std::invalid_argument("malformed number '" + std::string(s) + "'");
        }
    }
    if (std::labs(exponent) > 4000) {
        throw std::invalid_argument("exponent out of range in '" + std::string(s) + "'");
    }
    Rational r(parse_integer(digits));
    long shift = exponent - frac_digits;
    if (shift >= 0) {
        r *= Rational(pow10(static_cast<unsigned>(shift)));
    } else {
        r /= Rational(pow10(static_cast<unsigned>(-shift)));
    }
    return r;
}

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        auto den = parse_integer(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    return parse_decimal(text);
}

std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

std::string format_double(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Value Value::exact(Rational r) {
    Value v;
    v.approx_ = pgfmix::to_double(r);
    v.exact_ = std::move(r);
    return v;
}

Value Value::approx(double x) {
    Value v;
    v.approx_ = x;
    return v;
}

const Rational& Value::rational() const {
    if (!exact_) {
        throw std::logic_error("value is not exact");
    }
    return *exact_;
}

bool operator==(const Value& a, const Value& b) {
    if (a.is_exact() && b.is_exact()) {
        return a.rational() == b.rational();
    }
    return a.to_double() == b.to_double();
}

namespace {

template <class ExactOp, class ApproxOp>
Value combine(const Value& a, const Value& b, ExactOp exact_op, ApproxOp approx_op) {
    if (a.is_exact() && b.is_exact()) {
        return Value::exact(exact_op(a.rational(), b.rational()));
    }
    return Value::approx(approx_op(a.to_double(), b.to_double()));
}

} // namespace

Value operator+(const Value& a, const Value& b) {
    return combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); },
                   [](double x, double y) { return x + y; });
}

Value operator-(const Value& a, const Value& b) {
    return combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); },
                   [](double x, double y) { return x - y; });
}

Value operator*(const Value& a, const Value& b) {
    return combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); },
                   [](double x, double y) { return x * y; });
}

Value operator/(const Value& a, const Value& b) {
    if (b.is_exact() ? b.rational() == 0 : b.to_double() == 0.0) {
        throw std::domain_error("division by zero");
    }
    return combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x / y); },
                   [](double x, double y) { return x / y; });
}

int compare(const Value& a, const Value& b) {
    if (a.is_exact() && b.is_exact()) {
        return a.rational() < b.rational() ? -1 : (b.rational() < a.rational() ? 1 : 0);
    }
    double x = a.to_double();
    double y = b.to_double();
    return x < y ? -1 : (y < x ? 1 : 0);
}

std::string to_string(const Value& v) {
    return v.is_exact() ? to_fraction_string(v.rational()) : format_double(v.to_double());
}

} // namespace pgfmix
