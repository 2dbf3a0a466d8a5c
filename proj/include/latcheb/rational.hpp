#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "latcheb/checked.hpp"

namespace latcheb {

// Exact rational with 64-bit numerator/denominator. Only the handful of
// operations needed for weighted-simplex membership are provided; comparisons
// cross-multiply with overflow checks so boundary ties are decided exactly.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
    /* implicit */ Rational(std::int64_t n) : num(n), den(1) {}

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool positive() const { return num > 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return checked_mul(a.num, b.den) <= checked_mul(b.num, a.den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Parses a non-negative decimal literal such as "0.9", "2", "12.25" into an
// exact rational (9/10, 2/1, 49/4). Fractions like "9/10" are accepted too.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const std::int64_t n = std::stoll(std::string(text.substr(0, slash)));
        const std::int64_t d = std::stoll(std::string(text.substr(slash + 1)));
        return Rational(n, d);
    }
    const auto dot = text.find('.');
    std::string digits;
    std::size_t frac_len = 0;
    if (dot == std::string_view::npos) {
        digits = std::string(text);
    } else {
        digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
        frac_len = text.size() - dot - 1;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("parse_rational: malformed literal '" + std::string(text) + "'");
    std::int64_t num = 0;
    for (char c : digits) num = checked_add(checked_mul(num, 10), c - '0');
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den = checked_mul(den, 10);
    return Rational(num, den);
}

} // namespace latcheb
