#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "faslab/errors.hpp"

namespace faslab {

/// Exact half-integer: stores twice the value. Directed surpluses live here so
/// that inequality checks never touch floating point.
struct HalfInt {
    std::int64_t twice = 0;

    static HalfInt from_twice(std::int64_t t) { return HalfInt{t}; }
    static HalfInt whole(std::int64_t v) { return HalfInt{2 * v}; }

    double value() const { return static_cast<double>(twice) / 2.0; }
    bool is_integer() const { return twice % 2 == 0; }

    friend auto operator<=>(const HalfInt&, const HalfInt&) = default;
    friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }

    std::string str() const {
        if (twice % 2 == 0) return std::to_string(twice / 2);
        std::string s = std::to_string(twice / 2);
        // twice is odd; render as decimal .5 with correct sign for negatives.
        if (twice < 0 && twice / 2 == 0) s = "-0";
        return s + ".5";
    }
};

/// Exact rational with 64-bit numerator/denominator, always normalized.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw InputError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b) { return Rational(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rational operator-(Rational a, Rational b) { return Rational(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rational operator*(Rational a, Rational b) { return Rational(a.num * b.num, a.den * b.den); }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw InputError("rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(text));
            return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw InputError("cannot parse rational: " + text);
        }
    }
};

/// Locale-independent double formatting (shortest round-trip form).
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

}  // namespace faslab
