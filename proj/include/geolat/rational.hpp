#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>

#include "geolat/error.hpp"

namespace geolat {

/// Exact rational with int64 numerator and positive denominator, always in
/// lowest terms. Intermediate products use 128-bit integers; a result that
/// does not fit in 64 bits raises InvalidArgument.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t v) // NOLINT(google-explicit-constructor)
        : num_(v)
    {
    }
    Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

    constexpr std::int64_t numerator() const noexcept { return num_; }
    constexpr std::int64_t denominator() const noexcept { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_, static_cast<Wide>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        return make(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_, static_cast<Wide>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return make(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0) fail(ErrorCode::InvalidArgument, "division by zero");
        return make(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
    }
    Rational operator-() const { return make(-static_cast<Wide>(num_), den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const Wide l = static_cast<Wide>(a.num_) * b.den_;
        const Wide r = static_cast<Wide>(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    using Wide = __int128;

    static Wide gcd(Wide a, Wide b)
    {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const Wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational make(Wide num, Wide den)
    {
        if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const Wide g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > INT64_MAX || num < -INT64_MAX || den > INT64_MAX) {
            fail(ErrorCode::InvalidArgument, "rational overflow");
        }
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Exact latency value in milliseconds.
using Millis = Rational;

inline std::string to_exact_string(const Millis& v)
{
    if (v.denominator() == 1) {
        return std::to_string(v.numerator());
    }
    return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

/// Two-decimal rendering, rounding half away from zero on the exact value.
inline std::string to_decimal_string(const Millis& v, int places = 2)
{
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    const bool negative = v < 0;
    const Millis mag = negative ? -v : v;
    const Millis scaled = mag * scale;
    std::int64_t q = scaled.numerator() / scaled.denominator();
    const std::int64_t r = scaled.numerator() % scaled.denominator();
    if (2 * r >= scaled.denominator()) {
        ++q;
    }
    std::string whole = std::to_string(q / scale);
    std::string frac = std::to_string(q % scale);
    while (static_cast<int>(frac.size()) < places) {
        frac.insert(frac.begin(), '0');
    }
    std::string out = negative && q != 0 ? "-" : "";
    out += whole;
    if (places > 0) {
        out += "." + frac;
    }
    return out;
}

inline double to_double(const Millis& v)
{
    return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    if (s.empty()) {
        fail(ErrorCode::ParseError, "empty integer in '" + std::string(whole) + "'");
    }
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) {
        fail(ErrorCode::ParseError, "bad integer in '" + std::string(whole) + "'");
    }
    std::int64_t acc = 0;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c < '0' || c > '9') {
            fail(ErrorCode::ParseError, "bad digit in '" + std::string(whole) + "'");
        }
        if (acc > (INT64_MAX - 9) / 10) {
            fail(ErrorCode::ParseError, "integer overflow in '" + std::string(whole) + "'");
        }
        acc = acc * 10 + (c - '0');
    }
    return neg ? -acc : acc;
}

} // namespace detail

/// Accepts "12", "-3", "12.375" and "p/q".
inline Millis parse_millis(std::string_view text)
{
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
    const std::string_view s = text.substr(b, e - b);

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = detail::parse_int(s.substr(0, slash), text);
        const auto den = detail::parse_int(s.substr(slash + 1), text);
        if (den == 0) {
            fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        }
        return Millis(num, den);
    }
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = s.substr(0, dot);
        const std::string_view frac_part = s.substr(dot + 1);
        if (frac_part.size() > 15 || frac_part.find_first_not_of("0123456789") != std::string_view::npos) {
            fail(ErrorCode::ParseError, "bad decimal '" + std::string(text) + "'");
        }
        const bool neg = !int_part.empty() && int_part[0] == '-';
        const std::string_view digits = (neg || (!int_part.empty() && int_part[0] == '+')) ? int_part.substr(1) : int_part;
        const std::int64_t whole = digits.empty() ? 0 : detail::parse_int(digits, text);
        std::int64_t scale = 1;
        std::int64_t frac = 0;
        for (const char c : frac_part) {
            scale *= 10;
            frac = frac * 10 + (c - '0');
        }
        Millis v = Millis(whole) + Millis(frac, scale);
        return neg ? -v : v;
    }
    return Millis(detail::parse_int(s, text));
}

} // namespace geolat
