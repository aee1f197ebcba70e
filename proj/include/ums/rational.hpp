#pragma once

/*
 * Exact rational arithmetic on 64-bit numerator/denominator pairs.
 *
 * Every value is kept canonical: denominator > 0 and gcd(|num|, den) = 1.
 * Intermediate products are computed in 128-bit and checked back into the
 * 64-bit range after reduction, so arithmetic either returns the exact
 * result or throws std::overflow_error. No floating point anywhere.
 */

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ums {

class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    // Accepts "p" or "p/q" with an optional leading minus sign.
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational reduced(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& rat_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace ums

template <>
struct std::hash<ums::Rational> {
    std::size_t operator()(const ums::Rational& r) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(r.num());
        return h * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
