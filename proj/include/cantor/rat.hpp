#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cantor {

// Exact rational on int64, gcd-reduced, denominator > 0.
// Every rational in this project has a 3-smooth-times-power-of-two
// denominator bounded by the depth guards in lattice.hpp, so reduced
// terms always fit; comparisons go through __int128 and never overflow.
struct Rat64 {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rat64() = default;
    constexpr Rat64(std::int64_t n) : num(n), den(1) {}
    Rat64(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat64: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rat64& a, const Rat64& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend std::strong_ordering operator<=>(const Rat64& a, const Rat64& b) {
        __int128 l = static_cast<__int128>(a.num) * b.den;
        __int128 r = static_cast<__int128>(b.num) * a.den;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

namespace detail {
inline std::int64_t narrow_i128(__int128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error(what);
    return static_cast<std::int64_t>(v);
}
}  // namespace detail

inline Rat64 rat_add(const Rat64& a, const Rat64& b) {
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    // reduce in 128 bits before narrowing
    auto abs128 = [](__int128 v) { return v < 0 ? -v : v; };
    __int128 x = abs128(n), y = d;
    while (y) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        n /= x;
        d /= x;
    }
    return Rat64{detail::narrow_i128(n, "rat_add overflow"), detail::narrow_i128(d, "rat_add overflow")};
}

inline Rat64 rat_sub(const Rat64& a, const Rat64& b) { return rat_add(a, Rat64{-b.num, b.den}); }

inline Rat64 rat_mul(const Rat64& a, const Rat64& b) {
    __int128 n = static_cast<__int128>(a.num) * b.num;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    auto abs128 = [](__int128 v) { return v < 0 ? -v : v; };
    __int128 x = abs128(n), y = d;
    while (y) {
        __int128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        n /= x;
        d /= x;
    }
    return Rat64{detail::narrow_i128(n, "rat_mul overflow"), detail::narrow_i128(d, "rat_mul overflow")};
}

}  // namespace cantor
