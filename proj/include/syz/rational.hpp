#pragma once

// Exact rational arithmetic on 128-bit integers.  The spine construction
// works over rationals whose denominators come from rounding floating point
// offsets to 1e-9, so numerators stay far below the overflow threshold; we
// still check every multiplication and fail loudly rather than wrap.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace syz {

using int128 = __int128;

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

inline std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u != 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + digits : digits;
}

/// Normalised fraction num/den with den > 0.
struct Rational {
    int128 num = 0;
    int128 den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
    Rational(int128 n, int128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_zero() const { return num == 0; }
    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }

    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    std::string to_string() const {
        if (den == 1) return int128_to_string(num);
        return int128_to_string(num) + "/" + int128_to_string(den);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        int128 g = gcd128(a.den, b.den);
        int128 bd = b.den / g;
        return Rational(checked_mul(a.num, bd) + checked_mul(b.num, a.den / g),
                        checked_mul(a.den, bd));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational(-b.num, b.den);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        int128 g1 = gcd128(a.num, b.den);
        int128 g2 = gcd128(b.num, a.den);
        return Rational(checked_mul(a.num / g1, b.num / g2),
                        checked_mul(a.den / g2, b.den / g1));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational division by zero");
        return a * Rational(b.den, b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

/// Round a double to the nearest multiple of 1/scale (scale a positive
/// integer), yielding an exact rational.  Used to freeze floating point
/// offsets before exact geometry runs on them.
inline Rational rational_round(double value, std::int64_t scale = 1000000000) {
    if (!(value == value) || value > 9.0e15 || value < -9.0e15)
        throw std::domain_error("value out of range for rational rounding");
    long double scaled = static_cast<long double>(value) * static_cast<long double>(scale);
    long double nearest = scaled >= 0 ? scaled + 0.5L : scaled - 0.5L;
    auto n = static_cast<std::int64_t>(nearest);
    return Rational(n, scale);
}

namespace detail {

/// Rank of an integer matrix (cols <= 4) by fraction-free Gaussian
/// elimination on int128 values.
inline int integer_rank(std::vector<std::vector<int128>> m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(pivot)]);
        for (int r = rank + 1; r < rows; ++r) {
            int128 num = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (num == 0) continue;
            int128 den = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
            int128 g = gcd128(num, den);
            int128 fa = num / g, fb = den / g;
            for (int k = c; k < cols; ++k)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] =
                    checked_mul(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)], fb) -
                    checked_mul(m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)], fa);
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Exact rational 2-vector.
struct RationalPoint {
    Rational x;
    Rational y;

    friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

}  // namespace syz
