#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "ssn/errors.hpp"

namespace ssn {

using Int = std::int64_t;

// Overflow-checked integer arithmetic. Every invariant computed by the
// library is exact; a result that does not fit 64 bits throws instead of
// wrapping.
inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

inline Int checked_abs(Int a) { return a < 0 ? checked_neg(a) : a; }

inline Int gcd(Int a, Int b) { return std::gcd(checked_abs(a), checked_abs(b)); }

// Floor division and the matching nonnegative remainder (divisor > 0).
inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline int sign(Int a) { return (a > 0) - (a < 0); }

// Inverse of a modulo m (m >= 1, gcd(a, m) = 1), in [0, m).
inline Int mod_inverse(Int a, Int m) {
    if (m == 1) return 0;
    Int old_r = mod_floor(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int quot = old_r / r;
        Int tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw DomainError("mod_inverse: arguments not coprime");
    return mod_floor(old_s, m);
}

struct ExtGcd {
    Int g;  // >= 0
    Int x;
    Int y;
};

// a x + b y = g = gcd(a, b).
inline ExtGcd ext_gcd(Int a, Int b) {
    Int old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int t = checked_sub(old_r, checked_mul(quot, r));
        old_r = r;
        r = t;
        t = checked_sub(old_x, checked_mul(quot, x));
        old_x = x;
        x = t;
        t = checked_sub(old_y, checked_mul(quot, y));
        old_y = y;
        y = t;
    }
    if (old_r < 0) return {-old_r, -old_x, -old_y};
    return {old_r, old_x, old_y};
}

// Exact rational in lowest terms with positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(Int n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(Int n, Int d) : num_(n), den_(d) {
        if (d == 0) throw DomainError("rational with zero denominator");
        reduce();
    }

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Int g = gcd(a.den_, b.den_);
        Int l = checked_mul(a.den_ / g, b.den_);
        return {checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l};
    }
    friend Rational operator-(const Rational& a) { return {checked_neg(a.num_), a.den_}; }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Int g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return (a - b).num_ < 0;
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void reduce() {
        if (den_ < 0) {
            num_ = checked_neg(num_);
            den_ = checked_neg(den_);
        }
        Int g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_ = 0;
    Int den_ = 1;
};

}  // namespace ssn
