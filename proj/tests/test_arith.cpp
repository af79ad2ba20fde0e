#include <gtest/gtest.h>

#include <limits>

#include "ssn/arith.hpp"

using namespace ssn;

TEST(Arith, CheckedOpsThrowOnOverflow) {
    const Int big = std::numeric_limits<Int>::max();
    EXPECT_THROW(checked_add(big, 1), OverflowError);
    EXPECT_THROW(checked_sub(std::numeric_limits<Int>::min(), 1), OverflowError);
    EXPECT_THROW(checked_mul(big / 2 + 1, 2), OverflowError);
    EXPECT_THROW(checked_abs(std::numeric_limits<Int>::min()), OverflowError);
    EXPECT_EQ(checked_mul(-7, 6), -42);
    EXPECT_EQ(checked_abs(-5), 5);
}

TEST(Arith, FloorDivAndMod) {
    EXPECT_EQ(floor_div(7, 2), 3);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(floor_div(-8, 2), -4);
    EXPECT_EQ(floor_div(7, -2), -4);
    EXPECT_EQ(mod_floor(-7, 5), 3);
    EXPECT_EQ(mod_floor(10, 5), 0);
    for (Int a = -30; a <= 30; ++a) {
        for (Int m = 1; m <= 9; ++m) {
            EXPECT_EQ(floor_div(a, m) * m + mod_floor(a, m), a);
        }
    }
}

TEST(Arith, ModInverse) {
    for (Int m = 2; m <= 60; ++m) {
        for (Int a = -m; a <= 2 * m; ++a) {
            if (gcd(a, m) != 1) {
                EXPECT_THROW(mod_inverse(a, m), DomainError);
                continue;
            }
            const Int inv = mod_inverse(a, m);
            EXPECT_GE(inv, 0);
            EXPECT_LT(inv, m);
            EXPECT_EQ(mod_floor(a * inv, m), 1);
        }
    }
    EXPECT_EQ(mod_inverse(5, 1), 0);
}

TEST(Arith, ExtendedGcd) {
    for (Int a = -25; a <= 25; ++a) {
        for (Int b = -25; b <= 25; ++b) {
            const ExtGcd e = ext_gcd(a, b);
            EXPECT_EQ(e.g, gcd(a, b));
            EXPECT_EQ(a * e.x + b * e.y, e.g);
        }
    }
}

TEST(Arith, RationalArithmetic) {
    EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(1, 2) - Rational(1, 2), Rational(0));
    EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
    EXPECT_TRUE(Rational(4, 2).is_integer());
    EXPECT_FALSE(Rational(5, 9).is_integer());
    EXPECT_TRUE(Rational(-1, 3) < Rational(1, 4));
    EXPECT_EQ(Rational(-4, 9).str(), "-4/9");
    EXPECT_EQ(Rational(3).str(), "3");
    EXPECT_THROW(Rational(1, 0), DomainError);
}
