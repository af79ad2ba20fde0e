#include <gtest/gtest.h>

#include "ssn/torus_knot.hpp"

using namespace ssn;

TEST(TorusKnot, Canonicalization) {
    EXPECT_EQ(canonical_torus_knot(2, 3), (TorusKnotId{3, 2}));
    EXPECT_EQ(canonical_torus_knot(3, 2), (TorusKnotId{3, 2}));
    EXPECT_EQ(canonical_torus_knot(-3, -2), (TorusKnotId{3, 2}));
    EXPECT_EQ(canonical_torus_knot(2, -3), (TorusKnotId{-3, 2}));
    EXPECT_EQ(canonical_torus_knot(5, 1), kUnknot);
    EXPECT_EQ(canonical_torus_knot(-1, 7), kUnknot);
    EXPECT_EQ(canonical_torus_knot(0, 1), kUnknot);
    EXPECT_THROW(canonical_torus_knot(4, 6), NonCoprime);
    EXPECT_THROW(canonical_torus_knot(0, 0), NonCoprime);
    EXPECT_THROW(canonical_torus_knot(0, 2), NonCoprime);
    EXPECT_EQ(kUnknot.label(), "O");
    EXPECT_EQ(canonical_torus_knot(-7, 4).label(), "T(-7,4)");
}

TEST(TorusKnot, IsCanonical) {
    EXPECT_TRUE(is_canonical(3, 2));
    EXPECT_TRUE(is_canonical(-7, 4));
    EXPECT_TRUE(is_canonical(1, 1));
    EXPECT_FALSE(is_canonical(2, 3));
    EXPECT_FALSE(is_canonical(3, -2));
    EXPECT_FALSE(is_canonical(5, 1));
    EXPECT_FALSE(is_canonical(6, 4));
}

TEST(TorusKnot, Mirror) {
    EXPECT_EQ(mirror({3, 2}), (TorusKnotId{-3, 2}));
    EXPECT_EQ(mirror({-7, 4}), (TorusKnotId{7, 4}));
    EXPECT_EQ(mirror(kUnknot), kUnknot);
    EXPECT_EQ(mirror(mirror({11, 5})), (TorusKnotId{11, 5}));
}

TEST(TorusKnot, SpreaderPredicate) {
    EXPECT_TRUE(spreader_conjecture_predicate(5, 3, 14));
    EXPECT_FALSE(spreader_conjecture_predicate(5, 3, 12));
    EXPECT_TRUE(spreader_conjecture_predicate(7, 2, 0));
    EXPECT_TRUE(spreader_conjecture_predicate(1, 1, 100));
    EXPECT_TRUE(spreader_conjecture_predicate(-5, 3, -16));
    EXPECT_TRUE(spreader_conjecture_predicate(-5, 3, -15));
    EXPECT_FALSE(spreader_conjecture_predicate(-5, 3, -17));
}
