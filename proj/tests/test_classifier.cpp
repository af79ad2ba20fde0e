#include <gtest/gtest.h>

#include "ssn/classifier.hpp"
#include "support/oracles.hpp"

using namespace ssn;

TEST(Classifier, LensExample) {
    const auto d = classify_surgery(5, 2, 9);
    ASSERT_TRUE(std::holds_alternative<Lens>(d));
    const Lens& l = std::get<Lens>(d);
    EXPECT_EQ(l.space.p, 9);
    ASSERT_TRUE(l.invariants);
    EXPECT_EQ(l.space, oracle::plumbing_lens(*l.invariants));
    EXPECT_EQ(l.space, (LensSpace{9, 7}));
    EXPECT_EQ(describe(d), "lens space L(9,7)");
}

TEST(Classifier, ConnectedSumExample) {
    const auto d = classify_surgery(3, 2, 6);
    ASSERT_TRUE(std::holds_alternative<ConnectedSumLens>(d));
    const auto& c = std::get<ConnectedSumLens>(d);
    EXPECT_EQ(c.first, (LensSpace{3, 2}));
    EXPECT_EQ(c.second, (LensSpace{2, 1}));
    EXPECT_TRUE(c.from_degenerate_fibration);
    EXPECT_EQ(describe(d), "connected sum L(3,2) # L(2,1)");
    EXPECT_EQ(homology_order(d), 6);
}

TEST(Classifier, PrismExample) {
    const auto d = classify_surgery(7, 2, 16);
    ASSERT_TRUE(std::holds_alternative<Prism>(d));
    const auto& inv = std::get<Prism>(d).invariants;
    EXPECT_EQ(base_orbifold(inv), "S²(2,2,7)");
    EXPECT_EQ(describe(d), "prism manifold, S²(2,2,7)");
    EXPECT_EQ(first_homology_order(inv), 16);
    EXPECT_EQ(inv.fibers[0], (Fiber{2, 1}));
    EXPECT_EQ(inv.fibers[1], (Fiber{2, 1}));
    EXPECT_EQ(inv.fibers[2].alpha, 7);
}

TEST(Classifier, SmallSfsExample) {
    const auto d = classify_surgery(-3, 2, -2);
    ASSERT_TRUE(std::holds_alternative<SmallSFS>(d));
    EXPECT_EQ(base_orbifold(std::get<SmallSFS>(d).invariants), "S²(2,3,4)");
    EXPECT_EQ(homology_order(d), 2);
}

TEST(Classifier, SurgeredInvariants) {
    const auto ps = surgered_invariants(3, 2, 1);
    auto idx = normalize(ps).indices();
    EXPECT_EQ(idx, (std::vector<Int>{2, 3, 5}));
    EXPECT_EQ(first_homology_order(ps), 1);
    EXPECT_EQ(normalize(ps), (SeifertInvariants{-2, {{2, 1}, {3, 2}, {5, 4}}, false}));

    for (auto [p, q] : {std::pair<Int, Int>{3, 2}, {-5, 3}, {7, 4}, {-11, 2}}) {
        EXPECT_EQ(first_homology_order(surgered_invariants(p, q, 0)), 0);
    }
    const auto lens = surgered_invariants(5, 3, 14);
    EXPECT_EQ(normalize(lens).indices(), (std::vector<Int>{3, 5}));
    EXPECT_EQ(to_lens_parameters(lens).p, 14);
    EXPECT_THROW(surgered_invariants(5, 3, 15), DegenerateSlope);
}

TEST(Classifier, DegenerateDescription) {
    auto a = degenerate_description(3, 2);
    EXPECT_EQ(a.first, (LensSpace{3, 2}));
    EXPECT_EQ(a.second, (LensSpace{2, 1}));
    auto b = degenerate_description(5, 2);
    EXPECT_EQ(b.first, (LensSpace{5, 2}));
    EXPECT_EQ(b.second, (LensSpace{2, 1}));
    auto c = degenerate_description(-5, 3);
    EXPECT_EQ(c.first.p * c.second.p, 15);
    EXPECT_EQ(c.first, (LensSpace{5, 2}));
    EXPECT_EQ(c.second, (LensSpace{3, 1}));
    // The mirror summands are the reversed ones.
    EXPECT_EQ(c.first, reverse_orientation(degenerate_description(5, 3).first));
    EXPECT_EQ(c.second, reverse_orientation(degenerate_description(5, 3).second));
}

TEST(Classifier, Errors) {
    EXPECT_THROW(classify_surgery(2, 3, 1), NotTorusKnot);
    EXPECT_THROW(classify_surgery(5, 1, 1), UnknotHost);
    EXPECT_THROW(classify_surgery(6, 4, 1), NonCoprime);
    EXPECT_THROW(classify_surgery(3, -2, 1), NotTorusKnot);
    EXPECT_THROW(surgered_invariants(1, 1, 3), UnknotHost);
}

TEST(Classifier, UnknotBranch) {
    EXPECT_EQ(classify_unknot_surgery(0).space, (LensSpace{0, 0}));
    EXPECT_EQ(classify_unknot_surgery(1).space, (LensSpace{1, 0}));
    EXPECT_EQ(classify_unknot_surgery(-1).space, (LensSpace{1, 0}));
    EXPECT_EQ(classify_unknot_surgery(5).space, (LensSpace{5, 1}));
    EXPECT_EQ(classify_unknot_surgery(-5).space, (LensSpace{5, 4}));
}

// Independent of the gluing reduction: the plumbing oracle on every lens
// surgery, and the classical L(|m|, q^2) up to orientation.
TEST(Classifier, LensBranchAgainstOracles) {
    for (Int p = -30; p <= 30; ++p) {
        for (Int q = 2; q < std::abs(p); ++q) {
            if (gcd(p, q) != 1) continue;
            for (Int m : {p * q - 1, p * q + 1}) {
                const auto d = classify_surgery(p, q, m);
                ASSERT_TRUE(std::holds_alternative<Lens>(d));
                const auto& l = std::get<Lens>(d);
                EXPECT_EQ(l.space, oracle::plumbing_lens(*l.invariants)) << p << " " << q << " " << m;
                if (std::abs(m) >= 2) {
                    EXPECT_TRUE(lens_equivalent(l.space, make_lens(std::abs(m), q * q))) << p << " " << q << " " << m;
                }
            }
        }
    }
}

TEST(Classifier, PrismShape) {
    for (Int p = -41; p <= 41; p += 2) {
        if (std::abs(p) < 3) continue;
        for (Int m : {2 * p - 2, 2 * p + 2}) {
            const auto d = classify_surgery(p, 2, m);
            ASSERT_TRUE(std::holds_alternative<Prism>(d)) << p << " " << m;
            const auto& inv = std::get<Prism>(d).invariants;
            EXPECT_EQ(inv, normalize(inv));
            ASSERT_EQ(inv.fibers.size(), 3u);
            EXPECT_EQ(inv.fibers[2].alpha, std::abs(p));
            EXPECT_EQ(first_homology_order(inv),
                      4 * std::abs((inv.b + 1) * inv.fibers[2].alpha + inv.fibers[2].beta));
        }
    }
}

TEST(Classifier, MirrorCovariance) {
    for (Int p = 3; p <= 15; ++p) {
        for (Int q = 2; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            for (Int m = p * q - 12; m <= p * q + 12; ++m) {
                const auto d = classify_surgery(p, q, m);
                const auto e = classify_surgery(-p, q, -m);
                ASSERT_EQ(d.index(), e.index());
                if (const auto* c = std::get_if<ConnectedSumLens>(&d)) {
                    const auto& r = std::get<ConnectedSumLens>(e);
                    EXPECT_EQ(r.first, reverse_orientation(c->first));
                    EXPECT_EQ(r.second, reverse_orientation(c->second));
                    continue;
                }
                const auto inv = *invariants_of(d);
                EXPECT_TRUE(sfs_homeo_equivalent(reverse_orientation(inv), *invariants_of(e)))
                    << p << " " << q << " " << m;
            }
        }
    }
}

TEST(Classifier, HomologyMatchesRationalOracle) {
    for (Int p = -20; p <= 20; ++p) {
        for (Int q = 2; q < std::abs(p); ++q) {
            if (gcd(p, q) != 1) continue;
            for (Int m = -60; m <= 60; ++m) {
                if (m == p * q) continue;
                EXPECT_EQ(oracle::homology_by_rationals(surgered_invariants(p, q, m)), std::abs(m));
            }
        }
    }
}
