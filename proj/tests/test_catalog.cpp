#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ssn/catalog.hpp"

using namespace ssn;
using nlohmann::json;

namespace {

const Catalog& catalog() {
    static const Catalog c = Catalog::load_default();
    return c;
}

std::optional<Seiferter> at(Int p, Int q, Int m, const std::string& id) {
    return catalog().find(SeifertSurgery(TorusKnotId{p, q}, m), id);
}

json minimal_entry() {
    return {{"id", "x"},
            {"family", {{"p", 5}, {"q", 2}}},
            {"kind", "Cataloged"},
            {"linking", {{"expr", "abs(m)"}, {"sign", "unfixed"}}},
            {"hyperbolic", true},
            {"validity", true},
            {"citation", "test entry"}};
}

json doc_with(const json& entry) { return {{"schema_version", 1}, {"seiferters", json::array({entry})}}; }

}  // namespace

TEST(Catalog, TrefoilEntries) {
    auto cp = at(-3, 2, -7, "c'");
    ASSERT_TRUE(cp);
    EXPECT_EQ(cp->linking, 5);
    EXPECT_TRUE(cp->hyperbolic);
    EXPECT_FALSE(cp->citation.empty());

    auto c = at(-3, 2, -2, "c");
    ASSERT_TRUE(c);
    EXPECT_EQ(c->linking, 0);
    EXPECT_FALSE(at(-3, 2, -3, "c"));
}

TEST(Catalog, CPlusMinus) {
    auto plus = at(5, 3, 15, "c_+");
    ASSERT_TRUE(plus);
    EXPECT_EQ(plus->linking, 8);
    EXPECT_TRUE(plus->hyperbolic);
    auto minus = at(5, 3, 15, "c_-");
    ASSERT_TRUE(minus);
    EXPECT_EQ(minus->linking, 2);
    EXPECT_TRUE(minus->hyperbolic);

    auto t = at(-3, 2, -6, "c_+");
    ASSERT_TRUE(t);
    EXPECT_EQ(t->linking, 1);
    EXPECT_FALSE(t->hyperbolic);
    EXPECT_EQ(t->alias, "c_mu");
    EXPECT_FALSE(at(5, 3, 14, "c_+"));

    for (Int p = -40; p <= 40; ++p) {
        for (Int q = 2; q < std::abs(p); ++q) {
            if (gcd(p, q) != 1) continue;
            auto e = at(p, q, p * q, "c_+");
            ASSERT_TRUE(e);
            EXPECT_EQ(e->linking, std::abs(p + q));
            EXPECT_EQ(e->hyperbolic, std::abs(p + q) >= 2);
        }
    }
}

TEST(Catalog, CmFamily) {
    auto c3 = at(7, 2, 3, "c_3");
    ASSERT_TRUE(c3);
    EXPECT_EQ(c3->linking, 4);
    EXPECT_TRUE(c3->hyperbolic);
    for (Int p : {-9, -7, -5, 5, 7, 9}) {
        for (Int m = -30; m <= 30; ++m) {
            auto c = at(p, 2, m, "c_" + std::to_string(m));
            ASSERT_TRUE(c);
            EXPECT_EQ(c->linking, std::abs(m - p));
            const bool special = m == 2 * p || m == 2 * p + 1 || m == 2 * p - 1;
            EXPECT_EQ(c->hyperbolic, !special) << p << " " << m;
        }
    }
    EXPECT_EQ(at(7, 2, 14, "c_14")->alias, "s_2");
    EXPECT_EQ(at(7, 2, 15, "c_15")->alias, "s_{p,+1}");
    EXPECT_EQ(at(7, 2, 13, "c_13")->alias, "s_{p,-1}");
    EXPECT_FALSE(at(7, 3, 3, "c_3"));
}

TEST(Catalog, TrefoilCkCoversThreeSlopes) {
    // c^k lives on (T(3,2), k), k+1, k+2 for k outside {2,3,4,5}.
    for (Int k = -10; k <= 12; ++k) {
        const bool valid = k < 2 || k > 5;
        for (Int m = k; m <= k + 2; ++m) {
            auto c = at(3, 2, m, "c^" + std::to_string(k));
            EXPECT_EQ(c.has_value(), valid) << k << " " << m;
            if (!c) continue;
            EXPECT_EQ(c->linking, std::abs(k - 1));
            EXPECT_TRUE(c->hyperbolic);
            EXPECT_EQ(c->alias.empty(), m != k + 2);
        }
    }
    // and agrees with c_m there
    auto cm = at(3, 2, 10, "c_10");
    ASSERT_TRUE(cm);
    EXPECT_EQ(cm->linking, at(3, 2, 10, "c^8")->linking);
    EXPECT_TRUE(cm->hyperbolic);
}

TEST(Catalog, TypeThreeAndFour) {
    for (Int n = 2; n <= 30; ++n) {
        auto c = at(2 * n + 1, n, n * (2 * n + 1) - 1, "c_III");
        ASSERT_TRUE(c) << n;
        EXPECT_EQ(c->linking, 2 * n + 2);
        ASSERT_EQ(c->images.size(), 1u);
        EXPECT_EQ(c->images[0].turns, -1);
        EXPECT_EQ(c->images[0].knot, canonical_torus_knot(-2 * n - 3, n + 2));

        auto back = at(-2 * n - 3, n + 2, (-2 * n - 3) * (n + 2) + 1, "c_III");
        ASSERT_TRUE(back) << n;
        EXPECT_EQ(back->linking, 2 * n + 2);
        EXPECT_EQ(back->images[0].knot, canonical_torus_knot(2 * n + 1, n));

        auto iv = at(2 * n - 1, n, n * (2 * n - 1) - 1, "c'_IV");
        ASSERT_TRUE(iv) << n;
        EXPECT_EQ(iv->linking, 2 * n + 1);
        auto iv_back = at(-2 * n - 3, n + 1, (-2 * n - 3) * (n + 1) + 1, "c'_IV");
        ASSERT_TRUE(iv_back) << n;
        EXPECT_EQ(iv_back->images[0].knot, canonical_torus_knot(2 * n - 1, n));

        auto star = at(2 * n + 1, n, n * (2 * n + 1) - 1, "c'*");
        EXPECT_EQ(star.has_value(), n >= 3);
        if (star) {
            EXPECT_EQ(star->linking, 2 * n - 1);
            EXPECT_EQ(star->images[0].knot, canonical_torus_knot(-2 * n + 3, n - 1));
        }
    }
    // n = 1 would put the entry on the unknot.
    EXPECT_FALSE(catalog().find(SeifertSurgery(kUnknot, 2), "c_III"));
}

TEST(Catalog, BasicsAlwaysFirst) {
    for (Int p = -12; p <= 12; ++p) {
        for (Int q = 2; q < std::abs(p); ++q) {
            if (gcd(p, q) != 1) continue;
            auto list = catalog().lookup(p, q, 0);
            ASSERT_GE(list.size(), 3u);
            EXPECT_EQ(list[0].kind, SeiferterKind::BasicSp);
            EXPECT_EQ(list[0].linking, q);
            EXPECT_EQ(list[1].kind, SeiferterKind::BasicSq);
            EXPECT_EQ(list[1].signed_linking(), p);
            EXPECT_EQ(list[2].kind, SeiferterKind::Meridian);
            EXPECT_EQ(list[2].linking, 1);
            EXPECT_FALSE(list[2].irrelevant);
        }
    }
    auto o = catalog().lookup(1, 1, 5);
    ASSERT_EQ(o.size(), 3u);
    EXPECT_TRUE(o[2].irrelevant);
    EXPECT_THROW(catalog().lookup(2, 3, 0), NotTorusKnot);
    EXPECT_TRUE(catalog().lookup(SeifertSurgery(NamedKnot{"figure-eight"}, -2)).empty());
}

TEST(Catalog, HyperbolicEntriesSatisfySpreaderPredicate) {
    Int checked = 0;
    for (Int p = -25; p <= 25; ++p) {
        for (Int q = 2; q < std::abs(p); ++q) {
            if (gcd(p, q) != 1) continue;
            for (Int m = p * q - 60; m <= p * q + 60; ++m) {
                for (const auto& s : catalog().lookup(p, q, m)) {
                    if (!s.hyperbolic) continue;
                    ++checked;
                    EXPECT_FALSE(s.citation.empty());
                    EXPECT_TRUE(spreader_conjecture_predicate(p, q, m)) << s.id << " at " << p << " " << q << " " << m;
                }
            }
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(Catalog, AnnularPairs) {
    auto pairs = catalog().annular_pairs(SeifertSurgery(TorusKnotId{5, 2}, 3));
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].id, "{c_mu,c_3}");
    EXPECT_TRUE(pairs[0].is_hopf);
    EXPECT_EQ(pairs[0].pair_linking, 1);
    EXPECT_EQ(pairs[0].per_knot_linkings, (std::pair<Int, Int>{1, 2}));

    const SeifertSurgery o4(kUnknot, 4);
    EXPECT_TRUE(catalog().annular_pairs(o4).empty());
    auto hopf = catalog().annular_pairs(o4, {{"p", 5}});
    ASSERT_EQ(hopf.size(), 1u);
    EXPECT_EQ(hopf[0].id, "{c,c_5}");
    EXPECT_TRUE(hopf[0].hyperbolic);
    auto flat = catalog().annular_pairs(o4, {{"p", 7}});
    ASSERT_EQ(flat.size(), 1u);
    EXPECT_FALSE(flat[0].hyperbolic);
    EXPECT_TRUE(catalog().annular_pairs(o4, {{"p", 4}}).empty());

    auto q3 = catalog().annular_pairs(o4, {{"q", 3}});
    ASSERT_EQ(q3.size(), 2u);
    EXPECT_EQ(q3[0].id, "{c,c_{3,4}}");
    EXPECT_EQ(q3[0].pair_linking, 2);
    EXPECT_FALSE(q3[0].is_hopf);
    EXPECT_EQ(q3[1].id, "{c,c'_{3,4}}");
    EXPECT_EQ(q3[1].pair_linking, 4);
    EXPECT_TRUE(catalog().annular_pairs(SeifertSurgery(kUnknot, -1), {{"q", 3}}).empty());
    EXPECT_EQ(catalog().annular_pairs(SeifertSurgery(kUnknot, -1), {{"q", 4}}).size(), 1u);

    for (const auto& e : catalog().pair_entries()) {
        if (e.hopf) {
            EXPECT_EQ(std::abs(e.pair_linking.eval({})), 1);
        }
    }
}

TEST(Catalog, SchemaValidation) {
    EXPECT_NO_THROW(Catalog::from_json(doc_with(minimal_entry())));
    EXPECT_THROW(Catalog::from_json(json{{"seiferters", json::array()}}), CatalogError);
    EXPECT_THROW(Catalog::from_json(json{{"schema_version", 2}}), CatalogError);

    auto no_cite = minimal_entry();
    no_cite.erase("citation");
    EXPECT_THROW(Catalog::from_json(doc_with(no_cite)), CatalogError);

    auto bad_var = minimal_entry();
    bad_var["linking"]["expr"] = "abs(n)";
    EXPECT_THROW(Catalog::from_json(doc_with(bad_var)), CatalogError);

    auto bad_sign = minimal_entry();
    bad_sign["linking"]["sign"] = "?";
    EXPECT_THROW(Catalog::from_json(doc_with(bad_sign)), CatalogError);

    auto reserved = minimal_entry();
    reserved["id"] = "c_mu";
    EXPECT_THROW(Catalog::from_json(doc_with(reserved)), CatalogError);

    auto basic = minimal_entry();
    basic["kind"] = "BasicSp";
    EXPECT_THROW(Catalog::from_json(doc_with(basic)), CatalogError);

    auto syntax = minimal_entry();
    syntax["validity"] = "p >";
    EXPECT_THROW(Catalog::from_json(doc_with(syntax)), CatalogError);

    json pair_doc = {{"schema_version", 1},
                     {"annular_pairs",
                      json::array({{{"id", "h"},
                                    {"family", {{"q", 2}}},
                                    {"members", {"a", "b"}},
                                    {"pair_linking", 2},
                                    {"knot_linkings", {"1", "1"}},
                                    {"hopf", true},
                                    {"hyperbolic", true},
                                    {"citation", "x"}}})}};
    EXPECT_THROW(Catalog::from_json(pair_doc), CatalogError);
    pair_doc["annular_pairs"][0]["pair_linking"] = -1;
    EXPECT_NO_THROW(Catalog::from_json(pair_doc));
    pair_doc["annular_pairs"][0]["citation"] = "";
    EXPECT_THROW(Catalog::from_json(pair_doc), CatalogError);
}

TEST(Catalog, EnvironmentOverride) {
    const auto path = std::filesystem::temp_directory_path() / "ssn_catalog_override.json";
    {
        std::ofstream out(path);
        out << doc_with(minimal_entry()).dump();
    }
    ::setenv("SEIFERT_NET_CATALOG", path.c_str(), 1);
    EXPECT_EQ(default_catalog_path(), path.string());
    const Catalog c = Catalog::load_default();
    EXPECT_EQ(c.entries().size(), 1u);
    ::unsetenv("SEIFERT_NET_CATALOG");
    EXPECT_NE(default_catalog_path(), path.string());
    std::filesystem::remove(path);
    EXPECT_THROW(Catalog::load(path), CatalogError);
}
