#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ssn/arith.hpp"
#include "ssn/catalog.hpp"
#include "ssn/errors.hpp"
#include "ssn/surgery.hpp"
#include "ssn/torus_knot.hpp"

namespace ssn {

enum class BasicKind { Sp, Sq, Meridian };

inline const char* to_string(BasicKind k) {
    switch (k) {
        case BasicKind::Sp: return "s_p";
        case BasicKind::Sq: return "s_q";
        case BasicKind::Meridian: return "c_mu";
    }
    return "?";
}

// n full twists along a basic seiferter of a torus knot. Along s_p (which
// T(p,q) winds q times) the knot becomes T(p + nq, q); along s_q it becomes
// T(p, q + np); the meridian leaves the knot alone.
inline SeifertSurgery basic_twist(const SeifertSurgery& s, BasicKind which, Int n) {
    const TorusKnotId& k = s.torus();
    switch (which) {
        case BasicKind::Meridian:
            return {k, checked_add(s.slope, n)};
        case BasicKind::Sp:
            return {canonical_torus_knot(checked_add(k.p, checked_mul(n, k.q)), k.q),
                    checked_add(s.slope, checked_mul(n, checked_mul(k.q, k.q)))};
        case BasicKind::Sq:
            return {canonical_torus_knot(k.p, checked_add(k.q, checked_mul(n, k.p))),
                    checked_add(s.slope, checked_mul(n, checked_mul(k.p, k.p)))};
    }
    return s;
}

// Twist words identified with named knots.
struct AliasRow {
    std::string base_key;
    std::string seiferter;
    Int turns;
    std::string name;
};

inline const std::vector<AliasRow>& alias_table() {
    static const std::vector<AliasRow> rows = {
        {"T(-3,2),-2", "c", -2, "figure-eight"},
        {"T(-3,2),-7", "c'", 1, "P(-2,3,7)"},
    };
    return rows;
}

struct TwistRequest {
    std::string seiferter;
    Int turns = 0;
};

struct TwistTrace {
    std::vector<SeifertSurgery> states;  // states.front() is the input
    std::vector<TwistStep> steps;
};

class TwistEngine {
public:
    explicit TwistEngine(const Catalog& catalog) : catalog_(&catalog) {}

    const Catalog& catalog() const { return *catalog_; }

    // Seiferter `id` at s. Torus hosts use the catalog; twist products only
    // carry the seiferter they were twisted along.
    Seiferter resolve(const SeifertSurgery& s, std::string_view id) const {
        if (s.is_torus()) {
            auto c = catalog_->find(s, id);
            if (!c) throw SeiferterNotValid("seiferter '" + std::string(id) + "' is not valid at " + display(s));
            if (c->irrelevant) {
                throw SeiferterNotValid("seiferter '" + std::string(id) + "' is irrelevant at " + display(s));
            }
            return *c;
        }
        const DerivedKnot d = derived_form(s);
        const TwistStep& last = d.script.back();
        if (last.seiferter_id != id) {
            throw SeiferterNotValid("only '" + last.seiferter_id + "' is known to be a seiferter at " + display(s) +
                                    ", not '" + std::string(id) + "'");
        }
        Seiferter c = resolve(*d.base, id);
        c.host = s;
        c.images.clear();
        c.alias.clear();
        return c;
    }

    std::vector<Seiferter> seiferters_at(const SeifertSurgery& s) const {
        if (s.is_torus()) return catalog_->lookup(s);
        auto d = try_derived_form(s);
        if (!d) return {};
        return {resolve(s, d->script.back().seiferter_id)};
    }

    SeifertSurgery twist(const SeifertSurgery& s, const Seiferter& c, Int turns) const {
        const Seiferter here = resolve(s, c.id);
        if (here.linking != c.linking) {
            throw SeiferterNotValid("seiferter '" + c.id + "' has linking " + std::to_string(here.linking) + " at " +
                                    display(s) + ", not " + std::to_string(c.linking));
        }
        return apply(s, here, turns);
    }

    SeifertSurgery twist(const SeifertSurgery& s, std::string_view id, Int turns) const {
        return apply(s, resolve(s, id), turns);
    }

    TwistTrace run(const SeifertSurgery& s, const std::vector<TwistRequest>& script) const {
        TwistTrace trace;
        trace.states.push_back(s);
        for (std::size_t i = 0; i < script.size(); ++i) {
            const SeifertSurgery& cur = trace.states.back();
            try {
                const Seiferter c = resolve(cur, script[i].seiferter);
                trace.steps.push_back({c.id, script[i].turns, c.linking});
                trace.states.push_back(apply(cur, c, script[i].turns));
            } catch (const SeiferterNotValid& ex) {
                throw SeiferterNotValid("step " + std::to_string(i) + ": " + ex.what(), i);
            }
        }
        return trace;
    }

    SeifertSurgery sequence(const SeifertSurgery& s, const std::vector<TwistRequest>& script) const {
        return run(s, script).states.back();
    }

    // Derived form of a non-torus surgery; named knots are looked up in the alias table.
    DerivedKnot derived_form(const SeifertSurgery& s) const {
        auto d = try_derived_form(s);
        if (!d) throw SeiferterNotValid("no seiferter is known for " + display(s));
        return *d;
    }

private:
    std::optional<DerivedKnot> try_derived_form(const SeifertSurgery& s) const {
        if (const auto* d = std::get_if<DerivedKnot>(&s.knot)) return *d;
        const auto* named = std::get_if<NamedKnot>(&s.knot);
        if (!named) return std::nullopt;
        for (const auto& row : alias_table()) {
            if (row.name != named->label) continue;
            SeifertSurgery base = parse_surgery(row.base_key);
            auto c = catalog_->find(base, row.seiferter);
            if (!c) continue;
            const Int slope = checked_add(base.slope, checked_mul(row.turns, checked_mul(c->linking, c->linking)));
            if (slope != s.slope) continue;
            DerivedKnot d;
            d.base = std::make_shared<const SeifertSurgery>(std::move(base));
            d.script.push_back({row.seiferter, row.turns, c->linking});
            return d;
        }
        return std::nullopt;
    }

    SeifertSurgery apply(const SeifertSurgery& s, const Seiferter& c, Int turns) const {
        if (turns == 0) return s;
        const Int slope = checked_add(s.slope, checked_mul(turns, checked_mul(c.linking, c.linking)));

        if (s.is_torus()) {
            switch (c.kind) {
                case SeiferterKind::BasicSp: return basic_twist(s, BasicKind::Sp, turns);
                case SeiferterKind::BasicSq: return basic_twist(s, BasicKind::Sq, turns);
                case SeiferterKind::Meridian: return basic_twist(s, BasicKind::Meridian, turns);
                case SeiferterKind::Cataloged: break;
            }
        }

        DerivedKnot d;
        if (s.is_torus()) {
            d.base = std::make_shared<const SeifertSurgery>(s);
        } else {
            d = derived_form(s);
        }
        if (!d.script.empty() && d.script.back().seiferter_id == c.id) {
            d.script.back().turns = checked_add(d.script.back().turns, turns);
            if (d.script.back().turns == 0) d.script.pop_back();
        } else {
            d.script.push_back({c.id, turns, c.linking});
        }

        if (d.script.empty()) {
            if (d.base->slope != slope) throw LemmaViolation("twist script cancelled but slopes disagree");
            return *d.base;
        }
        if (d.script.size() == 1) {
            const TwistStep& st = d.script.front();
            if (auto bc = catalog_->find(*d.base, st.seiferter_id)) {
                for (const auto& img : bc->images) {
                    if (img.turns == st.turns) return {img.knot, slope};
                }
            }
            const std::string base_key = key(*d.base);
            for (const auto& row : alias_table()) {
                if (row.base_key == base_key && row.seiferter == st.seiferter_id && row.turns == st.turns) {
                    return {NamedKnot{row.name}, slope};
                }
            }
        }
        return {std::move(d), slope};
    }

    const Catalog* catalog_;
};

// True iff lk_target = e lk_base + x m for some integer x and sign e; false
// rules out m-equivalence to the base curve.
inline bool linking_obstruction(Int lk_target, Int lk_base, Int m) {
    if (m == 0) return lk_target == lk_base || lk_target == checked_neg(lk_base);
    const Int mod = checked_abs(m);
    return mod_floor(checked_sub(lk_target, lk_base), mod) == 0 ||
           mod_floor(checked_add(lk_target, lk_base), mod) == 0;
}

enum class BaseCurve { Sp, Sq, Meridian, RegularFiber };

inline const char* to_string(BaseCurve b) {
    switch (b) {
        case BaseCurve::Sp: return "s_p";
        case BaseCurve::Sq: return "s_q";
        case BaseCurve::Meridian: return "c_mu";
        case BaseCurve::RegularFiber: return "regular_fiber";
    }
    return "?";
}

// Base curves whose linking with T(p,q) is compatible with a seiferter of
// linking lk being m-equivalent to them.
inline std::set<BaseCurve> m_equivalence_basic_candidates(Int p, Int q, Int m, Int lk) {
    if (!is_canonical(p, q)) throw NotTorusKnot("m_equivalence_basic_candidates: non-canonical (p, q)");
    const std::pair<BaseCurve, Int> bases[] = {
        {BaseCurve::Sp, q}, {BaseCurve::Sq, p}, {BaseCurve::Meridian, 1}, {BaseCurve::RegularFiber, checked_mul(p, q)}};
    std::set<BaseCurve> out;
    for (const auto& [curve, base_lk] : bases) {
        if (linking_obstruction(lk, base_lk, m)) out.insert(curve);
    }
    return out;
}

}  // namespace ssn
