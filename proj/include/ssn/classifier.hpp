#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "ssn/arith.hpp"
#include "ssn/errors.hpp"
#include "ssn/sfs.hpp"
#include "ssn/torus_knot.hpp"

namespace ssn {

struct ConnectedSumLens {
    LensSpace first;
    LensSpace second;
    bool from_degenerate_fibration = true;
};

struct Lens {
    LensSpace space;
    std::optional<SeifertInvariants> invariants;  // normalized
};

// Normalized (b; 1/2, 1/2, y/x).
struct Prism {
    SeifertInvariants invariants;
};

// Normalized invariants over S^2(a1, a2, a3), a1 <= a2 <= a3.
struct SmallSFS {
    SeifertInvariants invariants;
};

using ManifoldDescription = std::variant<ConnectedSumLens, Lens, Prism, SmallSFS>;

namespace detail {

inline void require_nontrivial_torus(Int p, Int q, const char* op) {
    if (q == 1 && gcd(p, q) == 1) throw UnknotHost(std::string(op) + ": q = 1 is the unknot");
    if (q < 1 || gcd(p, q) != 1) {
        if (q >= 1 && gcd(p, q) != 1) throw NonCoprime(std::string(op) + ": non-coprime (p, q)");
        throw NotTorusKnot(std::string(op) + ": q must be >= 1");
    }
    if (!is_canonical(p, q)) {
        throw NotTorusKnot(std::string(op) + ": (" + std::to_string(p) + ", " + std::to_string(q) +
                           ") is not canonical; need |p| > q >= 2");
    }
}

}  // namespace detail

// Seifert invariant of T(p,q)(m), m != pq. With P = |p| and s = sign(p) the
// exterior fibration has fibers beta_p/P and beta_q/q where
// beta_p = s q^{-1} mod P and beta_q = s P^{-1} mod q, and
// b = (s - beta_p q - beta_q P) / (P q) makes the unfilled total Euler
// obstruction match S^3. The filling core contributes 1/(m - pq).
inline SeifertInvariants surgered_invariants(Int p, Int q, Int m) {
    detail::require_nontrivial_torus(p, q, "surgered_invariants");
    const Int pq = checked_mul(p, q);
    if (m == pq) throw DegenerateSlope("surgered_invariants: m = pq gives a degenerate fibration");

    const Int P = checked_abs(p);
    const Int s = sign(p);
    const Int beta_p = mod_floor(s * mod_inverse(q, P), P);
    const Int beta_q = mod_floor(s * mod_inverse(P % q, q), q);
    const Int num = checked_sub(checked_sub(s, checked_mul(beta_p, q)), checked_mul(beta_q, P));
    const Int den = checked_mul(P, q);
    if (num % den != 0) {
        throw LemmaViolation("surgered_invariants: exterior obstruction not integral for (" +
                             std::to_string(p) + ", " + std::to_string(q) + ")");
    }

    SeifertInvariants out;
    out.b = num / den;
    out.fibers.push_back({q, beta_q});
    out.fibers.push_back({P, beta_p});
    const Int d = checked_sub(m, pq);
    if (d == 1 || d == -1) {
        out.b = checked_add(out.b, d);
    } else {
        out.fibers.push_back({checked_abs(d), sign(d)});
    }

    const Int order = first_homology_order(out);
    if (order != checked_abs(m)) {
        throw LemmaViolation("surgered_invariants: |H1| = " + std::to_string(order) + " but |m| = " +
                             std::to_string(checked_abs(m)) + " for (" + std::to_string(p) + ", " +
                             std::to_string(q) + ", " + std::to_string(m) + ")");
    }
    return out;
}

// T(p,q)(pq) = L(|p|, s q) # L(q, p).
inline ConnectedSumLens degenerate_description(Int p, Int q) {
    detail::require_nontrivial_torus(p, q, "degenerate_description");
    return {make_lens(checked_abs(p), sign(p) * q), make_lens(q, p), true};
}

// O(m): L(|m|, sign(m)), S^3 for m = +-1, S^2 x S^1 for m = 0.
inline Lens classify_unknot_surgery(Int m) {
    if (m == 0) return {make_lens(0, 0), SeifertInvariants{}};
    // O = T(q0, 1) fibered with one exceptional fiber of index q0 before filling.
    const Int q0 = (m == 2) ? 3 : 2;
    SeifertInvariants inv;
    inv.fibers.push_back({q0, 1});
    const Int d = checked_sub(m, q0);
    if (d == 1 || d == -1) {
        inv.b = d;
    } else {
        inv.fibers.push_back({checked_abs(d), sign(d)});
    }
    const LensSpace expected = make_lens(checked_abs(m), sign(m));
    const LensSpace got = to_lens_parameters(inv);
    if (!lens_equivalent(got, expected, LensOrientation::Oriented)) {
        throw LemmaViolation("classify_unknot_surgery: reduction gave " + got.str() + " for m = " +
                             std::to_string(m));
    }
    return {expected, normalize(inv)};
}

inline ManifoldDescription classify_surgery(Int p, Int q, Int m) {
    detail::require_nontrivial_torus(p, q, "classify_surgery");
    const Int pq = checked_mul(p, q);
    if (m == pq) return degenerate_description(p, q);

    const SeifertInvariants inv = normalize(surgered_invariants(p, q, m));
    const Int d = checked_abs(checked_sub(m, pq));
    if (d == 1) {
        LensSpace l = to_lens_parameters(inv);
        if (l.p != checked_abs(m)) throw LemmaViolation("classify_surgery: lens order mismatch");
        return Lens{l, inv};
    }
    if (q == 2 && checked_abs(checked_sub(checked_mul(2, p), m)) == 2) {
        if (inv.fibers.size() != 3 || inv.fibers[0] != Fiber{2, 1} || inv.fibers[1] != Fiber{2, 1} ||
            inv.fibers[2].alpha != checked_abs(p)) {
            throw LemmaViolation("classify_surgery: prism branch produced " + inv.str());
        }
        return Prism{inv};
    }
    return SmallSFS{inv};
}

inline const char* kind_name(const ManifoldDescription& d) {
    switch (d.index()) {
        case 0: return "connected_sum_lens";
        case 1: return "lens";
        case 2: return "prism";
        default: return "small_sfs";
    }
}

inline std::string base_orbifold(const SeifertInvariants& inv) {
    std::string out = "S²(";
    for (std::size_t i = 0; i < inv.fibers.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(inv.fibers[i].alpha);
    }
    return out + ")";
}

// One-line summary, e.g. "connected sum L(3,2) # L(2,1)".
inline std::string describe(const ManifoldDescription& d) {
    if (const auto* c = std::get_if<ConnectedSumLens>(&d)) {
        return "connected sum " + c->first.str() + " # " + c->second.str();
    }
    if (const auto* l = std::get_if<Lens>(&d)) return "lens space " + l->space.str();
    if (const auto* pr = std::get_if<Prism>(&d)) return "prism manifold, " + base_orbifold(pr->invariants);
    return "small Seifert fibered space, " + base_orbifold(std::get<SmallSFS>(d).invariants);
}

inline std::optional<SeifertInvariants> invariants_of(const ManifoldDescription& d) {
    if (const auto* l = std::get_if<Lens>(&d)) return l->invariants;
    if (const auto* pr = std::get_if<Prism>(&d)) return pr->invariants;
    if (const auto* s = std::get_if<SmallSFS>(&d)) return s->invariants;
    return std::nullopt;
}

inline Int homology_order(const ManifoldDescription& d) {
    if (const auto* c = std::get_if<ConnectedSumLens>(&d)) return checked_mul(c->first.p, c->second.p);
    if (const auto* l = std::get_if<Lens>(&d)) return l->space.p;
    return first_homology_order(*invariants_of(d));
}

}  // namespace ssn
