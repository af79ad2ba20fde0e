#pragma once

#include <algorithm>
#include <compare>
#include <sstream>
#include <string>
#include <vector>

#include "ssn/arith.hpp"
#include "ssn/errors.hpp"

namespace ssn {

// One exceptional fiber with Seifert pair (alpha, beta); the solid torus
// around it has meridian alpha * section + beta * fiber.
struct Fiber {
    Int alpha = 1;
    Int beta = 0;

    friend auto operator<=>(const Fiber&, const Fiber&) = default;
};

// Seifert invariant (b; beta_1/alpha_1, ..., beta_n/alpha_n) of an
// orientable Seifert fibration over S^2. `degenerate` marks a fibration with
// an index-0 fiber; such values carry no usable (b, fibers) data.
struct SeifertInvariants {
    Int b = 0;
    std::vector<Fiber> fibers;
    bool degenerate = false;

    friend bool operator==(const SeifertInvariants&, const SeifertInvariants&) = default;

    std::vector<Int> indices() const {
        std::vector<Int> out;
        for (const auto& f : fibers) out.push_back(f.alpha);
        return out;
    }

    std::string str() const {
        if (degenerate) return "(degenerate)";
        std::ostringstream os;
        os << "(" << b << (fibers.empty() ? "" : ";");
        for (std::size_t i = 0; i < fibers.size(); ++i) {
            os << (i ? ", " : " ") << fibers[i].beta << "/" << fibers[i].alpha;
        }
        os << ")";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const SeifertInvariants& s) { return os << s.str(); }
};

namespace detail {
inline void require_nondegenerate(const SeifertInvariants& s, const char* op) {
    if (s.degenerate) throw DegenerateInput(std::string(op) + ": degenerate Seifert fibration");
    for (const auto& f : s.fibers) {
        if (f.alpha < 1) throw InvalidFiber(std::string(op) + ": fiber index must be >= 1");
    }
}
}  // namespace detail

// Unique representative with 0 < beta < alpha for every fiber. Fibers with
// integral beta/alpha are folded into b; fibers are sorted by (alpha, beta).
inline SeifertInvariants normalize(const SeifertInvariants& s) {
    detail::require_nondegenerate(s, "normalize");
    SeifertInvariants out;
    out.b = s.b;
    for (const auto& f : s.fibers) {
        Int g = gcd(f.alpha, f.beta);
        Int alpha = f.alpha / g, beta = f.beta / g;
        out.b = checked_add(out.b, floor_div(beta, alpha));
        Int r = mod_floor(beta, alpha);
        if (r != 0) out.fibers.push_back({alpha, r});
    }
    std::sort(out.fibers.begin(), out.fibers.end());
    return out;
}

// Invariant of the same space with the opposite orientation (unnormalized).
inline SeifertInvariants reverse_orientation(const SeifertInvariants& s) {
    detail::require_nondegenerate(s, "reverse_orientation");
    SeifertInvariants out;
    out.b = checked_neg(s.b);
    for (const auto& f : s.fibers) out.fibers.push_back({f.alpha, checked_neg(f.beta)});
    return out;
}

// e = -(b + sum beta_i / alpha_i).
inline Rational euler_number(const SeifertInvariants& s) {
    detail::require_nondegenerate(s, "euler_number");
    Rational sum(s.b);
    for (const auto& f : s.fibers) sum += Rational(f.beta, f.alpha);
    return -sum;
}

// |alpha_1 ... alpha_n (b + sum beta_i/alpha_i)|; 0 encodes infinite H_1.
inline Int first_homology_order(const SeifertInvariants& s) {
    detail::require_nondegenerate(s, "first_homology_order");
    Int prod = 1;
    for (const auto& f : s.fibers) prod = checked_mul(prod, f.alpha);
    Int total = checked_mul(s.b, prod);
    for (const auto& f : s.fibers) total = checked_add(total, checked_mul(f.beta, prod / f.alpha));
    return checked_abs(total);
}

// L(p, q). p = 0 is S^2 x S^1 and p = 1 is S^3; both store q = 0.
struct LensSpace {
    Int p = 0;
    Int q = 0;

    friend auto operator<=>(const LensSpace&, const LensSpace&) = default;

    std::string str() const {
        if (p == 0) return "S²×S¹";
        if (p == 1) return "S³";
        return "L(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const LensSpace& l) { return os << l.str(); }
};

inline LensSpace make_lens(Int p, Int q) {
    if (p < 0) throw DomainError("lens space order must be nonnegative");
    if (p <= 1) return {p, 0};
    if (gcd(p, q) != 1) throw DomainError("L(p,q) needs gcd(p,q) = 1");
    return {p, mod_floor(q, p)};
}

enum class LensOrientation { Unoriented, Oriented };

// Classification of lens spaces: L(p,q) = L(p,q') iff q' = +-q^{+-1} mod p;
// the oriented mode drops the outer sign.
inline bool lens_equivalent(const LensSpace& a, const LensSpace& b,
                            LensOrientation mode = LensOrientation::Unoriented) {
    if (a.p != b.p) return false;
    if (a.p <= 1) return true;
    const Int n = a.p;
    const Int x = mod_floor(a.q, n), y = mod_floor(b.q, n);
    const Int prod = mod_floor(checked_mul(x, y), n);
    if (x == y || prod == 1 % n) return true;
    if (mode == LensOrientation::Oriented) return false;
    return mod_floor(x + y, n) == 0 || prod == n - 1;
}

inline LensSpace reverse_orientation(const LensSpace& l) {
    return l.p <= 1 ? l : make_lens(l.p, -l.q);
}

// Lens space of a fibration with at most two exceptional fibers, obtained by
// gluing the two fibered solid tori: with mu_1 = (alpha_1, beta_1 + b alpha_1)
// and mu_2 = (-alpha_2, beta_2) in (section, fiber) coordinates and a
// longitude lambda_1 with det(mu_1, lambda_1) = 1, mu_2 = k mu_1 + n lambda_1
// gives L(|n|, +-k).
inline LensSpace to_lens_parameters(const SeifertInvariants& s) {
    detail::require_nondegenerate(s, "to_lens_parameters");
    SeifertInvariants ns = normalize(s);
    if (ns.fibers.size() > 2) throw TooManyFibers("to_lens_parameters: more than two exceptional fibers");
    while (ns.fibers.size() < 2) ns.fibers.push_back({1, 0});

    const Int a1 = ns.fibers[0].alpha;
    const Int b1 = checked_add(ns.fibers[0].beta, checked_mul(ns.b, a1));
    const Int a2 = ns.fibers[1].alpha;
    const Int b2 = ns.fibers[1].beta;

    Int n = checked_add(checked_mul(a1, b2), checked_mul(a2, b1));
    if (n == 0) return {0, 0};

    // a1 * v - b1 * u = 1; gcd(a1, b1) = 1 after normalization.
    const ExtGcd eg = ext_gcd(a1, checked_neg(b1));
    const Int v = eg.x, u = eg.y;

    Int k = checked_neg(checked_add(checked_mul(a2, v), checked_mul(b2, u)));
    if (n < 0) {
        n = checked_neg(n);
        k = checked_neg(k);
    }
    return make_lens(n, k);
}

// Orientation-preserving fiber-type equivalence for fibrations with at most
// three exceptional fibers.
inline bool sfs_homeo_equivalent(const SeifertInvariants& s, const SeifertInvariants& t) {
    const SeifertInvariants ns = normalize(s), nt = normalize(t);
    if (ns.fibers.size() > 3 || nt.fibers.size() > 3) {
        throw UnsupportedFamily("sfs_homeo_equivalent: more than three exceptional fibers");
    }
    if (ns == nt) return true;
    if (ns.fibers.size() <= 2 && nt.fibers.size() <= 2) {
        return lens_equivalent(to_lens_parameters(ns), to_lens_parameters(nt),
                               LensOrientation::Oriented);
    }
    return false;
}

}  // namespace ssn
