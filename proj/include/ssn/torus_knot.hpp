#pragma once

#include <compare>
#include <string>

#include "ssn/arith.hpp"
#include "ssn/errors.hpp"

namespace ssn {

// Canonical name of a torus knot T(p, q): gcd(|p|, q) = 1 and either
// |p| > q >= 2, or (p, q) = (1, 1) for the unknot O.
struct TorusKnotId {
    Int p = 1;
    Int q = 1;

    bool is_unknot() const { return q == 1; }

    friend auto operator<=>(const TorusKnotId&, const TorusKnotId&) = default;

    std::string label() const {
        if (is_unknot()) return "O";
        return "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
};

inline constexpr TorusKnotId kUnknot{1, 1};

// T(p,q) = T(q,p) = T(-p,-q). Any pair with min(|p|,|q|) <= 1 is the unknot.
inline TorusKnotId canonical_torus_knot(Int p, Int q) {
    if (p == 0 && q == 0) throw NonCoprime("T(0,0) is not a knot");
    if (gcd(p, q) != 1) {
        throw NonCoprime("non-coprime torus knot parameters (" + std::to_string(p) + ", " +
                         std::to_string(q) + ")");
    }
    Int a = checked_abs(p), b = checked_abs(q);
    if (a < b) std::swap(a, b);
    if (b <= 1) return kUnknot;
    return {sign(p) * sign(q) * a, b};
}

inline bool is_canonical(Int p, Int q) {
    if (gcd(p, q) != 1) return false;
    return (p == 1 && q == 1) || (q >= 2 && checked_abs(p) > q);
}

inline TorusKnotId mirror(const TorusKnotId& k) {
    if (k.is_unknot()) return k;
    return {-k.p, k.q};
}

// Holds for every spreader (T(p,q), m) if the conjecture on spreaders is true.
inline bool spreader_conjecture_predicate(Int p, Int q, Int m) {
    if (q == 1 || q == 2) return true;
    Int pq = checked_mul(p, q);
    return m == pq || m == pq - 1 || m == pq + 1;
}

}  // namespace ssn
