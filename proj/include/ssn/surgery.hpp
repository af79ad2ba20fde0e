#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssn/arith.hpp"
#include "ssn/errors.hpp"
#include "ssn/torus_knot.hpp"

namespace ssn {

struct TwistStep {
    std::string seiferter_id;
    Int turns = 0;
    Int linking_used = 0;

    friend bool operator==(const TwistStep&, const TwistStep&) = default;
};

struct SeifertSurgery;

// Knots named outright, e.g. the figure-eight or P(-2,3,7).
struct NamedKnot {
    std::string label;
    friend bool operator==(const NamedKnot&, const NamedKnot&) = default;
};

// A twist product nobody has named: base surgery plus the script applied.
struct DerivedKnot {
    std::shared_ptr<const SeifertSurgery> base;
    std::vector<TwistStep> script;
};

using KnotDescriptor = std::variant<TorusKnotId, NamedKnot, DerivedKnot>;

struct SeifertSurgery {
    KnotDescriptor knot = kUnknot;
    Int slope = 0;

    SeifertSurgery() = default;
    SeifertSurgery(KnotDescriptor k, Int m) : knot(std::move(k)), slope(m) {}
    SeifertSurgery(TorusKnotId k, Int m) : knot(k), slope(m) {}

    bool is_torus() const { return std::holds_alternative<TorusKnotId>(knot); }
    const TorusKnotId& torus() const {
        if (!is_torus()) throw NotTorusKnot("surgery is not hosted on a torus knot");
        return std::get<TorusKnotId>(knot);
    }
};

inline std::string key(const SeifertSurgery& s);

inline std::string format_turns(Int n) { return (n > 0 ? "+" : "") + std::to_string(n); }

inline std::string knot_label(const KnotDescriptor& k) {
    if (const auto* t = std::get_if<TorusKnotId>(&k)) return t->label();
    if (const auto* n = std::get_if<NamedKnot>(&k)) return n->label;
    const auto& d = std::get<DerivedKnot>(k);
    std::string out = "{" + key(*d.base);
    for (const auto& st : d.script) out += "|" + st.seiferter_id + ":" + format_turns(st.turns);
    return out + "}";
}

// Canonical vertex key "K,m", e.g. "T(-3,2),-7" or "P(-2,3,7),18".
inline std::string key(const SeifertSurgery& s) { return knot_label(s.knot) + "," + std::to_string(s.slope); }

// "K(m)", the node label used in exports.
inline std::string node_label(const SeifertSurgery& s) {
    return knot_label(s.knot) + "(" + std::to_string(s.slope) + ")";
}

// "(K, m)", the pair notation used in CLI output.
inline std::string display(const SeifertSurgery& s) {
    return "(" + knot_label(s.knot) + ", " + std::to_string(s.slope) + ")";
}

inline bool operator==(const SeifertSurgery& a, const SeifertSurgery& b) { return key(a) == key(b); }
inline bool operator<(const SeifertSurgery& a, const SeifertSurgery& b) { return key(a) < key(b); }

inline bool operator==(const DerivedKnot& a, const DerivedKnot& b) {
    return knot_label(a) == knot_label(b);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline Int parse_int(std::string_view s, std::string_view context) {
    s = trim(s);
    if (s.empty()) throw ParseError("expected integer in '" + std::string(context) + "'");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw ParseError("expected integer in '" + std::string(context) + "'");
    Int v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer '" + std::string(s) + "'");
        v = checked_add(checked_mul(v, 10), s[i] - '0');
    }
    return neg ? checked_neg(v) : v;
}

// Position of the last top-level occurrence of ch (outside () and {}).
inline std::size_t last_top_level(std::string_view s, char ch) {
    int depth = 0;
    std::size_t found = std::string_view::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') ++depth;
        else if (c == ')' || c == '}') --depth;
        else if (c == ch && depth == 0) found = i;
        if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
    }
    if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
    return found;
}

}  // namespace detail

inline SeifertSurgery parse_surgery(std::string_view text);

// Knot labels: "O", "T(p,q)" (any order or sign, canonicalized), a derived
// word "{K,m|id:+n|...}", or any other text as a named knot.
inline KnotDescriptor parse_knot(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.empty()) throw ParseError("empty knot label");
    if (s == "O") return kUnknot;
    if (s.size() > 3 && s.substr(0, 2) == "T(" && s.back() == ')') {
        std::string_view inner = s.substr(2, s.size() - 3);
        std::size_t comma = inner.find(',');
        if (comma == std::string_view::npos) throw ParseError("expected T(p,q), got '" + std::string(s) + "'");
        return canonical_torus_knot(detail::parse_int(inner.substr(0, comma), s),
                                    detail::parse_int(inner.substr(comma + 1), s));
    }
    if (s.front() == '{') {
        if (s.back() != '}') throw ParseError("unterminated derived knot '" + std::string(s) + "'");
        std::string_view inner = s.substr(1, s.size() - 2);
        std::vector<std::string_view> parts;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            char c = inner[i];
            if (c == '(' || c == '{') ++depth;
            else if (c == ')' || c == '}') --depth;
            else if (c == '|' && depth == 0) {
                parts.push_back(inner.substr(start, i - start));
                start = i + 1;
            }
        }
        parts.push_back(inner.substr(start));
        if (parts.size() < 2) throw ParseError("derived knot needs a nonempty script: '" + std::string(s) + "'");
        DerivedKnot d;
        d.base = std::make_shared<const SeifertSurgery>(parse_surgery(parts[0]));
        for (std::size_t i = 1; i < parts.size(); ++i) {
            std::size_t colon = parts[i].rfind(':');
            if (colon == std::string_view::npos) throw ParseError("bad twist step '" + std::string(parts[i]) + "'");
            TwistStep st;
            st.seiferter_id = std::string(detail::trim(parts[i].substr(0, colon)));
            st.turns = detail::parse_int(parts[i].substr(colon + 1), parts[i]);
            d.script.push_back(std::move(st));
        }
        return d;
    }
    return NamedKnot{std::string(s)};
}

// "K,m" or "(K, m)".
inline SeifertSurgery parse_surgery(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')' &&
        detail::last_top_level(s.substr(1, s.size() - 2), ',') != std::string_view::npos) {
        s = s.substr(1, s.size() - 2);
    }
    std::size_t comma = detail::last_top_level(s, ',');
    if (comma == std::string_view::npos) throw ParseError("expected 'K,m', got '" + std::string(text) + "'");
    return {parse_knot(s.substr(0, comma)), detail::parse_int(s.substr(comma + 1), text)};
}

}  // namespace ssn
