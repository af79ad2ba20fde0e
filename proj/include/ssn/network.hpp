#pragma once

#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssn/arith.hpp"
#include "ssn/classifier.hpp"
#include "ssn/errors.hpp"
#include "ssn/surgery.hpp"
#include "ssn/twist.hpp"

namespace ssn {

// One twist edge: `turns` (+-1) twists of `from` along `label` give `to`.
struct Edge {
    std::string from;
    std::string to;
    std::string label;
    Int turns = 1;
    Int linking = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class NetworkGraph {
public:
    bool add_vertex(const SeifertSurgery& s) { return vertices_.emplace(key(s), s).second; }

    void add_edge(const SeifertSurgery& from, const SeifertSurgery& to, const std::string& label, Int turns,
                  Int linking) {
        if (turns != 1 && turns != -1) throw DomainError("network edges are single twists");
        if (to.slope - from.slope != turns * linking * linking) {
            throw LemmaViolation("edge " + key(from) + " -> " + key(to) + " breaks the slope rule");
        }
        add_vertex(from);
        add_vertex(to);
        edges_.insert({key(from), key(to), label, turns, linking});
    }

    bool contains(const std::string& k) const { return vertices_.count(k) != 0; }
    const SeifertSurgery& vertex(const std::string& k) const {
        auto it = vertices_.find(k);
        if (it == vertices_.end()) throw VertexAbsent("vertex '" + k + "' is not in the graph");
        return it->second;
    }

    const std::map<std::string, SeifertSurgery>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }

    std::map<std::string, std::set<std::string>> adjacency() const {
        std::map<std::string, std::set<std::string>> adj;
        for (const auto& [k, v] : vertices_) adj[k];
        for (const auto& e : edges_) {
            adj[e.from].insert(e.to);
            adj[e.to].insert(e.from);
        }
        return adj;
    }

    friend bool operator==(const NetworkGraph& a, const NetworkGraph& b) {
        if (a.edges_ != b.edges_ || a.vertices_.size() != b.vertices_.size()) return false;
        for (auto ia = a.vertices_.begin(), ib = b.vertices_.begin(); ia != a.vertices_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return false;
        }
        return true;
    }

private:
    std::map<std::string, SeifertSurgery> vertices_;
    std::set<Edge> edges_;
};

inline bool in_subcomplex_t(const SeifertSurgery& s) { return s.is_torus(); }

// Torus-knot surgeries (T(p,q), m) with |p| <= p_max and |m - pq| <= radius,
// unknot surgeries (O, m) with |m| <= radius, and every +-1 basic twist
// between them. Twists from a torus knot onto the unknot are kept even when
// they land outside the unknot window.
inline NetworkGraph build_subcomplex_t(Int p_max, Int radius) {
    if (p_max < 2 || radius < 0) throw DomainError("build_subcomplex_t: need p_max >= 2 and radius >= 0");
    NetworkGraph g;
    auto in_window = [&](const SeifertSurgery& s) {
        const TorusKnotId& k = s.torus();
        if (k.is_unknot()) return checked_abs(s.slope) <= radius;
        return checked_abs(k.p) <= p_max && checked_abs(checked_sub(s.slope, checked_mul(k.p, k.q))) <= radius;
    };

    std::vector<SeifertSurgery> torus;
    for (Int p = -p_max; p <= p_max; ++p) {
        for (Int q = 2; q < checked_abs(p); ++q) {
            if (gcd(p, q) != 1) continue;
            for (Int m = p * q - radius; m <= p * q + radius; ++m) torus.emplace_back(TorusKnotId{p, q}, m);
        }
    }
    for (Int m = -radius; m <= radius; ++m) g.add_vertex(SeifertSurgery(kUnknot, m));
    for (const auto& v : torus) g.add_vertex(v);

    const std::pair<BasicKind, SeiferterKind> kinds[] = {{BasicKind::Sp, SeiferterKind::BasicSp},
                                                         {BasicKind::Sq, SeiferterKind::BasicSq},
                                                         {BasicKind::Meridian, SeiferterKind::Meridian}};
    for (const auto& v : torus) {
        const auto basics = Catalog::basic_seiferters(v);
        for (const auto& [bk, sk] : kinds) {
            Int w = 0;
            for (const auto& b : basics) {
                if (b.kind == sk) w = b.linking;
            }
            for (Int n : {Int{1}, Int{-1}}) {
                const SeifertSurgery t = basic_twist(v, bk, n);
                if (t.torus().is_unknot() || (n == 1 && in_window(t))) g.add_edge(v, t, to_string(bk), n, w);
            }
        }
    }

    // Unknot line: s_p and s_q each shift the slope by one.
    std::vector<SeifertSurgery> unknots;
    for (const auto& [k, v] : g.vertices()) {
        if (v.torus().is_unknot()) unknots.push_back(v);
    }
    for (const auto& v : unknots) {
        const SeifertSurgery t(kUnknot, checked_add(v.slope, 1));
        if (!g.contains(key(t))) continue;
        g.add_edge(v, t, to_string(BasicKind::Sp), 1, 1);
        g.add_edge(v, t, to_string(BasicKind::Sq), 1, 1);
    }
    return g;
}

// Vertices twist(s, id, t) for t in [lo, hi], joined by +1 edges.
inline void add_seiferter_line(const TwistEngine& engine, NetworkGraph& g, const SeifertSurgery& s,
                               const std::string& id, Int lo, Int hi) {
    if (lo > hi) throw DomainError("add_seiferter_line: empty range");
    const Int w = engine.resolve(s, id).linking;
    g.add_vertex(s);
    SeifertSurgery prev = engine.twist(s, id, lo);
    g.add_vertex(prev);
    for (Int t = lo; t < hi; ++t) {
        SeifertSurgery next = engine.twist(prev, id, 1);
        g.add_edge(prev, next, id, 1, w);
        prev = std::move(next);
    }
}

inline NetworkGraph build_figure2(const TwistEngine& engine, Int lo = -9, Int hi = 3) {
    if (lo > -2 || hi < -2 || lo > -7) throw DomainError("build_figure2: window must contain -7 and -2");
    const TorusKnotId trefoil{-3, 2};
    NetworkGraph g;
    g.add_vertex(SeifertSurgery(trefoil, lo));
    for (Int m = lo; m < hi; ++m) {
        g.add_edge(SeifertSurgery(trefoil, m), SeifertSurgery(trefoil, m + 1), std::string(kMeridianId), 1, 1);
    }
    add_seiferter_line(engine, g, SeifertSurgery(trefoil, -2), "c", -2, 0);
    add_seiferter_line(engine, g, SeifertSurgery(trefoil, -7), "c'", 0, 1);
    return g;
}

// Shortest path (vertex keys, v first) from v to a torus-knot vertex.
inline std::optional<std::vector<std::string>> find_path_to_t(const NetworkGraph& g, const std::string& v) {
    if (!g.contains(v)) throw VertexAbsent("vertex '" + v + "' is not in the graph");
    const auto adj = g.adjacency();
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue{v};
    parent[v] = v;
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        if (in_subcomplex_t(g.vertex(cur))) {
            std::vector<std::string> path{cur};
            while (path.back() != v) path.push_back(parent[path.back()]);
            return std::vector<std::string>(path.rbegin(), path.rend());
        }
        for (const auto& n : adj.at(cur)) {
            if (parent.emplace(n, cur).second) queue.push_back(n);
        }
    }
    return std::nullopt;
}

inline std::string classification_summary(const SeifertSurgery& s) {
    if (!s.is_torus()) return {};
    const TorusKnotId& k = s.torus();
    if (k.is_unknot()) return describe(classify_unknot_surgery(s.slope));
    return describe(classify_surgery(k.p, k.q, s.slope));
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}
}  // namespace detail

inline std::string export_dot(const NetworkGraph& g) {
    std::ostringstream os;
    os << "graph {\n";
    for (const auto& [k, v] : g.vertices()) {
        std::string label = node_label(v);
        const std::string summary = classification_summary(v);
        if (!summary.empty()) label += "\\n" + summary;
        os << "  " << detail::dot_quote(k) << " [label=\"";
        for (char c : label) {
            if (c == '"') os << '\\';
            os << c;
        }
        os << "\"];\n";
    }
    for (const auto& e : g.edges()) {
        os << "  " << detail::dot_quote(e.from) << " -- " << detail::dot_quote(e.to)
           << " [label=" << detail::dot_quote(e.label + " " + format_turns(e.turns)) << "];\n";
    }
    os << "}\n";
    return os.str();
}

inline const char* knot_kind(const KnotDescriptor& k) {
    switch (k.index()) {
        case 0: return "torus";
        case 1: return "named";
        default: return "derived";
    }
}

inline nlohmann::json graph_to_json(const NetworkGraph& g) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["vertices"] = nlohmann::json::array();
    for (const auto& [k, v] : g.vertices()) {
        j["vertices"].push_back({{"key", k}, {"knot", knot_label(v.knot)}, {"kind", knot_kind(v.knot)}, {"slope", v.slope}});
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges()) {
        j["edges"].push_back(
            {{"from", e.from}, {"to", e.to}, {"label", e.label}, {"turns", e.turns}, {"linking", e.linking}});
    }
    return j;
}

inline std::string export_json(const NetworkGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

inline NetworkGraph import_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema_version", 0) != 1) throw ParseError("graph JSON: schema_version 1 required");
    NetworkGraph g;
    std::map<std::string, SeifertSurgery> by_key;
    for (const auto& v : j.at("vertices")) {
        SeifertSurgery s = parse_surgery(v.at("key").get<std::string>());
        if (s.slope != v.at("slope").get<Int>()) throw ParseError("graph JSON: slope disagrees with key");
        by_key.emplace(key(s), s);
        g.add_vertex(s);
    }
    for (const auto& e : j.at("edges")) {
        auto from = by_key.find(e.at("from").get<std::string>());
        auto to = by_key.find(e.at("to").get<std::string>());
        if (from == by_key.end() || to == by_key.end()) throw ParseError("graph JSON: edge endpoint missing");
        g.add_edge(from->second, to->second, e.at("label").get<std::string>(), e.at("turns").get<Int>(),
                   e.at("linking").get<Int>());
    }
    return g;
}

inline NetworkGraph import_json(const std::string& text) {
    try {
        return import_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("graph JSON: ") + ex.what());
    }
}

}  // namespace ssn
