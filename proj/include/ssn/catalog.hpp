#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ssn/arith.hpp"
#include "ssn/errors.hpp"
#include "ssn/expr.hpp"
#include "ssn/surgery.hpp"
#include "ssn/torus_knot.hpp"

#ifndef SSN_DEFAULT_CATALOG
#define SSN_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace ssn {

enum class SeiferterKind { BasicSp, BasicSq, Meridian, Cataloged };

inline const char* to_string(SeiferterKind k) {
    switch (k) {
        case SeiferterKind::BasicSp: return "BasicSp";
        case SeiferterKind::BasicSq: return "BasicSq";
        case SeiferterKind::Meridian: return "Meridian";
        case SeiferterKind::Cataloged: return "Cataloged";
    }
    return "?";
}

inline constexpr std::string_view kSpId = "s_p";
inline constexpr std::string_view kSqId = "s_q";
inline constexpr std::string_view kMeridianId = "c_mu";

struct TwistImage {
    Int turns = 0;
    TorusKnotId knot;
};

// A seiferter instantiated at a concrete host surgery.
struct Seiferter {
    std::string id;
    SeiferterKind kind = SeiferterKind::Cataloged;
    SeifertSurgery host;
    std::string family;
    Int linking = 0;       // magnitude
    int linking_sign = 1;  // +1, -1, or 0 when the orientation is not fixed
    bool hyperbolic = false;
    bool irrelevant = false;
    std::string citation;
    std::string alias;
    std::vector<TwistImage> images;
    Bindings params;

    Int signed_linking() const { return linking_sign < 0 ? -linking : linking; }
};

struct AnnularPairRecord {
    std::string id;
    std::pair<std::string, std::string> members;
    Int pair_linking = 0;
    std::pair<Int, Int> per_knot_linkings{0, 0};  // an unordered pair, stored as listed
    bool is_hopf = false;
    bool hyperbolic = false;
    std::string citation;
};

enum class HostKind { Torus, Unknot };

struct FamilySpec {
    HostKind host = HostKind::Torus;
    std::vector<std::pair<std::string, Expr>> params;  // defined from p, q, m
    std::optional<Expr> p, q, m;
    std::string text;
};

struct SeiferterEntry {
    std::string id_template;
    FamilySpec family;
    Expr linking;
    int linking_sign = 0;
    Expr hyperbolic;
    Expr validity;
    std::string citation;
    struct Image {
        Int turns;
        Expr p, q;
    };
    std::vector<Image> images;
    struct Alias {
        Expr when;
        std::string name;
    };
    std::vector<Alias> aliases;
};

struct AnnularPairEntry {
    std::string id_template;
    FamilySpec family;
    std::vector<std::string> free_params;  // supplied by the caller
    std::string members[2];
    Expr pair_linking;
    Expr knot_linkings[2];
    bool hopf = false;
    Expr hyperbolic;
    Expr validity;
    std::string citation;
};

// Replaces every "${expr}" in a template.
inline std::string instantiate_template(const std::string& tmpl, const Bindings& vars) {
    std::string out;
    std::size_t i = 0;
    while (i < tmpl.size()) {
        std::size_t open = tmpl.find("${", i);
        if (open == std::string::npos) {
            out += tmpl.substr(i);
            break;
        }
        std::size_t close = tmpl.find('}', open);
        if (close == std::string::npos) throw CatalogError("unterminated ${ in '" + tmpl + "'");
        out += tmpl.substr(i, open - i);
        out += std::to_string(Expr::parse(tmpl.substr(open + 2, close - open - 2)).eval(vars));
        i = close + 1;
    }
    return out;
}

inline std::string default_catalog_path() {
    if (const char* env = std::getenv("SEIFERT_NET_CATALOG"); env && *env) return env;
    return SSN_DEFAULT_CATALOG;
}

class Catalog {
public:
    static constexpr int kSchemaVersion = 1;

    static Catalog from_json(const nlohmann::json& doc) {
        Catalog c;
        if (!doc.is_object() || !doc.contains("schema_version")) throw CatalogError("catalog: schema_version is required");
        if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion) {
            throw CatalogError("catalog: unsupported schema_version");
        }
        for (const auto& e : doc.value("seiferters", nlohmann::json::array())) {
            c.entries_.push_back(parse_entry(e));
            const std::string& id = c.entries_.back().id_template;
            if (id == kSpId || id == kSqId || id == kMeridianId) {
                throw CatalogError("catalog: id '" + id + "' is reserved for basic seiferters");
            }
        }
        for (const auto& e : doc.value("annular_pairs", nlohmann::json::array())) {
            c.pairs_.push_back(parse_pair(e));
        }
        return c;
    }

    static Catalog load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw CatalogError("cannot open catalog '" + path.string() + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& ex) {
            throw CatalogError("catalog '" + path.string() + "': " + ex.what());
        }
        return from_json(doc);
    }

    static Catalog load_default() { return load(default_catalog_path()); }

    const std::vector<SeiferterEntry>& entries() const { return entries_; }
    const std::vector<AnnularPairEntry>& pair_entries() const { return pairs_; }

    // Basic seiferters first, then every cataloged entry valid at (p, q, m).
    std::vector<Seiferter> lookup(Int p, Int q, Int m) const {
        if (!is_canonical(p, q)) {
            throw NotTorusKnot("catalog lookup needs canonical torus knot parameters, got (" +
                               std::to_string(p) + ", " + std::to_string(q) + ")");
        }
        const TorusKnotId k{p, q};
        const SeifertSurgery host(k, m);
        std::vector<Seiferter> out = basic_seiferters(host);
        const Bindings vars = host_bindings(k, m);
        for (const auto& e : entries_) {
            if (auto s = instantiate(e, host, vars)) out.push_back(std::move(*s));
        }
        return out;
    }

    std::vector<Seiferter> lookup(const SeifertSurgery& s) const {
        if (!s.is_torus()) return {};
        return lookup(s.torus().p, s.torus().q, s.slope);
    }

    std::optional<Seiferter> find(const SeifertSurgery& s, std::string_view id) const {
        for (auto& c : lookup(s)) {
            if (c.id == id) return c;
        }
        return std::nullopt;
    }

    // Annular pairs at s whose free parameters are all supplied in params.
    std::vector<AnnularPairRecord> annular_pairs(const SeifertSurgery& s, const Bindings& params = {}) const {
        std::vector<AnnularPairRecord> out;
        if (!s.is_torus()) return out;
        const TorusKnotId k = s.torus();
        for (const auto& e : pairs_) {
            Bindings vars = host_bindings(k, s.slope);
            if (!family_matches(e.family, k, s.slope, vars)) continue;
            bool complete = true;
            for (const auto& name : e.free_params) {
                auto it = params.find(name);
                if (it == params.end()) {
                    complete = false;
                    break;
                }
                vars[name] = it->second;
            }
            if (!complete || !e.validity.test(vars)) continue;
            AnnularPairRecord r;
            r.id = instantiate_template(e.id_template, vars);
            r.members = {instantiate_template(e.members[0], vars), instantiate_template(e.members[1], vars)};
            r.pair_linking = e.pair_linking.eval(vars);
            r.per_knot_linkings = {e.knot_linkings[0].eval(vars), e.knot_linkings[1].eval(vars)};
            r.is_hopf = e.hopf;
            r.hyperbolic = e.hyperbolic.test(vars);
            r.citation = e.citation;
            out.push_back(std::move(r));
        }
        return out;
    }

    static std::vector<Seiferter> basic_seiferters(const SeifertSurgery& host) {
        const TorusKnotId& k = host.torus();
        std::vector<Seiferter> out(3);
        out[0].id = kSpId;
        out[0].kind = SeiferterKind::BasicSp;
        out[0].linking = k.q;
        out[1].id = kSqId;
        out[1].kind = SeiferterKind::BasicSq;
        out[1].linking = checked_abs(k.p);
        out[1].linking_sign = sign(k.p);
        out[2].id = kMeridianId;
        out[2].kind = SeiferterKind::Meridian;
        out[2].linking = 1;
        // On O the meridian is the same curve as s_p, so it is not counted again.
        out[2].irrelevant = k.is_unknot();
        for (auto& s : out) {
            s.host = host;
            s.family = k.is_unknot() ? "O" : "T(p,q)";
            s.citation = "basic seiferter";
        }
        return out;
    }

private:
    static Bindings host_bindings(const TorusKnotId& k, Int m) {
        if (k.is_unknot()) return {{"m", m}};
        return {{"p", k.p}, {"q", k.q}, {"m", m}};
    }

    // Binds the family parameters into vars; false if the host is outside the family.
    static bool family_matches(const FamilySpec& f, const TorusKnotId& k, Int m, Bindings& vars) {
        if ((f.host == HostKind::Unknot) != k.is_unknot()) return false;
        const Bindings host = vars;
        for (const auto& [name, ex] : f.params) vars[name] = ex.eval(host);
        if (f.p && f.p->eval(vars) != k.p) return false;
        if (f.q && f.q->eval(vars) != k.q) return false;
        if (f.m && f.m->eval(vars) != m) return false;
        return true;
    }

    static std::optional<Seiferter> instantiate(const SeiferterEntry& e, const SeifertSurgery& host, Bindings vars) {
        const TorusKnotId k = host.torus();
        try {
            if (!family_matches(e.family, k, host.slope, vars)) return std::nullopt;
            if (!e.validity.test(vars)) return std::nullopt;
        } catch (const OverflowError&) {
            return std::nullopt;
        }
        Seiferter s;
        s.id = instantiate_template(e.id_template, vars);
        s.kind = SeiferterKind::Cataloged;
        s.host = host;
        s.family = e.family.text;
        s.linking = e.linking.eval(vars);
        if (s.linking < 0) throw CatalogError("catalog entry '" + s.id + "': linking magnitude is negative");
        s.linking_sign = e.linking_sign;
        s.hyperbolic = e.hyperbolic.test(vars);
        s.citation = e.citation;
        for (const auto& a : e.aliases) {
            if (a.when.test(vars)) {
                s.alias = instantiate_template(a.name, vars);
                break;
            }
        }
        for (const auto& img : e.images) {
            s.images.push_back({img.turns, canonical_torus_knot(img.p.eval(vars), img.q.eval(vars))});
        }
        for (const auto& [name, ex] : e.family.params) s.params[name] = vars[name];
        return s;
    }

    static Expr expr_field(const nlohmann::json& v, const std::string& where) {
        try {
            if (v.is_boolean()) return Expr::constant(v.get<bool>() ? 1 : 0);
            if (v.is_number_integer()) return Expr::constant(v.get<Int>());
            if (v.is_string()) return Expr::parse(v.get<std::string>());
        } catch (const ParseError& ex) {
            throw CatalogError(where + ": " + ex.what());
        }
        throw CatalogError(where + ": expected integer, boolean or expression string");
    }

    static void check_vars(const Expr& e, const std::set<std::string>& allowed, const std::string& where) {
        for (const auto& v : e.variables()) {
            if (!allowed.count(v)) throw CatalogError(where + ": unknown variable '" + v + "'");
        }
    }

    static FamilySpec parse_family(const nlohmann::json& f, const std::string& where, std::set<std::string>& vars) {
        if (!f.is_object()) throw CatalogError(where + ": family must be an object");
        FamilySpec spec;
        const std::string knot = f.value("knot", std::string("torus"));
        if (knot == "torus") {
            spec.host = HostKind::Torus;
            vars = {"p", "q", "m"};
        } else if (knot == "unknot") {
            spec.host = HostKind::Unknot;
            vars = {"m"};
        } else {
            throw CatalogError(where + ": family.knot must be 'torus' or 'unknot'");
        }
        const std::set<std::string> host_vars = vars;
        std::string text;
        for (const auto& [name, value] : f.items()) {
            if (name == "knot") continue;
            Expr ex = expr_field(value, where + ".family." + name);
            if (!text.empty()) text += ", ";
            text += name + "=" + ex.text();
            if (name == "p") {
                spec.p = ex;
            } else if (name == "q") {
                spec.q = ex;
            } else if (name == "m") {
                spec.m = ex;
            } else {
                check_vars(ex, host_vars, where + ".family." + name);
                spec.params.emplace_back(name, ex);
                vars.insert(name);
            }
        }
        for (const auto* ex : {&spec.p, &spec.q, &spec.m}) {
            if (*ex) check_vars(**ex, vars, where + ".family");
        }
        if (spec.host == HostKind::Unknot && (spec.p || spec.q)) {
            throw CatalogError(where + ": unknot families cannot constrain p or q");
        }
        spec.text = knot + (text.empty() ? "" : "(" + text + ")");
        return spec;
    }

    static SeiferterEntry parse_entry(const nlohmann::json& e) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) {
            throw CatalogError("catalog: every seiferter needs a string id");
        }
        SeiferterEntry out;
        out.id_template = e["id"].get<std::string>();
        const std::string where = "seiferter '" + out.id_template + "'";
        if (e.value("kind", std::string("Cataloged")) != "Cataloged") {
            throw CatalogError(where + ": only Cataloged entries belong in the file; basic seiferters are built in");
        }
        std::set<std::string> vars;
        out.family = parse_family(e.value("family", nlohmann::json::object()), where, vars);

        if (!e.contains("linking") || !e["linking"].is_object()) throw CatalogError(where + ": linking object required");
        out.linking = expr_field(e["linking"].value("expr", nlohmann::json()), where + ".linking");
        check_vars(out.linking, vars, where + ".linking");
        const std::string sgn = e["linking"].value("sign", std::string("unfixed"));
        if (sgn == "+") {
            out.linking_sign = 1;
        } else if (sgn == "-") {
            out.linking_sign = -1;
        } else if (sgn == "unfixed") {
            out.linking_sign = 0;
        } else {
            throw CatalogError(where + ": linking.sign must be '+', '-' or 'unfixed'");
        }

        out.hyperbolic = expr_field(e.value("hyperbolic", nlohmann::json(false)), where + ".hyperbolic");
        check_vars(out.hyperbolic, vars, where + ".hyperbolic");
        out.validity = expr_field(e.value("validity", nlohmann::json(true)), where + ".validity");
        check_vars(out.validity, vars, where + ".validity");
        out.citation = e.value("citation", std::string());
        if (out.citation.empty()) throw CatalogError(where + ": cataloged seiferters need a citation");

        for (const auto& img : e.value("images", nlohmann::json::array())) {
            SeiferterEntry::Image im{img.value("turns", Int{0}),
                                     expr_field(img.value("p", nlohmann::json()), where + ".images.p"),
                                     expr_field(img.value("q", nlohmann::json()), where + ".images.q")};
            if (im.turns == 0) throw CatalogError(where + ": image with zero turns");
            check_vars(im.p, vars, where + ".images.p");
            check_vars(im.q, vars, where + ".images.q");
            out.images.push_back(std::move(im));
        }
        for (const auto& a : e.value("aliases", nlohmann::json::array())) {
            SeiferterEntry::Alias al{expr_field(a.value("when", nlohmann::json(true)), where + ".aliases.when"),
                                     a.value("name", std::string())};
            if (al.name.empty()) throw CatalogError(where + ": alias without a name");
            check_vars(al.when, vars, where + ".aliases.when");
            out.aliases.push_back(std::move(al));
        }
        return out;
    }

    static AnnularPairEntry parse_pair(const nlohmann::json& e) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) {
            throw CatalogError("catalog: every annular pair needs a string id");
        }
        AnnularPairEntry out;
        out.id_template = e["id"].get<std::string>();
        const std::string where = "annular pair '" + out.id_template + "'";
        std::set<std::string> vars;
        out.family = parse_family(e.value("family", nlohmann::json::object()), where, vars);
        for (const auto& p : e.value("params", nlohmann::json::array())) {
            out.free_params.push_back(p.get<std::string>());
            vars.insert(out.free_params.back());
        }
        const auto members = e.value("members", nlohmann::json::array());
        if (members.size() != 2) throw CatalogError(where + ": exactly two members required");
        out.members[0] = members[0].get<std::string>();
        out.members[1] = members[1].get<std::string>();
        out.pair_linking = expr_field(e.value("pair_linking", nlohmann::json()), where + ".pair_linking");
        check_vars(out.pair_linking, vars, where + ".pair_linking");
        const auto kl = e.value("knot_linkings", nlohmann::json::array());
        if (kl.size() != 2) throw CatalogError(where + ": knot_linkings needs two entries");
        for (int i = 0; i < 2; ++i) {
            out.knot_linkings[i] = expr_field(kl[i], where + ".knot_linkings");
            check_vars(out.knot_linkings[i], vars, where + ".knot_linkings");
        }
        out.hopf = e.value("hopf", false);
        if (out.hopf) {
            if (!out.pair_linking.is_constant() || checked_abs(out.pair_linking.eval({})) != 1) {
                throw CatalogError(where + ": a Hopf pair needs constant pair linking +-1");
            }
        }
        out.hyperbolic = expr_field(e.value("hyperbolic", nlohmann::json(false)), where + ".hyperbolic");
        check_vars(out.hyperbolic, vars, where + ".hyperbolic");
        out.validity = expr_field(e.value("validity", nlohmann::json(true)), where + ".validity");
        check_vars(out.validity, vars, where + ".validity");
        out.citation = e.value("citation", std::string());
        const bool never_hyperbolic = out.hyperbolic.is_constant() && out.hyperbolic.eval({}) == 0;
        if (!never_hyperbolic && out.citation.empty()) {
            throw CatalogError(where + ": hyperbolic pairs need a citation");
        }
        return out;
    }

    std::vector<SeiferterEntry> entries_;
    std::vector<AnnularPairEntry> pairs_;
};

}  // namespace ssn
