#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssn/ssn.hpp"

using nlohmann::json;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kBadSeiferter = 3;
constexpr int kNoVertex = 4;

const char* kSurgeryGrammar =
    "Surgery literals:\n"
    "  K,m or (K, m) where K is O, T(p,q), a named knot (figure-eight,\n"
    "  P(-2,3,7)) or a twist word {K,m|id:+n|...}. Examples: \"T(-3,2),-7\",\n"
    "  \"P(-2,3,7),18\", \"(figure-eight, -2)\".\n"
    "Environment:\n"
    "  SEIFERT_NET_CATALOG overrides the catalog path.";

json invariants_json(const ssn::SeifertInvariants& s) {
    json fibers = json::array();
    for (const auto& f : s.fibers) fibers.push_back({{"alpha", f.alpha}, {"beta", f.beta}});
    return {{"b", s.b}, {"fibers", fibers}, {"text", s.str()}};
}

json lens_json(const ssn::LensSpace& l) { return {{"p", l.p}, {"q", l.q}, {"text", l.str()}}; }

json description_json(const ssn::ManifoldDescription& d) {
    json j;
    j["kind"] = ssn::kind_name(d);
    j["text"] = ssn::describe(d);
    if (const auto* c = std::get_if<ssn::ConnectedSumLens>(&d)) {
        j["summands"] = {lens_json(c->first), lens_json(c->second)};
        j["degenerate_fibration"] = c->from_degenerate_fibration;
    }
    if (const auto* l = std::get_if<ssn::Lens>(&d)) j["lens"] = lens_json(l->space);
    auto inv = ssn::invariants_of(d);
    j["invariants"] = inv ? invariants_json(*inv) : json(nullptr);
    return j;
}

// Classification of a torus-knot or unknot surgery in either output form.
struct Classified {
    ssn::SeifertSurgery surgery;
    ssn::ManifoldDescription description;
    bool spreader_predicate = true;
};

Classified classify(const ssn::TorusKnotId& k, ssn::Int m) {
    Classified c{{k, m}, ssn::Lens{}, true};
    if (k.is_unknot()) {
        c.description = ssn::classify_unknot_surgery(m);
    } else {
        c.description = ssn::classify_surgery(k.p, k.q, m);
        c.spreader_predicate = ssn::spreader_conjecture_predicate(k.p, k.q, m);
    }
    return c;
}

void print_classified(std::ostream& os, const Classified& c) {
    os << "surgery: " << ssn::display(c.surgery) << "\n";
    os << "manifold: " << ssn::describe(c.description) << "\n";
    auto inv = ssn::invariants_of(c.description);
    os << "seifert invariants: " << (inv ? inv->str() : std::string("degenerate fibration")) << "\n";
    const ssn::Int h = ssn::homology_order(c.description);
    os << "|H1|: " << (h == 0 ? std::string("infinite") : std::to_string(h)) << "\n";
    os << "spreader predicate: " << (c.spreader_predicate ? "true" : "false") << "\n";
}

json classified_json(const Classified& c) {
    return {{"schema_version", 1},
            {"surgery", ssn::key(c.surgery)},
            {"knot", ssn::knot_label(c.surgery.knot)},
            {"slope", c.surgery.slope},
            {"manifold", description_json(c.description)},
            {"homology_order", ssn::homology_order(c.description)},
            {"spreader_predicate", c.spreader_predicate}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ssn::ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ssn::ParseError("cannot write '" + path + "'");
    out << text;
}

std::vector<ssn::TwistRequest> parse_script(const json& j) {
    if (!j.is_array()) throw ssn::ParseError("twist script must be a JSON array");
    std::vector<ssn::TwistRequest> out;
    for (const auto& st : j) {
        if (!st.is_object() || !st.contains("seiferter") || !st.contains("turns") || !st["seiferter"].is_string() ||
            !st["turns"].is_number_integer()) {
            throw ssn::ParseError("twist steps look like {\"seiferter\": id, \"turns\": n}");
        }
        out.push_back({st["seiferter"].get<std::string>(), st["turns"].get<ssn::Int>()});
    }
    return out;
}

// "id:n" with the split at the last colon.
ssn::TwistRequest parse_step(const std::string& text) {
    auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0) throw ssn::ParseError("expected id:turns, got '" + text + "'");
    return {text.substr(0, colon), ssn::detail::parse_int(std::string_view(text).substr(colon + 1), text)};
}

std::optional<std::string> torus_summary(const ssn::SeifertSurgery& s) {
    if (!s.is_torus()) return std::nullopt;
    return ssn::classification_summary(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seifert surgery network toolkit"};
    app.footer(kSurgeryGrammar);
    app.require_subcommand(1);

    std::string catalog_path;
    app.add_option("--catalog", catalog_path, "catalog JSON (default: $SEIFERT_NET_CATALOG or the built-in path)");
    auto load_catalog = [&] {
        return catalog_path.empty() ? ssn::Catalog::load_default() : ssn::Catalog::load(catalog_path);
    };

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify T(p,q)(m)");
    ssn::Int cp = 0, cq = 0, cm = 0;
    bool classify_json = false;
    classify_cmd->add_option("-p", cp, "torus knot parameter p")->required();
    classify_cmd->add_option("-q", cq, "torus knot parameter q (1 for the unknot)")->required();
    classify_cmd->add_option("-m", cm, "surgery slope")->required();
    classify_cmd->add_flag("--json", classify_json, "JSON output");

    // twist
    auto* twist_cmd = app.add_subcommand("twist", "apply a twist script to a surgery");
    std::string base_text, script_path;
    std::vector<std::string> step_texts;
    bool twist_json = false;
    twist_cmd->add_option("--base", base_text, "base surgery, e.g. \"T(-3,2),-7\"")->required();
    twist_cmd->add_option("--script", script_path, "JSON array of {seiferter, turns}");
    twist_cmd->add_option("--step", step_texts, "inline step id:turns (repeatable, after --script steps)");
    twist_cmd->add_flag("--json", twist_json, "JSON output");

    // verify-all
    auto* verify_cmd = app.add_subcommand("verify-all", "run every lemma sweep");
    ssn::VerifyOptions vo;
    std::string verify_out;
    verify_cmd->add_option("--x-max", vo.x_max, "largest odd x in the prism sweeps")->capture_default_str();
    verify_cmd->add_option("--b-range", vo.b_range, "b, b' range [-r, r] in the prism sweeps")->capture_default_str();
    verify_cmd->add_option("--n-max", vo.n_max, "largest n in the Type III/IV sweeps")->capture_default_str();
    verify_cmd->add_option("--p-max", vo.p_max, "largest |p| in the band-sum sweep")->capture_default_str();
    verify_cmd->add_option("--c-plus-p-max", vo.c_plus_p_max, "largest |p| in the c_+ sweep")->capture_default_str();
    verify_cmd->add_option("--classify-p-max", vo.classify_p_max, "largest |p| in the classification sweep")
        ->capture_default_str();
    verify_cmd->add_option("--classify-radius", vo.classify_radius, "slope radius in the classification sweep")
        ->capture_default_str();
    verify_cmd->add_option("--jobs,-j", vo.jobs, "worker threads (0: all cores)")->capture_default_str();
    verify_cmd->add_option("-o,--output", verify_out, "report path (default stdout)");

    // network
    auto* net_cmd = app.add_subcommand("network", "build and query network graphs");
    net_cmd->require_subcommand(1);
    std::string net_format = "dot", net_out;
    ssn::Int net_p_max = 5, net_radius = 2, fig_lo = -9, fig_hi = 3;
    auto* build_t = net_cmd->add_subcommand("build-T", "torus-knot subcomplex");
    build_t->add_option("--p-max", net_p_max, "largest |p|")->capture_default_str();
    build_t->add_option("--radius", net_radius, "slope radius around pq")->capture_default_str();
    auto* fig2 = net_cmd->add_subcommand("figure2", "trefoil meridian line with the c and c' lines");
    fig2->add_option("--lo", fig_lo, "left end of the meridian line")->capture_default_str();
    fig2->add_option("--hi", fig_hi, "right end of the meridian line")->capture_default_str();
    for (auto* sub : {build_t, fig2}) {
        sub->add_option("--format", net_format, "dot or json")
            ->check(CLI::IsMember({"dot", "json"}))
            ->capture_default_str();
        sub->add_option("-o,--output", net_out, "output path (default stdout)");
    }
    auto* path_cmd = net_cmd->add_subcommand("path", "shortest path from a vertex to the torus-knot subcomplex");
    std::string path_vertex, path_graph;
    path_cmd->add_option("--vertex", path_vertex, "start vertex, e.g. \"P(-2,3,7),18\"")->required();
    path_cmd->add_option("--graph", path_graph, "graph JSON (default: the trefoil graph of 'network figure2')");

    // catalog
    auto* cat_cmd = app.add_subcommand("catalog", "seiferters and annular pairs at (T(p,q), m)");
    ssn::Int kp = 0, kq = 0, km = 0;
    bool cat_json = false;
    std::vector<std::string> cat_params;
    cat_cmd->add_option("-p", kp, "torus knot parameter p")->required();
    cat_cmd->add_option("-q", kq, "torus knot parameter q (1 for the unknot)")->required();
    cat_cmd->add_option("-m", km, "surgery slope")->required();
    cat_cmd->add_option("--param", cat_params, "annular-pair parameter name=value (repeatable)");
    cat_cmd->add_flag("--json", cat_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*classify_cmd) {
            if (cq < 1) {
                std::cerr << "error: q must be >= 1\n";
                return kBadInput;
            }
            const Classified c = classify(ssn::canonical_torus_knot(cp, cq), cm);
            if (classify_json) {
                std::cout << classified_json(c).dump(2) << "\n";
            } else {
                print_classified(std::cout, c);
            }
            return kOk;
        }

        if (*twist_cmd) {
            const ssn::Catalog catalog = load_catalog();
            const ssn::TwistEngine engine(catalog);
            const ssn::SeifertSurgery base = ssn::parse_surgery(base_text);
            std::vector<ssn::TwistRequest> script;
            if (!script_path.empty()) {
                try {
                    script = parse_script(json::parse(read_file(script_path)));
                } catch (const json::exception& ex) {
                    throw ssn::ParseError(std::string("twist script: ") + ex.what());
                }
            }
            for (const auto& t : step_texts) script.push_back(parse_step(t));

            ssn::TwistTrace trace;
            try {
                trace = engine.run(base, script);
            } catch (const ssn::SeiferterNotValid& ex) {
                std::cerr << "error: " << ex.what() << "\n";
                return kBadSeiferter;
            }
            const ssn::SeifertSurgery& final_state = trace.states.back();
            const auto summary = torus_summary(final_state);
            if (twist_json) {
                json steps = json::array();
                for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                    steps.push_back({{"seiferter", trace.steps[i].seiferter_id},
                                     {"turns", trace.steps[i].turns},
                                     {"linking", trace.steps[i].linking_used},
                                     {"result", ssn::key(trace.states[i + 1])}});
                }
                json j = {{"schema_version", 1},
                          {"base", ssn::key(base)},
                          {"steps", steps},
                          {"final", ssn::key(final_state)},
                          {"manifold", summary ? json(*summary) : json(nullptr)}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "base: " << ssn::display(base) << "\n";
                for (std::size_t i = 0; i < trace.steps.size(); ++i) {
                    const auto& st = trace.steps[i];
                    std::cout << "step " << i << ": " << st.seiferter_id << " " << ssn::format_turns(st.turns)
                              << " (lk " << st.linking_used << ") -> " << ssn::display(trace.states[i + 1]) << "\n";
                }
                std::cout << "final: " << ssn::display(final_state) << "\n";
                if (summary) std::cout << "manifold: " << *summary << "\n";
            }
            return kOk;
        }

        if (*verify_cmd) {
            ssn::VerifyReport rep;
            try {
                rep = ssn::verify_all(vo);
            } catch (const ssn::DomainError& ex) {
                std::cerr << "error: " << ex.what() << "\n";
                return kBadInput;
            }
            write_output(verify_out, rep.to_json().dump(2) + "\n");
            for (const auto& l : rep.lemmas) {
                std::cerr << (l.passed() ? "ok   " : "FAIL ") << l.name << " (" << l.cases << " cases)";
                if (l.counterexample) std::cerr << ": " << *l.counterexample;
                std::cerr << "\n";
            }
            return rep.all_passed() ? kOk : kFailed;
        }

        if (*net_cmd) {
            if (*build_t || *fig2) {
                ssn::NetworkGraph g;
                try {
                    if (*build_t) {
                        g = ssn::build_subcomplex_t(net_p_max, net_radius);
                    } else {
                        const ssn::Catalog catalog = load_catalog();
                        g = ssn::build_figure2(ssn::TwistEngine(catalog), fig_lo, fig_hi);
                    }
                } catch (const ssn::DomainError& ex) {
                    std::cerr << "error: " << ex.what() << "\n";
                    return kBadInput;
                }
                write_output(net_out, net_format == "json" ? ssn::export_json(g) : ssn::export_dot(g));
                return kOk;
            }
            ssn::NetworkGraph g;
            if (path_graph.empty()) {
                const ssn::Catalog catalog = load_catalog();
                g = ssn::build_figure2(ssn::TwistEngine(catalog));
            } else {
                g = ssn::import_json(read_file(path_graph));
            }
            std::optional<std::vector<std::string>> path;
            try {
                path = ssn::find_path_to_t(g, ssn::key(ssn::parse_surgery(path_vertex)));
            } catch (const ssn::VertexAbsent& ex) {
                std::cerr << "error: " << ex.what() << "\n";
                return kNoVertex;
            }
            if (!path) {
                std::cout << "no path to the torus-knot subcomplex\n";
                return kFailed;
            }
            for (std::size_t i = 0; i < path->size(); ++i) std::cout << (i ? " -> " : "") << (*path)[i];
            std::cout << "\nlength: " << path->size() - 1 << "\n";
            return kOk;
        }

        if (*cat_cmd) {
            if (kq < 1) {
                std::cerr << "error: q must be >= 1\n";
                return kBadInput;
            }
            const ssn::Catalog catalog = load_catalog();
            const ssn::TorusKnotId k = ssn::canonical_torus_knot(kp, kq);
            const ssn::SeifertSurgery host(k, km);
            ssn::Bindings params;
            for (const auto& t : cat_params) {
                auto eq = t.find('=');
                if (eq == std::string::npos) throw ssn::ParseError("expected name=value, got '" + t + "'");
                params[t.substr(0, eq)] = ssn::detail::parse_int(std::string_view(t).substr(eq + 1), t);
            }
            const auto seiferters = catalog.lookup(host);
            const auto pairs = catalog.annular_pairs(host, params);
            if (cat_json) {
                json j = {{"schema_version", 1}, {"host", ssn::key(host)}};
                j["seiferters"] = json::array();
                for (const auto& s : seiferters) {
                    json images = json::array();
                    for (const auto& im : s.images) images.push_back({{"turns", im.turns}, {"knot", im.knot.label()}});
                    j["seiferters"].push_back({{"id", s.id},
                                               {"kind", ssn::to_string(s.kind)},
                                               {"linking", s.linking},
                                               {"linking_sign", s.linking_sign},
                                               {"hyperbolic", s.hyperbolic},
                                               {"irrelevant", s.irrelevant},
                                               {"alias", s.alias},
                                               {"images", images},
                                               {"citation", s.citation}});
                }
                j["annular_pairs"] = json::array();
                for (const auto& a : pairs) {
                    j["annular_pairs"].push_back({{"id", a.id},
                                                  {"members", {a.members.first, a.members.second}},
                                                  {"pair_linking", a.pair_linking},
                                                  {"knot_linkings", {a.per_knot_linkings.first, a.per_knot_linkings.second}},
                                                  {"hopf", a.is_hopf},
                                                  {"hyperbolic", a.hyperbolic},
                                                  {"citation", a.citation}});
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "host: " << ssn::display(host) << "\n";
                for (const auto& s : seiferters) {
                    std::cout << "  " << s.id << "  " << ssn::to_string(s.kind) << "  lk " << s.linking
                              << (s.hyperbolic ? "  hyperbolic" : "") << (s.irrelevant ? "  irrelevant" : "");
                    if (!s.alias.empty()) std::cout << "  = " << s.alias;
                    std::cout << "\n";
                }
                for (const auto& a : pairs) {
                    std::cout << "  pair " << a.id << "  lk(c1,c2) " << a.pair_linking << "  lk with K ("
                              << a.per_knot_linkings.first << ", " << a.per_knot_linkings.second << ")"
                              << (a.is_hopf ? "  hopf" : "") << (a.hyperbolic ? "  hyperbolic" : "") << "\n";
                }
            }
            return kOk;
        }
    } catch (const ssn::SeiferterNotValid& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kBadSeiferter;
    } catch (const ssn::VertexAbsent& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kNoVertex;
    } catch (const ssn::LemmaViolation& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return kFailed;
    } catch (const ssn::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kBadInput;
    }
    return kOk;
}
