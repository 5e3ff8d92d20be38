// sqf: command-line front end for forms, ray universes and QL-paths.
//
// Exit codes: 0 ok, 1 parse error, 2 validation or precondition failure,
// 3 enumeration cap exceeded.  A failing `check` also exits with 2.

#include "sqf/checks.hpp"
#include "sqf/error.hpp"
#include "sqf/generators.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>

using namespace sqf;
using nlohmann::json;

namespace {

struct Problem {
    GramForm form;
    std::vector<Ray> gens;
    Closure closure;
    std::size_t cap = 4000;
    std::uint64_t seed = 1;
    std::optional<Universe> prebuilt;

    Universe universe() const {
        if (prebuilt) return *prebuilt;
        if (gens.empty()) throw PreconditionError("empty universe");
        return build_universe(form, gens, closure, cap);
    }
};

std::vector<Ray> basis_rays(std::size_t n) {
    std::vector<Ray> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(basis_ray(n, i));
    return v;
}

Problem load_fixture(std::string_view name) {
    Problem p;
    if (name == "chain-twin") {
        p.prebuilt = chain_twin_universe();
        p.form = p.prebuilt->form();
        p.gens = p.prebuilt->rays();
        return p;
    }
    p.form = fixture(name);
    p.gens = basis_rays(p.form.dim());
    return p;
}

Problem load_problem(const std::string& src) {
    if (src.starts_with("fixture:")) return load_fixture(std::string_view(src).substr(8));
    std::ifstream in(src);
    if (!in) throw ParseError("cannot open '" + src + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(src + ": " + e.what());
    }
    Problem p;
    try {
        const json& fj = j.contains("form") ? j.at("form") : j;
        p.form = fj.is_string() ? load_fixture(fj.get<std::string>().substr(8)).form : form_from_json(fj);
        if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("universe")) {
            const json& u = j.at("universe");
            for (auto& g : u.at("generators")) {
                std::string s = g.get<std::string>();
                p.gens.push_back(s.find('_') != std::string::npos || s.find(':') == std::string::npos
                                     ? parse_ray(s, p.form.kind())
                                     : ray_of(parse_vector(s, p.form.kind())));
            }
            if (u.contains("closure")) p.closure = parse_closure(u.at("closure").get<std::string>());
            if (u.contains("cap")) p.cap = u.at("cap").get<std::size_t>();
        } else {
            p.gens = basis_rays(p.form.dim());
        }
    } catch (const json::exception& e) {
        throw ParseError(src + ": " + e.what());
    }
    return p;
}

// A path token is a universe index or a ray encoding.
std::size_t resolve(const Universe& U, const std::string& tok) {
    if (!tok.empty() && std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
        std::size_t i = std::stoul(tok);
        if (i >= U.size()) throw PreconditionError("index " + tok + " outside the universe");
        return i;
    }
    return U.index_of(parse_ray(tok, U.form().kind()));
}

Path resolve_path(const Universe& U, const std::vector<std::string>& toks) {
    Path p;
    for (auto& t : toks) p.push_back(resolve(U, t));
    if (!is_path(U, p)) throw PreconditionError("not a QL-path: " + to_string(U, p));
    return p;
}

std::string set_text(const Universe& U, const RaySet& s) {
    std::string out = "{";
    for (std::size_t i : members(s)) out += (out.size() > 1 ? ", " : "") + to_string(U.ray(i));
    return out + "}";
}

void print_rays(const Universe& U) {
    for (std::size_t i = 0; i < U.size(); ++i) std::cout << "  " << i << "  " << to_string(U.ray(i)) << "\n";
}

using Labelled = std::vector<std::pair<std::string, Universe>>;

int run_check(const Labelled& us, const std::string& suite, const SuiteOptions& o, bool as_json) {
    bool ok = true;
    json all = json::array();
    for (const auto& [label, U] : us) {
        for (const Report& r : check_universe(U, suite, o)) {
            ok = ok && r.passed();
            if (as_json) {
                json j = report_to_json(r);
                j["universe"] = label;
                all.push_back(j);
            } else {
                std::cout << "== " << label << " / " << r.title << (r.passed() ? "  PASS" : "  FAIL") << "\n"
                          << report_to_text(r);
            }
        }
    }
    if (as_json) std::cout << all.dump(2) << "\n";
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supertropical quadratic forms: rays, QL-graphs and QL-paths"};
    app.require_subcommand(1);
    std::string file;
    std::vector<std::string> args;
    bool as_json = false, as_dot = false, decorated = false;

    auto* validate_cmd = app.add_subcommand("validate", "Validate the form of a problem file");
    validate_cmd->add_option("file", file, "Problem file or fixture:X")->required();

    auto* eval_cmd = app.add_subcommand("eval", "q(x) for one vector, and b(x, y) for two");
    eval_cmd->add_option("file", file)->required();
    std::string vx, vy;
    eval_cmd->add_option("x", vx, "Vector such as [t:1, 0, g:2]")->required();
    eval_cmd->add_option("y", vy, "Second vector for b(x, y)");

    auto* cs_cmd = app.add_subcommand("cs", "CS-ratio of two rays");
    cs_cmd->add_option("file", file)->required();
    cs_cmd->add_option("rays", args)->required()->expected(2);

    auto* graph_cmd = app.add_subcommand("graph", "QL-graph of the universe");
    graph_cmd->add_option("file", file)->required();
    graph_cmd->add_flag("--decorated", decorated, "Add arrows and equivalences");
    graph_cmd->add_flag("--dot", as_dot, "Emit DOT");
    graph_cmd->add_flag("--json", as_json, "Emit JSON");

    auto* stars_cmd = app.add_subcommand("stars", "Star of every ray and the relative order");
    stars_cmd->add_option("file", file)->required();

    auto* cliques_cmd = app.add_subcommand("cliques", "Maximal quasilinear sets containing C");
    cliques_cmd->add_option("file", file)->required();
    cliques_cmd->add_option("--containing", args, "Rays of C (default: none)");
    cliques_cmd->add_flag("--json", as_json);

    std::string from, to;
    auto* path_cmd = app.add_subcommand("path", "A minimal QL-path between two rays");
    path_cmd->add_option("file", file)->required();
    path_cmd->add_option("from", from)->required();
    path_cmd->add_option("to", to)->required();
    path_cmd->add_flag("--json", as_json);

    std::string mode = "basic", strategy = "greedy";
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a QL-path to a direct one");
    reduce_cmd->add_option("file", file)->required();
    reduce_cmd->add_option("path", args, "Rays or universe indices")->required();
    reduce_cmd->add_option("--mode", mode)->check(CLI::IsMember({"basic", "elementary"}));
    reduce_cmd->add_flag("--json", as_json);

    auto* anchors_cmd = app.add_subcommand("anchors", "Anchor set of a minimal QL-path");
    anchors_cmd->add_option("file", file)->required();
    anchors_cmd->add_option("path", args)->required();
    anchors_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"greedy", "special"}));
    anchors_cmd->add_flag("--dot", as_dot, "Emit the anchor diagram as DOT");
    anchors_cmd->add_flag("--json", as_json);

    auto* flocks_cmd = app.add_subcommand("flocks", "Flocks, isolated twin pairs, singles and tracks");
    flocks_cmd->add_option("file", file)->required();
    flocks_cmd->add_option("path", args)->required();
    flocks_cmd->add_flag("--json", as_json);

    std::optional<std::size_t> track;
    auto* modify_cmd = app.add_subcommand("modify", "Flock modification along one track or all of them");
    modify_cmd->add_option("file", file)->required();
    modify_cmd->add_option("path", args)->required();
    modify_cmd->add_option("--track", track, "Index of the track to splice");
    modify_cmd->add_flag("--json", as_json);

    bool fixtures = false;
    std::string suite = "all";
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    auto* check_cmd = app.add_subcommand("check", "Run the invariant suites on a universe");
    check_cmd->add_option("file", file);
    check_cmd->add_flag("--fixtures", fixtures, "Use fixtures A to D and the twin chain");
    check_cmd->add_option("--suite", suite)->check(CLI::IsMember({"core", "convexity", "paths", "all"}));
    check_cmd->add_option("--samples", samples);
    check_cmd->add_option("--seed", seed);
    check_cmd->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*check_cmd) {
            if (!fixtures && file.empty()) throw PreconditionError("check needs a file or --fixtures");
            SuiteOptions o;
            Labelled us;
            if (fixtures) {
                for (char c : {'A', 'B', 'C', 'D'}) us.emplace_back(std::string("fixture ") + c, fixture_universe(c));
                us.emplace_back("chain with twin ray", chain_twin_universe());
            } else {
                Problem p = load_problem(file);
                o.seed = p.seed;
                us.emplace_back(file, p.universe());
            }
            if (seed) o.seed = *seed;
            o.samples = samples;
            return run_check(us, suite, o, as_json);
        }

        Problem p = load_problem(file);

        if (*validate_cmd) {
            ValidationReport v = validate(p.form);
            if (v.ok) {
                std::cout << "valid " << kind_name(p.form.kind()) << " form of dimension " << p.form.dim() << "\n";
                return 0;
            }
            for (auto& s : v.violations) std::cout << "violation: " << s << "\n";
            return 2;
        }
        require_valid(p.form);

        if (*eval_cmd) {
            Kind k = p.form.kind();
            Vector x = parse_vector(vx, k);
            if (x.size() != p.form.dim()) throw PreconditionError("vector has the wrong dimension");
            std::cout << "q = " << to_string(eval_q(p.form, x)) << "\n";
            if (!vy.empty()) {
                Vector y = parse_vector(vy, k);
                if (y.size() != p.form.dim()) throw PreconditionError("vector has the wrong dimension");
                std::cout << "b = " << to_string(eval_b(p.form, x, y)) << "\n";
            }
            return 0;
        }
        if (*cs_cmd) {
            Kind k = p.form.kind();
            std::cout << to_string(cs_rays(p.form, parse_ray(args[0], k), parse_ray(args[1], k))) << "\n";
            return 0;
        }

        Universe U = p.universe();

        if (*graph_cmd) {
            QlGraph g = decorated ? decorate(U) : build_ql_graph(U);
            if (as_dot) {
                std::cout << graph_to_dot(U, g);
            } else if (as_json) {
                std::cout << graph_to_json(U, g).dump(2) << "\n";
            } else {
                print_rays(U);
                for (auto [a, b] : g.edges) std::cout << "  " << a << " -- " << b << "\n";
                for (auto [a, b] : g.arrows) std::cout << "  " << a << " -> " << b << "\n";
                for (auto [a, b] : g.equivalent) std::cout << "  " << a << " == " << b << "\n";
            }
        } else if (*stars_cmd) {
            for (std::size_t x = 0; x < U.size(); ++x) {
                std::cout << to_string(U.ray(x)) << "\n  QL: " << set_text(U, ql_star(U, x)) << "\n";
                std::cout << "  up: " << set_text(U, up(U, x)) << "\n  down: " << set_text(U, down(U, x)) << "\n";
            }
        } else if (*cliques_cmd) {
            RaySet c = U.empty();
            for (auto& t : args) c.set(resolve(U, t));
            if (!is_quasilinear_set(U, c)) throw PreconditionError("C is not quasilinear");
            MaxSets m = max_ql_sets(U, c);
            RaySet tc = tilde_c(U, c);
            if (as_json) {
                json j{{"tilde_c", set_to_json(U, tc)}, {"maximal", json::array()}};
                for (auto& s : m.sets) j["maximal"].push_back(set_to_json(U, s));
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "tilde C: " << set_text(U, tc) << "\n";
                for (auto& s : m.sets) std::cout << "max: " << set_text(U, s) << "\n";
                for (std::size_t i : m.not_convex) std::cout << "not convex: " << set_text(U, m.sets[i]) << "\n";
            }
        } else if (*path_cmd) {
            auto mp = minimal_path(U, resolve(U, from), resolve(U, to));
            if (!mp) throw PreconditionError("the endpoints lie in different components");
            if (as_json)
                std::cout << path_to_json(U, *mp).dump(2) << "\n";
            else
                std::cout << "length " << mp->size() - 1 << ": " << to_string(U, *mp) << "\n";
        } else if (*reduce_cmd) {
            Path q = resolve_path(U, args);
            auto trace = reduce(U, q, mode == "basic" ? ReduceMode::basic : ReduceMode::elementary);
            if (as_json) {
                std::cout << trace_to_json(U, trace).dump(2) << "\n";
            } else {
                for (auto& s : trace) {
                    std::cout << to_string(s.dir) << " at " << s.i << " via " << to_string(U.ray(s.y)) << ": "
                              << to_string(U, s.after) << "\n";
                    if (s.bridge) std::cout << "  bridge " << to_string(U, s.bridge->path) << "\n";
                }
                Path out = trace.empty() ? q : trace.back().after;
                std::cout << "result (" << (is_direct(U, out) ? "direct" : "not direct") << "): " << to_string(U, out)
                          << "\n";
            }
        } else if (*anchors_cmd) {
            Path q = resolve_path(U, args);
            if (!is_minimal(U, q)) throw PreconditionError("anchor sets need a minimal path");
            AnchorSet S = anchor_set(U, q, strategy == "greedy" ? Strategy::greedy : Strategy::special);
            if (as_dot)
                std::cout << diagram_to_dot(anchor_diagram(U, q, S));
            else if (as_json)
                std::cout << anchors_to_json(U, S).dump(2) << "\n";
            else {
                std::cout << "m = " << S.m() << "\n";
                for (std::size_t k = 0; k < S.anchors.size(); ++k)
                    std::cout << "  Y" << k << " " << to_string(U.ray(S.anchors[k])) << "\n";
                for (std::size_t i = 0; i < q.size(); ++i) {
                    std::cout << "  X" << i << " legal Y" << S.legal[i];
                    if (S.illegal[i]) std::cout << ", illegal Y" << *S.illegal[i];
                    std::cout << "\n";
                }
            }
        } else if (*flocks_cmd) {
            Path q = resolve_path(U, args);
            if (!is_minimal(U, q)) throw PreconditionError("flocks need a minimal path");
            AnchorSet S = anchor_set(U, q);
            FlockPartition f = flocks(U, q, S);
            TrackPartition t = tracks(U, S);
            if (as_json) {
                json j = flocks_to_json(f);
                j["tracks"] = json::array();
                for (auto& tr : t.tracks) j["tracks"].push_back({{"k", tr.k}, {"t", tr.t}});
                j["flocky"] = is_flocky(U, q, S);
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto [a, b] : f.flocks) std::cout << "flock X" << a << "..X" << b << "\n";
                for (auto a : f.isolated) std::cout << "twin pair X" << a << ", X" << a + 1 << "\n";
                for (auto a : f.singles) std::cout << "single X" << a << "\n";
                for (auto& tr : t.tracks) std::cout << "track k=" << tr.k << " t=" << tr.t << "\n";
                std::cout << (is_flocky(U, q, S) ? "flocky" : "not flocky") << "\n";
            }
        } else if (*modify_cmd) {
            Path q = resolve_path(U, args);
            if (!is_minimal(U, q)) throw PreconditionError("flock modification needs a minimal path");
            AnchorSet S = anchor_set(U, q);
            TrackPartition t = tracks(U, S);
            Path out = q;
            if (t.tracks.empty()) {
                std::cerr << "no tracks\n";
            } else if (track) {
                if (*track >= t.tracks.size()) throw PreconditionError("no track with that index");
                out = flock_modification(U, q, S, t.tracks[*track]);
            } else {
                out = total_flock_modification(U, q, S);
            }
            if (as_json)
                std::cout << path_to_json(U, out).dump(2) << "\n";
            else
                std::cout << to_string(U, out) << "\n";
        }
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
