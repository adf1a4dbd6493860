// wildres — exact resolution graphs of normal models of the projective
// line over discretely valued fields.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wildres/wildres.hpp"

namespace {

using namespace wildres;

Int parse_integer(const std::string& text, const std::string& what) {
    Rational q = parse_rational(text);
    if (!q.is_integer()) throw parse_error(what + " must be an integer, got '" + text + "'");
    return q.num();
}

ValuationShape shape_from_expr(const std::string& val, const std::string& p_text) {
    // Validates p (primality) even when --val is a bare shape and p is
    // otherwise unused, so an invalid argument is never silently accepted.
    BaseField field(parse_integer(p_text, "p"));
    ValuationExpr expr = parse_valuation(val);
    if (expr.is_shape) return expr.shape();
    MacLaneValuation v(field, expr.steps);
    return shape_of(v);
}

void print_graph(const ResolutionGraph& g, const std::string& format) {
    if (format == "json") std::cout << emit_json(g);
    else if (format == "dot") std::cout << emit_dot(g);
    else throw validation_error("unknown format '" + format + "' (expected json|dot)");
}

int cmd_ncf(const std::string& q_text) {
    NegContFrac f = ncf_expand(parse_rational(q_text));
    std::cout << "quotients:";
    for (const Int& a : f.quotients) std::cout << " " << a.str();
    std::cout << "\nconvergents:";
    for (const Rational& c : f.convergents) std::cout << " " << c.to_string();
    std::cout << "\n";
    return 0;
}

int cmd_npath(const std::vector<std::string>& args, bool check) {
    if (check) {
        if (args.size() < 3)
            throw parse_error("npath --check needs N and at least two path entries");
        Int N = parse_integer(args[0], "N");
        std::vector<Rational> entries;
        for (std::size_t i = 1; i < args.size(); ++i) entries.push_back(parse_rational(args[i]));
        bool path = is_npath(N, entries);
        std::cout << "npath: " << (path ? "yes" : "no") << "\n";
        if (!path) return 2;
        bool shortest = is_shortest_npath(N, entries);
        std::cout << "shortest: " << (shortest ? "yes" : "no") << "\n";
        return shortest ? 0 : 2;
    }
    if (args.size() != 3) throw parse_error("npath needs exactly N, a, a'");
    NPath p = shortest_npath(parse_integer(args[0], "N"), parse_rational(args[1]),
                             parse_rational(args[2]));
    for (std::size_t i = 0; i < p.entries.size(); ++i)
        std::cout << (i ? " > " : "") << p.entries[i].to_string();
    std::cout << "\n";
    return 0;
}

int cmd_eval(const std::string& p_text, const std::string& val, const std::string& poly) {
    ValuationExpr expr = parse_valuation(val);
    if (expr.is_shape)
        throw validation_error("evaluation needs explicit key polynomials, not a bare shape");
    BaseField field(parse_integer(p_text, "p"));
    MacLaneValuation v(field, expr.steps);
    std::cout << evaluate(v, parse_polynomial(poly)).to_string() << "\n";
    return 0;
}

int cmd_resolve(const std::string& p_text, const std::string& val, const std::string& format,
                const std::string& view) {
    ValuationShape shape = shape_from_expr(val, p_text);
    ResolutionGraph g = minimal_resolution(shape);
    print_graph(extract_view(g, view_from_string(view)), format);
    return 0;
}

int cmd_rsgraph(const std::string& p_text, const std::string& r_text, const std::string& s_text,
                const std::string& format, const std::string& view) {
    ResolutionGraph g = rs_graph(parse_integer(p_text, "p"), parse_integer(r_text, "r"),
                                 parse_integer(s_text, "s"));
    print_graph(extract_view(g, view_from_string(view)), format);
    return 0;
}

int cmd_check_ww(const std::string& p_text, const std::string& s_text, const std::string& val) {
    Int p = parse_integer(p_text, "p");
    std::optional<Int> s;
    if (!s_text.empty()) s = parse_integer(s_text, "s");
    ValuationShape shape = shape_from_expr(val, p_text);
    ClassifyResult res = classify_ww(shape, p, s);
    if (!res.ok()) {
        std::cout << "not a weak wild profile:\n";
        for (const std::string& v : res.violations) std::cout << "  - " << v << "\n";
        return 2;
    }
    const WWParams& w = *res.params;
    std::cout << "weak wild profile\n";
    std::cout << "  p = " << w.p.str() << "\n";
    std::cout << "  n = " << w.n << "\n";
    std::cout << "  e = " << w.e.str() << "  (group (Z/" << w.p.str() << ")^" << w.e.str()
              << ")\n";
    std::cout << "  c =";
    for (const Int& c : w.c) std::cout << " " << c.str();
    std::cout << "\n  e_i =";
    for (const Int& e : w.eexp) std::cout << " " << e.str();
    std::cout << "\n  r = " << w.r.str() << "\n";
    if (w.s > 0) std::cout << "  s = " << w.s.str() << "\n";
    else std::cout << "  s = (not supplied; unconstrained beyond c_n > r + s)\n";
    std::cout << "not machine-checked: irreducibility of the last key and that it generates"
                 " the extension\n";
    return 0;
}

int cmd_check_rs(const std::string& p_text, const std::string& r_text, const std::string& s_text,
                 const std::string& char_text, const std::string& ek_text) {
    BaseField::Char ch;
    if (char_text == "0") ch = BaseField::Char::zero;
    else if (char_text == "p") ch = BaseField::Char::p;
    else throw parse_error("--char must be 0 or p");
    std::optional<Int> e_K;
    if (!ek_text.empty()) e_K = parse_integer(ek_text, "e_K");
    auto violations = validate_rs(parse_integer(p_text, "p"), parse_integer(r_text, "r"),
                                  parse_integer(s_text, "s"), ch, e_K);
    if (violations.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    std::cout << "violations:\n";
    for (const std::string& v : violations) std::cout << "  - " << v << "\n";
    return 2;
}

int cmd_check_graph(const std::string& file) {
    std::string text;
    if (file == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(file);
        if (!in) throw validation_error("cannot open '" + file + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    ResolutionGraph g = parse_graph_json(text);
    GraphChecks checks = run_graph_checks(g);
    FiberCheck fiber = fiber_relation_check(g);
    std::cout << "tree: " << (checks.tree ? "pass" : "fail") << "\n";
    std::cout << "negative_definite: " << (checks.negative_definite ? "pass" : "fail") << "\n";
    std::cout << "fiber_relation: " << (checks.fiber_relation ? "pass" : "fail");
    if (!fiber.failing.empty()) {
        std::cout << " (";
        for (std::size_t i = 0; i < fiber.failing.size(); ++i)
            std::cout << (i ? ", " : "") << fiber.failing[i];
        std::cout << ")";
    }
    std::cout << "\n";
    if (!fiber.note.empty()) std::cout << "note: " << fiber.note << "\n";
    if (g.view != GraphView::full)
        std::cout << "note: fiber_relation expects the full fiber; view is '"
                  << to_string(g.view) << "'\n";
    return checks.all() ? 0 : 2;
}

Int oracle_den_bound() {
    if (const char* env = std::getenv("WILDRES_DEN_BOUND")) {
        Rational q = parse_rational(env);
        if (!q.is_integer() || q.num() < 1)
            throw validation_error("WILDRES_DEN_BOUND must be a positive integer");
        return q.num();
    }
    return 64;
}

// Locate the unique valency-3 vertex; returns npos if there is none.
std::size_t find_node(const ResolutionGraph& g) {
    auto adj = g.adjacency();
    std::size_t node = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (adj[i].size() >= 4) return static_cast<std::size_t>(-1);
        if (adj[i].size() == 3) {
            if (node != static_cast<std::size_t>(-1)) return static_cast<std::size_t>(-1);
            node = i;
        }
    }
    return node;
}

int cmd_check_sweep() {
    const std::vector<Int> primes{2, 3, 5, 7, 11, 13};
    const Int bound = oracle_den_bound();
    std::size_t cases = 0;
    std::vector<std::string> failures;
    auto record = [&failures](const Int& p, const Int& r, const Int& s, const std::string& what) {
        failures.push_back("(p=" + p.str() + ", r=" + r.str() + ", s=" + s.str() + "): " + what);
    };

    for (const Int& p : primes)
        for (Int r = 1; r < p; ++r)
            for (Int s = 1; s <= 6; ++s) {
                ++cases;
                ValuationShape shape = make_rs_shape(p, r, s);
                ResolutionGraph ww = ww_resolution_graph(shape);
                ResolutionGraph rs = rs_graph(p, r, s);

                if (!graphs_isomorphic(ww, rs))
                    record(p, r, s, "rs_graph and ww_resolution_graph are not isomorphic");

                for (const ResolutionGraph* g : {&ww, &rs}) {
                    if (!is_tree(*g)) record(p, r, s, "graph is not a tree");
                    if (!is_negative_definite(intersection_matrix(*g, MatrixScope::exceptional)))
                        record(p, r, s, "exceptional matrix is not negative definite");
                    if (!fiber_relation_check(*g).ok)
                        record(p, r, s, "fiber relation fails");
                }

                // Node-neighbor law: multiplicities {p, t, p-t}, t*r = 1 mod p.
                std::size_t node = find_node(rs);
                if (node == static_cast<std::size_t>(-1)) {
                    record(p, r, s, "no unique valency-3 node");
                } else {
                    Int t = 1;
                    while ((t * r) % p != 1) ++t;
                    std::vector<Int> want{p, t, p - t};
                    std::sort(want.begin(), want.end());
                    auto adj = rs.adjacency();
                    std::vector<Int> got;
                    for (std::size_t u : adj[node])
                        got.push_back(rs.vertices[u].multiplicity);
                    std::sort(got.begin(), got.end());
                    if (got != want) record(p, r, s, "node neighbors violate the {p,t,p-t} law");
                }

                // -2 chain count: link to node inclusive, exclusive of link.
                if (node != static_cast<std::size_t>(-1)) {
                    auto adj = rs.adjacency();
                    std::size_t link = static_cast<std::size_t>(-1);
                    for (std::size_t i = 0; i < rs.vertices.size(); ++i)
                        if (rs.vertices[i].is_link) link = i;
                    Int count = 0;
                    std::size_t prev = link, cur = adj[link].front();
                    while (true) {
                        const Vertex& v = rs.vertices[cur];
                        if (v.multiplicity == p && v.self_intersection &&
                            *v.self_intersection == -2)
                            ++count;
                        if (cur == node) break;
                        std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                        prev = cur;
                        cur = next;
                    }
                    if (count != s * p) record(p, r, s, "link-to-node -2 chain is not s*p long");
                }

                // Oracle spot-checks on the two depth-one chains.
                NPath vl = shortest_npath(1, Rational(1), Rational(r, p));
                NPath vl_oracle = brute_force_shortest_npath(1, Rational(1), Rational(r, p), bound);
                if (vl.entries != vl_oracle.entries)
                    record(p, r, s, "vl chain disagrees with brute-force oracle");
                NPath w0 = shortest_npath(1, Rational(r, p), Rational(0));
                NPath w0_oracle = brute_force_shortest_npath(1, Rational(r, p), Rational(0), bound);
                if (w0.entries != w0_oracle.entries)
                    record(p, r, s, "w chain disagrees with brute-force oracle");
            }

    if (failures.empty()) {
        std::cout << "sweep: " << cases << "/" << cases
                  << " cases ok (p in {2,3,5,7,11,13}, 0 < r < p, 1 <= s <= 6)\n";
        return 0;
    }
    std::cout << "sweep: " << failures.size() << " failures in " << cases << " cases\n";
    for (const std::string& f : failures) std::cout << "  - " << f << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact resolution graphs of normal models of P^1 over discretely valued fields"};
    app.require_subcommand(1);
    int rc = 0;

    // ncf <q>
    std::string ncf_q;
    CLI::App* ncf = app.add_subcommand("ncf", "negative continued fraction of a rational");
    ncf->add_option("q", ncf_q, "rational number, e.g. 26/9")->required();
    ncf->callback([&] { rc = cmd_ncf(ncf_q); });

    // npath [--check] <N> <a> <a'> | --check <N> <e0> <e1> ...
    std::vector<std::string> npath_args;
    bool npath_check = false;
    CLI::App* npath = app.add_subcommand("npath", "shortest N-path between two rationals");
    npath->add_flag("--check", npath_check, "validate a given path instead of computing one");
    npath->add_option("values", npath_args, "N a a'  (or with --check: N entry entry ...)")
        ->required()
        ->expected(-3);
    npath->callback([&] { rc = cmd_npath(npath_args, npath_check); });

    // eval --p <p> --val "<expr>" --poly "<poly>"
    std::string eval_p, eval_val, eval_poly;
    CLI::App* eval = app.add_subcommand("eval", "evaluate an inductive valuation on a polynomial");
    eval->add_option("--p", eval_p, "residue characteristic")->required();
    eval->add_option("--val", eval_val, "valuation, e.g. \"[v0, v1(x)=1/2]\"")->required();
    eval->add_option("--poly", eval_poly, "polynomial in x")->required();
    eval->callback([&] { rc = cmd_eval(eval_p, eval_val, eval_poly); });

    // resolve --p <p> --val "<expr>" [--format json|dot] [--view ...]
    std::string res_p, res_val, res_format = "json", res_view = "extended";
    CLI::App* resolve = app.add_subcommand("resolve", "minimal regular resolution graph");
    resolve->add_option("--p", res_p, "residue characteristic")->required();
    resolve->add_option("--val", res_val, "valuation or bare shape, e.g. \"[1/2, 3]\"")
        ->required();
    resolve->add_option("--format", res_format, "json|dot (default json)");
    resolve->add_option("--view", res_view, "full|extended|exceptional (default extended)");
    resolve->callback([&] { rc = cmd_resolve(res_p, res_val, res_format, res_view); });

    // rsgraph --p <p> --r <r> --s <s> [--format ...] [--view ...]
    std::string rsg_p, rsg_r, rsg_s, rsg_format = "json", rsg_view = "extended";
    CLI::App* rsgraph = app.add_subcommand("rsgraph", "direct (r,s)-graph construction");
    rsgraph->add_option("--p", rsg_p, "prime p")->required();
    rsgraph->add_option("--r", rsg_r, "0 < r < p")->required();
    rsgraph->add_option("--s", rsg_s, "s > 0")->required();
    rsgraph->add_option("--format", rsg_format, "json|dot (default json)");
    rsgraph->add_option("--view", rsg_view, "full|extended|exceptional (default extended)");
    rsgraph->callback([&] { rc = cmd_rsgraph(rsg_p, rsg_r, rsg_s, rsg_format, rsg_view); });

    // check {ww|rs|graph|sweep}
    CLI::App* check = app.add_subcommand("check", "validators and cross-checks");
    check->require_subcommand(1);

    std::string cww_p, cww_s, cww_val;
    CLI::App* cww = check->add_subcommand("ww", "classify a shape as a weak wild profile");
    cww->add_option("--p", cww_p, "prime p")->required();
    cww->add_option("--s", cww_s, "ramification jump (optional)");
    cww->add_option("--val", cww_val, "valuation or bare shape")->required();
    cww->callback([&] { rc = cmd_check_ww(cww_p, cww_s, cww_val); });

    std::string crs_p, crs_r, crs_s, crs_char = "0", crs_ek;
    CLI::App* crs = check->add_subcommand("rs", "existence constraints on a type (r,s)");
    crs->add_option("--p", crs_p, "prime p")->required();
    crs->add_option("--r", crs_r, "0 < r < p")->required();
    crs->add_option("--s", crs_s, "s > 0")->required();
    crs->add_option("--char", crs_char, "residue field characteristic situation: 0|p");
    crs->add_option("--eK", crs_ek, "absolute ramification index (characteristic zero)");
    crs->callback([&] { rc = cmd_check_rs(crs_p, crs_r, crs_s, crs_char, crs_ek); });

    std::string cgraph_file;
    CLI::App* cgraph = check->add_subcommand("graph", "structural checks on an emitted JSON graph");
    cgraph->add_option("file", cgraph_file, "graph JSON file ('-' for stdin)")->required();
    cgraph->callback([&] { rc = cmd_check_graph(cgraph_file); });

    CLI::App* csweep = check->add_subcommand(
        "sweep", "cross-validate rs_graph against the resolution pipeline over the full sweep");
    csweep->callback([&] { rc = cmd_check_sweep(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const wildres::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const wildres::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const wildres::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return rc;
}
