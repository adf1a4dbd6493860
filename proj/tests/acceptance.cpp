// Acceptance suite: one PASS/FAIL line per numbered criterion, exit code 0
// only when every criterion passes. Criteria that exercise the command-line
// tool receive its path as argv[1]; the frozen golden graph JSON is argv[2].
//
//   usage: acceptance <wildres-cli> <golden-resolve-json>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wildres/wildres.hpp"

namespace {

using namespace wildres;
using Clock = std::chrono::steady_clock;

bool g_all_ok = true;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt_ms(double ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1);
    if (ms >= 1000.0) os << ms / 1000.0 << " s";
    else os << ms << " ms";
    return os.str();
}

void report(int n, bool ok, const std::string& detail) {
    g_all_ok = g_all_ok && ok;
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << detail
              << std::endl;
}

std::string sh_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

// stdout text and exit code of a shell command.
std::pair<std::string, int> run_command(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {"", -1};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// --- criterion 1: the worked shortest-3-path example ----------------------

void criterion_1(const std::string& cli) {
    const std::string expected =
        "26/9 > 17/6 > 8/3 > 7/3 > 2 > 5/3 > 4/3 > 1 > 2/3 > 1/2 > 4/9 > 5/12 > 2/5";
    auto [out, rc] = run_command(sh_quote(cli) + " npath 3 26/9 2/5");
    if (rc != 0 || out != expected + "\n") {
        report(1, false, "CLI 'npath 3 26/9 2/5' printed something other than the expected chain");
        return;
    }
    // The runtime budget measures the computation, not process startup:
    // time the library call plus formatting in-process.
    auto t0 = Clock::now();
    NPath p = shortest_npath(3, Rational(26, 9), Rational(2, 5));
    std::ostringstream os;
    for (std::size_t i = 0; i < p.entries.size(); ++i)
        os << (i ? " > " : "") << p.entries[i].to_string();
    double ms = ms_since(t0);
    if (os.str() != expected) {
        report(1, false, "in-process chain disagrees with the expected output");
        return;
    }
    report(1, ms < 10.0,
           "shortest 3-path 26/9 -> 2/5 matches byte-for-byte (" + fmt_ms(ms) +
               ", budget 10 ms)");
}

// --- criteria 2-5: the (p, r, s) sweep -------------------------------------

struct SweepOutcome {
    std::size_t cases = 0;
    double iso_ms = 0.0;
    double matrix_ms = 0.0;
    std::string iso_fail;    // first failing case per criterion, empty = ok
    std::string node_fail;
    std::string chain_fail;
    std::string matrix_fail;
};

// Index of the unique valency-3 vertex, if there is exactly one and no
// vertex of higher valency.
std::optional<std::size_t> unique_node(const ResolutionGraph& g) {
    auto adj = g.adjacency();
    std::optional<std::size_t> node;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (adj[i].size() >= 4) return std::nullopt;
        if (adj[i].size() == 3) {
            if (node) return std::nullopt;
            node = i;
        }
    }
    return node;
}

// Number of multiplicity-p, self-intersection -2 vertices on the chain from
// the link to the node, counting the node but not the link.
std::optional<Int> link_chain_count(const ResolutionGraph& g, const Int& p, std::size_t node) {
    auto adj = g.adjacency();
    std::optional<std::size_t> link;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (g.vertices[i].is_link) link = i;
    if (!link || adj[*link].size() != 1) return std::nullopt;
    Int count = 0;
    std::size_t prev = *link;
    std::size_t cur = adj[*link].front();
    for (std::size_t guard = 0; guard <= g.vertices.size(); ++guard) {
        const Vertex& v = g.vertices[cur];
        if (v.multiplicity == p && v.self_intersection && *v.self_intersection == -2) ++count;
        if (cur == node) return count;
        if (adj[cur].size() != 2) return std::nullopt; // walked off the chain
        std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
    }
    return std::nullopt;
}

SweepOutcome run_sweep() {
    const std::vector<Int> primes{2, 3, 5, 7, 11, 13};
    SweepOutcome o;
    auto label = [](const Int& p, const Int& r, const Int& s) {
        return "(p=" + p.str() + ", r=" + r.str() + ", s=" + s.str() + ")";
    };

    for (const Int& p : primes)
        for (Int r = 1; r < p; ++r)
            for (Int s = 1; s <= 6; ++s) {
                ++o.cases;
                const std::string here = label(p, r, s);

                auto t0 = Clock::now();
                ResolutionGraph ww = ww_resolution_graph(make_rs_shape(p, r, s));
                ResolutionGraph rs = rs_graph(p, r, s);
                bool iso = graphs_isomorphic(ww, rs);
                o.iso_ms += ms_since(t0);
                if (!iso && o.iso_fail.empty()) o.iso_fail = here;

                // Node-neighbor law: multiplicities {p, t, p-t}, t*r = 1 mod p.
                Int t = 1;
                while ((t * r) % p != 1) ++t;
                std::vector<Int> want{p, t, p - t};
                std::sort(want.begin(), want.end());
                for (const ResolutionGraph* g : {&ww, &rs}) {
                    std::optional<std::size_t> node = unique_node(*g);
                    if (!node) {
                        if (o.node_fail.empty()) o.node_fail = here + " has no unique node";
                        if (o.chain_fail.empty()) o.chain_fail = here + " has no unique node";
                        continue;
                    }
                    auto adj = g->adjacency();
                    std::vector<Int> got;
                    for (std::size_t u : adj[*node])
                        got.push_back(g->vertices[u].multiplicity);
                    std::sort(got.begin(), got.end());
                    if (got != want && o.node_fail.empty()) o.node_fail = here;

                    std::optional<Int> count = link_chain_count(*g, p, *node);
                    if ((!count || *count != s * p) && o.chain_fail.empty()) o.chain_fail = here;
                }

                // Intersection-matrix laws on both constructions.
                t0 = Clock::now();
                for (const ResolutionGraph* g : {&ww, &rs}) {
                    ResolutionGraph exc = extract_view(*g, GraphView::exceptional);
                    IntersectionMatrix m = intersection_matrix(*g, MatrixScope::exceptional);
                    bool symmetric = true;
                    for (std::size_t i = 0; i < m.dim && symmetric; ++i)
                        for (std::size_t j = i + 1; j < m.dim && symmetric; ++j)
                            symmetric = m.entries[i][j] == m.entries[j][i];
                    bool ok = symmetric && is_tree(*g) && is_tree(exc) &&
                              is_negative_definite(m) && fiber_relation_check(*g).ok;
                    if (!ok && o.matrix_fail.empty()) o.matrix_fail = here;
                }
                o.matrix_ms += ms_since(t0);
            }
    return o;
}

void criteria_2_to_5() {
    SweepOutcome o;
    try {
        o = run_sweep();
    } catch (const std::exception& e) {
        const std::string msg = std::string("sweep aborted by exception: ") + e.what();
        for (int n : {2, 3, 4, 5}) report(n, false, msg);
        return;
    }
    const std::string cases = std::to_string(o.cases) + " sweep cases";
    report(2, o.iso_fail.empty() && o.iso_ms < 5000.0,
           o.iso_fail.empty()
               ? "rs_graph matches ww_resolution_graph on all " + cases + " (" +
                     fmt_ms(o.iso_ms) + ", budget 5 s)"
               : "graphs differ at " + o.iso_fail);
    report(3, o.node_fail.empty(),
           o.node_fail.empty()
               ? "node neighbors carry multiplicities {p, t, p-t} with t*r = 1 mod p on all " +
                     cases
               : "node-neighbor law fails at " + o.node_fail);
    report(4, o.chain_fail.empty(),
           o.chain_fail.empty()
               ? "link-to-node chain has exactly s*p vertices of multiplicity p and "
                 "self-intersection -2 on all " + cases
               : "chain count fails at " + o.chain_fail);
    report(5, o.matrix_fail.empty() && o.matrix_ms < 5000.0,
           o.matrix_fail.empty()
               ? "symmetric negative-definite matrices, trees, fiber relation on all " + cases +
                     " (" + fmt_ms(o.matrix_ms) + ", budget 5 s)"
               : "matrix/tree/fiber law fails at " + o.matrix_fail);
}

// --- criterion 6: continued-fraction identities ----------------------------

// Value of a quotient sequence folded from the right, independently of the
// convergent recurrence under test.
Rational fold_quotients(const std::vector<Int>& q) {
    Rational val(q.back());
    for (std::size_t i = q.size() - 1; i-- > 0;) val = Rational(q[i]) - val.reciprocal();
    return val;
}

void criterion_6() {
    std::mt19937_64 rng(1000003);
    std::uniform_int_distribution<long long> num_dist(-1000000, 1000000);
    std::uniform_int_distribution<long long> den_dist(1, 1000000);
    const int trials = 1000;
    auto t0 = Clock::now();
    for (int it = 0; it < trials; ++it) {
        Rational q(num_dist(rng), den_dist(rng));
        NegContFrac f = ncf_expand(q);
        for (std::size_t i = 1; i < f.quotients.size(); ++i)
            if (f.quotients[i] < 2) {
                report(6, false, "tail quotient below 2 for " + q.to_string());
                return;
            }
        for (std::size_t i = 0; i + 1 < f.convergents.size(); ++i) {
            const Rational& a = f.convergents[i];
            const Rational& b = f.convergents[i + 1];
            if (a.num() * b.den() - b.num() * a.den() != 1) {
                report(6, false, "determinant identity fails for " + q.to_string());
                return;
            }
            if (!(b.den() > a.den())) {
                report(6, false, "denominators not strictly increasing for " + q.to_string());
                return;
            }
        }
        if (f.convergents.back() != q || fold_quotients(f.quotients) != q) {
            report(6, false, "round trip fails for " + q.to_string());
            return;
        }
    }
    double ms = ms_since(t0);
    report(6, ms < 2000.0,
           std::to_string(trials) +
               " random expansions: determinant identity, denominator growth, round trip (" +
               fmt_ms(ms) + ", budget 2 s)");
}

// --- criterion 7: N-path oracle equivalence --------------------------------

void criterion_7() {
    std::mt19937_64 rng(7455300);
    std::uniform_int_distribution<long long> n_dist(1, 6);
    std::uniform_int_distribution<long long> den_dist(1, 30);
    const int trials = 300;
    int done = 0;
    auto t0 = Clock::now();
    while (done < trials) {
        Int N = n_dist(rng);
        Int d1 = den_dist(rng), d2 = den_dist(rng);
        std::uniform_int_distribution<long long> num1(0, 2 * static_cast<long long>(d1));
        std::uniform_int_distribution<long long> num2(0, 2 * static_cast<long long>(d2));
        Rational x(num1(rng), d1), y(num2(rng), d2);
        if (x == y) continue;
        Rational a = std::max(x, y), ap = std::min(x, y);

        NPath fast = shortest_npath(N, a, ap);
        Int bound = 1;
        for (const Rational& e : fast.entries) bound = std::max(bound, e.den());
        NPath slow = brute_force_shortest_npath(N, a, ap, bound);
        if (fast.entries != slow.entries) {
            report(7, false,
                   "mismatch for N=" + N.str() + ", a=" + a.to_string() + ", a'=" +
                       ap.to_string());
            return;
        }
        ++done;
    }
    double ms = ms_since(t0);
    report(7, ms < 30000.0,
           std::to_string(trials) +
               " random shortest N-paths (N <= 6, denominators <= 30) agree with the "
               "breadth-first oracle (" + fmt_ms(ms) + ", budget 30 s)");
}

// --- criterion 8: valuation axioms -----------------------------------------

Polynomial random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg_dist(0, max_deg);
    std::uniform_int_distribution<long long> num_dist(-30, 30);
    std::uniform_int_distribution<long long> den_dist(1, 12);
    int deg = deg_dist(rng);
    Polynomial f;
    for (int i = 0; i < deg; ++i)
        f = f + Polynomial::monomial(static_cast<std::size_t>(i),
                                     Rational(num_dist(rng), den_dist(rng)));
    long long lead = num_dist(rng);
    if (lead == 0) lead = 1;
    return f + Polynomial::monomial(static_cast<std::size_t>(deg), Rational(lead, den_dist(rng)));
}

void criterion_8() {
    // Fixed family of inductive valuations of depth 0 through 3; the depth-3
    // keys are expansions in the previous key with coefficients heavy enough
    // to keep the augmentation proper.
    Polynomial x = Polynomial::monomial(1);
    Polynomial phi2_2 = Polynomial::monomial(2) + Polynomial::constant(Rational(2));
    Polynomial phi3_2 = Polynomial::monomial(4) + Polynomial::monomial(2, Rational(12)) +
                        Polynomial::constant(Rational(84)); // (x^2+2)^2 + 8(x^2+2) + 64
    Polynomial phi2_3 = Polynomial::monomial(3) + Polynomial::constant(Rational(3));
    Polynomial phi3_3 = Polynomial::monomial(6) + Polynomial::monomial(3, Rational(15)) +
                        Polynomial::constant(Rational(198)); // (x^3+3)^2 + 9(x^3+3) + 162
    Polynomial phi2_5 = Polynomial::monomial(5) + Polynomial::constant(Rational(5));

    std::vector<MacLaneValuation> family;
    for (long long p : {2, 3, 5}) family.emplace_back(BaseField(p), std::vector<ValuationStep>{});
    family.emplace_back(BaseField(2), std::vector<ValuationStep>{{x, Rational(1, 2)}});
    family.emplace_back(BaseField(3), std::vector<ValuationStep>{{x, Rational(1, 3)}});
    family.emplace_back(BaseField(5), std::vector<ValuationStep>{{x, Rational(2, 5)}});
    family.emplace_back(BaseField(2), std::vector<ValuationStep>{{x, Rational(1, 2)},
                                                                 {phi2_2, Rational(3)}});
    family.emplace_back(BaseField(3), std::vector<ValuationStep>{{x, Rational(1, 3)},
                                                                 {phi2_3, Rational(2)}});
    family.emplace_back(BaseField(5), std::vector<ValuationStep>{{x, Rational(1, 5)},
                                                                 {phi2_5, Rational(3, 2)}});
    family.emplace_back(BaseField(2), std::vector<ValuationStep>{{x, Rational(1, 2)},
                                                                 {phi2_2, Rational(3)},
                                                                 {phi3_2, Rational(13, 2)}});
    family.emplace_back(BaseField(3), std::vector<ValuationStep>{{x, Rational(1, 3)},
                                                                 {phi2_3, Rational(2)},
                                                                 {phi3_3, Rational(5)}});

    auto t0 = Clock::now();
    for (const MacLaneValuation& v : family)
        for (const ValuationStep& step : v.steps())
            if (evaluate(v, step.key) != ExtRat(step.lambda)) {
                report(8, false, "v(key) != lambda in " + v.to_string());
                return;
            }

    std::mt19937_64 rng(8123457);
    const int trials = 500;
    for (int it = 0; it < trials; ++it) {
        const MacLaneValuation& v = family[static_cast<std::size_t>(it) % family.size()];
        Polynomial f = random_poly(rng, 6);
        Polynomial g = random_poly(rng, 6);
        // Force heavy cancellation in some sums so v(f+g) > min actually occurs.
        if (it % 5 == 0) g = Polynomial::constant(Rational(-1)) * f + random_poly(rng, 2);
        ExtRat vf = evaluate(v, f);
        ExtRat vg = evaluate(v, g);
        if (evaluate(v, f * g) != vf + vg) {
            report(8, false, "v(fg) != v(f) + v(g) under " + v.to_string());
            return;
        }
        if (!(evaluate(v, f + g) >= (vf < vg ? vf : vg))) {
            report(8, false, "v(f+g) < min(v(f), v(g)) under " + v.to_string());
            return;
        }
    }
    double ms = ms_since(t0);
    report(8, ms < 5000.0,
           std::to_string(trials) + " random pairs over " + std::to_string(family.size()) +
               " fixed valuations of depth <= 3: v(fg) = v(f)+v(g), v(f+g) >= min, "
               "v(key) = lambda (" + fmt_ms(ms) + ", budget 5 s)");
}

// --- criterion 9: frozen golden resolve output ------------------------------

void criterion_9(const std::string& cli, const std::string& golden_path) {
    std::string golden = read_file(golden_path);
    if (golden.empty()) {
        report(9, false, "golden file '" + golden_path + "' is missing or empty");
        return;
    }
    auto [out, rc] = run_command(sh_quote(cli) + " resolve --p 2 --val " +
                                 sh_quote("[v0, v1(x)=1/2, v2(x^2+2)=3]"));
    if (rc != 0 || out != golden) {
        report(9, false, "CLI resolve output differs from the frozen golden JSON");
        return;
    }
    // Structural double-check of the frozen document itself.
    try {
        ResolutionGraph g = parse_graph_json(golden);
        std::vector<Int> mults;
        for (const Vertex& v : g.vertices) mults.push_back(v.multiplicity);
        std::sort(mults.begin(), mults.end());
        bool ok = g.vertices.size() == 7 && g.edges.size() == 6 &&
                  mults == std::vector<Int>{1, 1, 2, 2, 2, 2, 2};
        for (const Vertex& v : g.vertices)
            ok = ok && v.self_intersection &&
                 *v.self_intersection == (v.is_link ? Int(-1) : Int(-2));
        report(9, ok,
               ok ? "resolve output is byte-identical to the golden 7-vertex graph"
                  : "golden graph does not have the documented structure");
    } catch (const std::exception& e) {
        report(9, false, std::string("golden graph failed to parse: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance <wildres-cli> <golden-resolve-json>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string golden = argv[2];
    try {
        criterion_1(cli);
        criteria_2_to_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9(cli, golden);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 2;
    }
    return g_all_ok ? 0 : 1;
}
