#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classification.hpp"
#include "contfrac.hpp"
#include "npath.hpp"

namespace wildres {

// Identity of a special-fiber component. The chain vertices carry the
// rational chain parameter lambda; rendering is "vtilde0", "v/<i>",
// "vl/<i>/<num>[:<den>]", "w/<i>/<num>[:<den>]".
struct ComponentTag {
    enum class Kind { tilde_v0, v, vl, w };

    Kind kind = Kind::v;
    std::size_t index = 0; // the i of v/vl/w; unused for vtilde0
    Rational lambda;       // chain parameter; unused for vtilde0 and v

    static ComponentTag make_tilde_v0() { return {Kind::tilde_v0, 0, Rational(0)}; }
    static ComponentTag make_v(std::size_t i) { return {Kind::v, i, Rational(0)}; }
    static ComponentTag make_vl(std::size_t i, Rational lam) { return {Kind::vl, i, std::move(lam)}; }
    static ComponentTag make_w(std::size_t i, Rational lam) { return {Kind::w, i, std::move(lam)}; }

    std::string to_string() const {
        auto lam_str = [this]() {
            std::string s = lambda.num().str();
            if (!lambda.is_integer()) s += ":" + lambda.den().str();
            return s;
        };
        switch (kind) {
        case Kind::tilde_v0: return "vtilde0";
        case Kind::v: return "v/" + std::to_string(index);
        case Kind::vl: return "vl/" + std::to_string(index) + "/" + lam_str();
        case Kind::w: return "w/" + std::to_string(index) + "/" + lam_str();
        }
        throw internal_error("unreachable tag kind");
    }

    static ComponentTag parse(const std::string& s);

    friend bool operator==(const ComponentTag& a, const ComponentTag& b) {
        return a.kind == b.kind && a.index == b.index && a.lambda == b.lambda;
    }
    friend bool operator!=(const ComponentTag& a, const ComponentTag& b) { return !(a == b); }
};

inline ComponentTag ComponentTag::parse(const std::string& s) {
    auto bad = [&s]() { return validation_error("malformed component tag '" + s + "'"); };
    if (s == "vtilde0") return make_tilde_v0();
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) throw bad();
    std::string head = s.substr(0, slash);
    std::string rest = s.substr(slash + 1);
    auto parse_index = [&bad](const std::string& t) -> std::size_t {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw bad();
        return static_cast<std::size_t>(std::stoull(t));
    };
    auto parse_lambda = [&bad](const std::string& t) -> Rational {
        std::size_t colon = t.find(':');
        try {
            if (colon == std::string::npos) return Rational(Int(t));
            return Rational(Int(t.substr(0, colon)), Int(t.substr(colon + 1)));
        } catch (const std::exception&) {
            throw bad();
        }
    };
    if (head == "v") {
        if (rest.find('/') != std::string::npos) throw bad();
        return make_v(parse_index(rest));
    }
    std::size_t slash2 = rest.find('/');
    if (slash2 == std::string::npos) throw bad();
    std::size_t idx = parse_index(rest.substr(0, slash2));
    Rational lam = parse_lambda(rest.substr(slash2 + 1));
    if (head == "vl") return make_vl(idx, std::move(lam));
    if (head == "w") return make_w(idx, std::move(lam));
    throw bad();
}

struct Vertex {
    ComponentTag tag;
    Rational lambda;    // the valuation parameter the component reports
    Int multiplicity = 1;
    std::optional<Int> self_intersection;
    bool is_link = false;
};

enum class GraphView { full, extended, exceptional };

inline std::string to_string(GraphView v) {
    switch (v) {
    case GraphView::full: return "full";
    case GraphView::extended: return "extended";
    case GraphView::exceptional: return "exceptional";
    }
    throw internal_error("unreachable view");
}

inline GraphView view_from_string(const std::string& s) {
    if (s == "full") return GraphView::full;
    if (s == "extended") return GraphView::extended;
    if (s == "exceptional") return GraphView::exceptional;
    throw validation_error("unknown view '" + s + "' (expected full|extended|exceptional)");
}

// Dual graph of a special fiber: components with multiplicities and
// self-intersections, simple edges for intersection points. Always a tree
// for the models this library constructs.
struct ResolutionGraph {
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    GraphView view = GraphView::full;
    std::size_t depth = 0;           // number of augmentation steps n
    bool tilde_v0_is_gauss = false;  // vtilde0 coincides with the Gauss component

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(vertices.size());
        for (const auto& [a, b] : edges) {
            WILDRES_ASSERT(a < vertices.size() && b < vertices.size() && a != b);
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    std::optional<std::size_t> find(const std::string& tag) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].tag.to_string() == tag) return i;
        return std::nullopt;
    }
};

// --- singularity predicates ---------------------------------------------

// The model is singular at the center of the last component iff lambda_n
// falls outside the value group (1/N_{n-1})Z accumulated so far.
inline bool singular_at_center(const ValuationShape& shape) {
    const Rational& lam = shape.lambda(shape.depth());
    return !(lam * Rational(shape.N(static_cast<long>(shape.depth()) - 1))).is_integer();
}

// The point x = infinity is smooth only in the integral depth-one case.
inline bool singular_at_infinity(const ValuationShape& shape) {
    return !(shape.depth() == 1 && shape.lambda(1).is_integer());
}

// Two crossing components with parameters lam < lam_prime meet in a
// singular point iff their gap exceeds the regular-crossing step
// N/(lcm(N,c)*lcm(N,c')); a smaller gap is geometrically impossible.
inline bool crossing_singular(const Int& N, const Rational& lam, const Rational& lam_prime) {
    if (N < 1) throw validation_error("N must be a positive integer");
    if (!(lam_prime > lam)) throw validation_error("crossing requires lam_prime > lam");
    Rational step = npath_step(N, lam_prime, lam);
    Rational diff = lam_prime - lam;
    if (diff < step)
        throw validation_error("impossible adjacent components: gap " + diff.to_string() +
                               " below minimal step " + step.to_string());
    return diff > step;
}

namespace detail {

// Least element of (1/N)Z strictly greater than lam.
inline Rational next_grid_point(const Int& N, const Rational& lam) {
    Rational scaled = lam * Rational(N);
    return Rational(scaled.floor() + 1, N);
}

} // namespace detail

// Chain parameters resolving the center singularity: the shortest
// N_{n-1}-path from the next grid point above lambda_n down to lambda_n.
inline std::vector<Rational> resolve_center(const ValuationShape& shape) {
    if (!singular_at_center(shape))
        throw validation_error("center is regular; nothing to resolve");
    Int N = shape.N(static_cast<long>(shape.depth()) - 1);
    const Rational& lam = shape.lambda(shape.depth());
    return shortest_npath(N, detail::next_grid_point(N, lam), lam).entries;
}

// Chain parameters resolving a singular crossing: the shortest N-path from
// lam_prime down to lam; the interior entries are the exceptional chain.
inline std::vector<Rational> resolve_crossing(const Int& N, const Rational& lam,
                                              const Rational& lam_prime) {
    if (!crossing_singular(N, lam, lam_prime))
        throw validation_error("crossing is regular; nothing to resolve");
    return shortest_npath(N, lam_prime, lam).entries;
}

// --- graph construction ---------------------------------------------------

namespace detail {

class GraphBuilder {
public:
    std::size_t add(ComponentTag tag, Rational lambda, Int mult) {
        std::string key = tag.to_string();
        auto [it, fresh] = index_.emplace(std::move(key), g.vertices.size());
        WILDRES_ASSERT(fresh); // tags are unique within one graph
        (void)it;
        g.vertices.push_back(Vertex{std::move(tag), std::move(lambda), std::move(mult),
                                    std::nullopt, false});
        return g.vertices.size() - 1;
    }

    void link(std::size_t a, std::size_t b) {
        WILDRES_ASSERT(a != b);
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
    }

    // Fill self-intersections from the full-fiber identity
    // m_i * E_i^2 + sum of neighbor multiplicities = 0.
    void solve_self_intersections() {
        auto adj = g.adjacency();
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            Int sum = 0;
            for (std::size_t j : adj[i]) sum += g.vertices[j].multiplicity;
            WILDRES_ASSERT(sum % g.vertices[i].multiplicity == 0);
            g.vertices[i].self_intersection = -(sum / g.vertices[i].multiplicity);
        }
    }

    ResolutionGraph g;

private:
    std::map<std::string, std::size_t> index_;
};

} // namespace detail

// Dual graph of the minimal regular resolution of the normal model given
// by `shape`, carrying the full special fiber.
inline ResolutionGraph minimal_resolution(const ValuationShape& shape) {
    const std::size_t n = shape.depth();
    detail::GraphBuilder b;
    b.g.view = GraphView::full;
    b.g.depth = n;

    if (n == 1 && shape.lambda(1).is_integer()) {
        // Smooth model: one component, nothing exceptional.
        std::size_t v1 = b.add(ComponentTag::make_v(1), shape.lambda(1), 1);
        b.g.vertices[v1].is_link = true;
        b.g.vertices[v1].self_intersection = Int(0);
        return std::move(b.g);
    }

    const Rational& lam1 = shape.lambda(1);
    b.g.tilde_v0_is_gauss = lam1 > Rational(0) && lam1 < Rational(1);
    Rational lam0(lam1.floor());

    std::size_t tilde_v0 = b.add(ComponentTag::make_tilde_v0(), lam0, 1);
    std::vector<std::size_t> v_idx(n + 1); // v_idx[i] = vertex of v/i
    for (std::size_t i = 1; i <= n; ++i)
        v_idx[i] = b.add(ComponentTag::make_v(i), shape.lambda(i),
                         shape.N(static_cast<long>(i)));
    b.g.vertices[v_idx[n]].is_link = true;

    // Horizontal chains: between v/i and v/(i+1) runs the interior of the
    // shortest N_i-path from lambda_{i+1} down to the value v/i re-reports
    // one level up ((N_i/N_{i-1}) * lambda_i; floor(lambda_1) at i = 0).
    for (std::size_t i = 0; i + 1 <= n; ++i) {
        Int N = shape.N(static_cast<long>(i));
        Rational top = shape.lambda(i + 1);
        Rational bottom =
            i == 0 ? lam0
                   : shape.lambda(i) * Rational(N) / Rational(shape.N(static_cast<long>(i) - 1));
        NPath path = shortest_npath(N, top, bottom);
        std::size_t upper = v_idx[i + 1];
        std::size_t lower = i == 0 ? tilde_v0 : v_idx[i];
        std::size_t prev = upper;
        for (std::size_t k = 1; k + 1 < path.entries.size(); ++k) {
            const Rational& lam = path.entries[k];
            std::size_t w = b.add(ComponentTag::make_w(i, lam), lam, lcm(N, lam.den()));
            b.link(prev, w);
            prev = w;
        }
        b.link(prev, lower);
    }

    // Vertical chains: from v/i up through the shortest N_{i-1}-path from
    // the next grid point down to lambda_i, the lambda_i end folding into
    // v/i itself. At i = n the chain exists only for a singular center.
    for (std::size_t i = 1; i <= n; ++i) {
        Int N = shape.N(static_cast<long>(i) - 1);
        const Rational& lam_i = shape.lambda(i);
        if ((lam_i * Rational(N)).is_integer()) {
            WILDRES_ASSERT(i == n); // shape invariants forbid this for i < n
            continue;
        }
        NPath path = shortest_npath(N, detail::next_grid_point(N, lam_i), lam_i);
        std::size_t prev = v_idx[i];
        for (std::size_t k = path.entries.size() - 1; k-- > 0;) {
            const Rational& lam = path.entries[k];
            std::size_t vl = b.add(ComponentTag::make_vl(i, lam), lam, lcm(N, lam.den()));
            b.link(prev, vl);
            prev = vl;
        }
    }

    b.solve_self_intersections();
    return std::move(b.g);
}

// Restrict a graph to a narrower view. `extended` drops the vl/n chain
// (the components resolving the center); `exceptional` additionally drops
// the link — unless the link is the only vertex (smooth model), which is
// kept so the output stays meaningful.
inline ResolutionGraph extract_view(const ResolutionGraph& g, GraphView view) {
    auto narrower = [](GraphView v) { return static_cast<int>(v); };
    if (narrower(view) < narrower(g.view)) {
        // Widening is only meaningful when nothing was dropped: the
        // extended view coincides with the full fiber exactly when the
        // center is regular, i.e. the lambda of v/n lies in the value
        // group (1/N_{n-1})Z generated before the last step (N_{n-1} is
        // the multiplicity of v/(n-1); 1 at depth one). Graphs carrying
        // leftover vl/n vertices or lacking the data to decide are refused.
        if (g.view == GraphView::extended && view == GraphView::full) {
            bool has_vl_n = false;
            for (const Vertex& v : g.vertices)
                has_vl_n |= v.tag.kind == ComponentTag::Kind::vl && v.tag.index == g.depth;
            bool regular_center = false;
            if (auto vn = g.find("v/" + std::to_string(g.depth)); vn && g.depth >= 1) {
                Int N_prev = 1;
                bool known = true;
                if (g.depth >= 2) {
                    auto prev = g.find("v/" + std::to_string(g.depth - 1));
                    if (prev) N_prev = g.vertices[*prev].multiplicity;
                    else known = false;
                }
                regular_center =
                    known && (g.vertices[*vn].lambda * Rational(N_prev)).is_integer();
            }
            if (!has_vl_n && regular_center) {
                ResolutionGraph out = g;
                out.view = GraphView::full;
                return out;
            }
        }
        throw validation_error("cannot widen a " + to_string(g.view) + " graph to " +
                               to_string(view));
    }

    ResolutionGraph out;
    out.view = view;
    out.depth = g.depth;
    out.tilde_v0_is_gauss = g.tilde_v0_is_gauss;

    std::vector<std::size_t> remap(g.vertices.size(), static_cast<std::size_t>(-1));
    bool drop_vl_n = view != GraphView::full;
    bool drop_link = view == GraphView::exceptional && g.vertices.size() > 1;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex& v = g.vertices[i];
        if (drop_vl_n && v.tag.kind == ComponentTag::Kind::vl && v.tag.index == g.depth) continue;
        if (drop_link && v.is_link) continue;
        remap[i] = out.vertices.size();
        out.vertices.push_back(v);
    }
    for (const auto& [a, bb] : g.edges)
        if (remap[a] != static_cast<std::size_t>(-1) && remap[bb] != static_cast<std::size_t>(-1))
            out.edges.emplace_back(std::min(remap[a], remap[bb]), std::max(remap[a], remap[bb]));
    return out;
}

// Extended dual graph of the weak wild quotient singularity at infinity:
// the resolution components plus the strict transform of the original
// component as link. Requires the structural profile of such a
// singularity (p-power denominators and an integral last slope), with p
// read off the first denominator.
inline ResolutionGraph ww_resolution_graph(const ValuationShape& shape) {
    Int d1 = shape.lambda(1).den();
    if (d1 == 1)
        throw validation_error("lambda_1 must have a nontrivial p-power denominator");
    Int p = 2;
    while (d1 % p != 0) ++p; // smallest prime factor
    std::vector<std::string> bad;
    for (std::size_t i = 1; i <= shape.depth(); ++i) {
        Int k;
        if (!detail::p_power_exponent(p, shape.lambda(i).den(), k))
            bad.push_back("denominator of lambda_" + std::to_string(i) + " is not a power of " +
                          p.str());
    }
    if (!shape.lambda(shape.depth()).is_integer())
        bad.push_back("lambda_n must be an integer");
    if (!bad.empty()) {
        std::string msg = "shape is not of weak wild type:";
        for (const std::string& m : bad) msg += " " + m + ";";
        msg.pop_back();
        throw validation_error(msg);
    }
    ResolutionGraph g = minimal_resolution(shape);
    return extract_view(g, GraphView::extended);
}

// Direct (r,s)-graph construction from the continued-fraction data of r/p
// and p/r, with every multiplicity and self-intersection written down
// explicitly rather than derived from the resolution pipeline — the two
// constructions cross-validate each other.
inline ResolutionGraph rs_graph(const Int& p, const Int& r, const Int& s) {
    if (!is_prime(p)) throw validation_error("p = " + p.str() + " is not prime");
    if (!(r > 0 && r < p)) throw validation_error("r must satisfy 0 < r < p");
    if (s < 1) throw validation_error("s must be a positive integer");

    NegContFrac up = ncf_expand(Rational(r, p));   // quotients a_0..a_k
    NegContFrac down = ncf_expand(Rational(p, r)); // quotients atilde_0..atilde_l
    const std::size_t k = up.quotients.size() - 1;
    const std::size_t l = down.quotients.size() - 1;

    detail::GraphBuilder b;
    b.g.view = GraphView::extended;
    b.g.depth = 2;
    b.g.tilde_v0_is_gauss = true; // 0 < r/p < 1 always here

    auto set_self = [&b](std::size_t idx, Int v) {
        b.g.vertices[idx].self_intersection = std::move(v);
    };

    std::size_t link = b.add(ComponentTag::make_v(2), Rational(r + s), p);
    b.g.vertices[link].is_link = true;
    set_self(link, -1);

    // Left chain: s*p - 1 vertices of multiplicity p between link and node.
    std::size_t prev = link;
    for (Int j = p * s - 1; j >= 1; --j) {
        Rational lam = Rational(r) + Rational(j, p);
        std::size_t w = b.add(ComponentTag::make_w(1, lam), lam, p);
        set_self(w, -2);
        b.link(prev, w);
        prev = w;
    }
    std::size_t node = b.add(ComponentTag::make_v(1), Rational(r, p), p);
    set_self(node, -2);
    b.link(prev, node);

    // Upper arm: convergents of r/p, multiplicities c_{k-1}, ..., c_0 = 1,
    // self-intersections -a_k, ..., -a_1.
    prev = node;
    for (std::size_t i = k; i >= 1; --i) {
        const Rational& conv = up.convergents[i - 1];
        std::size_t vl = b.add(ComponentTag::make_vl(1, conv), conv, conv.den());
        set_self(vl, -up.quotients[i]);
        b.link(prev, vl);
        prev = vl;
    }

    // Lower arm: reciprocals of the convergents of p/r, multiplicities
    // btilde_{l-1}, ..., btilde_0, then the original component of
    // multiplicity 1 and self-intersection -atilde_0.
    prev = node;
    for (std::size_t i = l; i >= 1; --i) {
        Rational lam = down.convergents[i - 1].reciprocal();
        std::size_t w = b.add(ComponentTag::make_w(0, lam), lam, lam.den());
        set_self(w, -down.quotients[i]);
        b.link(prev, w);
        prev = w;
    }
    std::size_t tilde = b.add(ComponentTag::make_tilde_v0(), Rational(0), 1);
    set_self(tilde, -down.quotients[0]);
    b.link(prev, tilde);

    return std::move(b.g);
}

// --- canonical form --------------------------------------------------------

namespace detail {

struct CanonState {
    const ResolutionGraph& g;
    std::vector<std::vector<std::size_t>> adj;
};

// Canonicalization recurses along the tree; reject anything that is not
// one (parsed input may be arbitrary).
inline void require_tree(const ResolutionGraph& g) {
    if (g.vertices.empty()) throw validation_error("empty graph has no canonical form");
    if (g.edges.size() + 1 != g.vertices.size())
        throw validation_error("graph is not a tree (edge count)");
    auto adj = g.adjacency();
    std::vector<char> seen(g.vertices.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        ++count;
        for (std::size_t u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    if (count != g.vertices.size()) throw validation_error("graph is not connected");
}

// Canonical description of the subtree rooted at `v` entered from
// `parent`: multiplicity, self-intersection, and the sorted child forms.
// Label data only — tags and lambdas do not participate.
inline std::string canon_subtree(const CanonState& st, std::size_t v, std::size_t parent,
                                 std::vector<std::size_t>* order) {
    const Vertex& vx = st.g.vertices[v];
    std::string head = "(" + vx.multiplicity.str() + "," +
                       (vx.self_intersection ? vx.self_intersection->str() : "?");
    struct Child {
        Int mult;
        Int self;
        std::string form;
        std::string tag;
        std::size_t idx;
    };
    std::vector<Child> kids;
    for (std::size_t u : st.adj[v]) {
        if (u == parent) continue;
        Child c;
        c.idx = u;
        c.mult = st.g.vertices[u].multiplicity;
        c.self = st.g.vertices[u].self_intersection.value_or(Int(0));
        c.tag = st.g.vertices[u].tag.to_string();
        c.form = canon_subtree(st, u, v, nullptr);
        kids.push_back(std::move(c));
    }
    std::sort(kids.begin(), kids.end(), [](const Child& a, const Child& b) {
        if (a.mult != b.mult) return a.mult < b.mult;
        if (a.self != b.self) return a.self < b.self;
        if (a.form != b.form) return a.form < b.form;
        return a.tag < b.tag;
    });
    if (order) {
        order->push_back(v);
        for (const Child& c : kids) canon_subtree(st, c.idx, v, order);
    }
    std::string out = head;
    for (const Child& c : kids) out += c.form;
    return out + ")";
}

inline std::size_t canonical_root(const ResolutionGraph& g) {
    if (g.vertices.empty()) throw validation_error("empty graph has no canonical form");
    std::vector<std::size_t> links;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (g.vertices[i].is_link) links.push_back(i);
    if (links.size() == 1) return links.front();
    // No (or several) links: fall back to the lexicographically least
    // rooted form, ties broken by tag for determinism.
    CanonState st{g, g.adjacency()};
    std::size_t best = 0;
    std::string best_form;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        std::string form = canon_subtree(st, i, i, nullptr);
        std::string tag = g.vertices[i].tag.to_string();
        if (i == 0 || form < best_form ||
            (form == best_form && tag < g.vertices[best].tag.to_string())) {
            best = i;
            best_form = std::move(form);
        }
    }
    return best;
}

} // namespace detail

// Canonical string of a graph as a multiplicity/self-intersection-labeled
// tree rooted at the link; equal strings mean isomorphic labeled trees.
inline std::string canonical_string(const ResolutionGraph& g) {
    detail::require_tree(g);
    detail::CanonState st{g, g.adjacency()};
    std::size_t root = detail::canonical_root(g);
    return detail::canon_subtree(st, root, root, nullptr);
}

// Deterministic emission order: preorder of the canonically sorted tree.
inline std::vector<std::size_t> canonical_order(const ResolutionGraph& g) {
    if (g.vertices.empty()) return {};
    detail::require_tree(g);
    detail::CanonState st{g, g.adjacency()};
    std::size_t root = detail::canonical_root(g);
    std::vector<std::size_t> order;
    detail::canon_subtree(st, root, root, &order);
    WILDRES_ASSERT(order.size() == g.vertices.size());
    return order;
}

inline bool graphs_isomorphic(const ResolutionGraph& a, const ResolutionGraph& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    return canonical_string(a) == canonical_string(b);
}

} // namespace wildres
