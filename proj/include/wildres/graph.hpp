#pragma once

#include <string>
#include <vector>

#include "resolution.hpp"

namespace wildres {

// Matrix of pairwise intersection numbers over an ordered component basis:
// self-intersections on the diagonal, 1 for crossing components, else 0.
struct IntersectionMatrix {
    std::size_t dim = 0;
    std::vector<std::vector<Int>> entries;
    std::vector<std::string> basis; // component tags, row/column order
};

enum class MatrixScope { full, exceptional };

inline IntersectionMatrix intersection_matrix(const ResolutionGraph& g, MatrixScope scope) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (scope == MatrixScope::exceptional && g.vertices[i].is_link) continue;
        if (!g.vertices[i].self_intersection)
            throw validation_error("vertex " + g.vertices[i].tag.to_string() +
                                   " has no self-intersection");
        keep.push_back(i);
    }
    std::vector<std::size_t> remap(g.vertices.size(), static_cast<std::size_t>(-1));
    IntersectionMatrix m;
    m.dim = keep.size();
    m.entries.assign(m.dim, std::vector<Int>(m.dim, 0));
    for (std::size_t row = 0; row < keep.size(); ++row) {
        remap[keep[row]] = row;
        m.basis.push_back(g.vertices[keep[row]].tag.to_string());
        m.entries[row][row] = *g.vertices[keep[row]].self_intersection;
    }
    for (const auto& [a, b] : g.edges) {
        std::size_t ra = remap[a], rb = remap[b];
        if (ra == static_cast<std::size_t>(-1) || rb == static_cast<std::size_t>(-1)) continue;
        m.entries[ra][rb] = 1;
        m.entries[rb][ra] = 1;
    }
    return m;
}

// Sylvester's criterion with exact integers: M is negative definite iff
// the leading principal minors D_k satisfy (-1)^k D_k > 0. The minors are
// produced by fraction-free (Bareiss) elimination; a zero pivot means some
// D_k = 0, which already refutes definiteness.
inline bool is_negative_definite(const IntersectionMatrix& m) {
    const std::size_t n = m.dim;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m.entries[i][j] != m.entries[j][i])
                throw validation_error("intersection matrix is not symmetric");
    std::vector<std::vector<Int>> a = m.entries;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        // a[k][k] now equals the leading principal minor D_{k+1}.
        const Int& minor = a[k][k];
        bool want_positive = k % 2 == 1; // (-1)^{k+1} D_{k+1} > 0
        if (minor == 0) return false;
        if (want_positive ? minor < 0 : minor > 0) return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                WILDRES_ASSERT(num % prev == 0);
                a[i][j] = num / prev;
            }
        prev = minor;
    }
    return true;
}

inline bool is_tree(const ResolutionGraph& g) {
    if (g.vertices.empty()) return false;
    if (g.edges.size() + 1 != g.vertices.size()) return false;
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
    return count == g.vertices.size();
}

// Result of checking m_i * E_i^2 + sum of neighbor multiplicities = 0 at
// every vertex. Meaningful when the graph carries the full fiber.
struct FiberCheck {
    bool ok = true;
    std::vector<std::string> failing; // tags of vertices violating the relation
    std::string note;
};

struct GraphChecks {
    bool tree = false;
    bool negative_definite = false;
    bool fiber_relation = false;
    bool all() const { return tree && negative_definite && fiber_relation; }
};

inline FiberCheck fiber_relation_check(const ResolutionGraph& g) {
    FiberCheck res;
    auto adj = g.adjacency();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const Vertex& v = g.vertices[i];
        if (!v.self_intersection) {
            res.ok = false;
            res.failing.push_back(v.tag.to_string());
            continue;
        }
        Int sum = v.multiplicity * *v.self_intersection;
        for (std::size_t j : adj[i]) sum += g.vertices[j].multiplicity;
        if (sum != 0) {
            res.ok = false;
            res.failing.push_back(v.tag.to_string());
        }
    }
    if (g.vertices.size() == 1 && g.edges.empty())
        res.note = "single-component fiber: the relation is vacuous";
    return res;
}

// The three structural checks reported alongside emitted graphs. All are
// computed on the graph as given: tree and fiber_relation over its vertex
// set, negative definiteness over its non-link (exceptional) part. The
// fiber relation is the expected invariant only when the vertex set is a
// full fiber (the full view, or the extended view of a regular-center
// model).
inline GraphChecks run_graph_checks(const ResolutionGraph& g) {
    GraphChecks c;
    c.tree = is_tree(g);
    try {
        c.negative_definite =
            is_negative_definite(intersection_matrix(g, MatrixScope::exceptional));
    } catch (const validation_error&) {
        c.negative_definite = false; // missing self-intersections: nothing to certify
    }
    c.fiber_relation = fiber_relation_check(g).ok;
    return c;
}

} // namespace wildres
