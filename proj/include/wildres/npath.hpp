#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "contfrac.hpp"
#include "rational.hpp"

namespace wildres {

// An N-path is a finite strictly decreasing sequence of nonnegative
// rationals q_0 > q_1 > ... > q_k (always kept in lowest terms) whose
// consecutive differences obey the step law
//
//     q_i - q_{i+1} = N / (lcm(N, den q_i) * lcm(N, den q_{i+1})).
//
// It is *shortest* when no proper subsequence with the same endpoints is
// itself an N-path. For every pair a > a' >= 0 there is exactly one
// shortest N-path from a to a'.
struct NPath {
    Int N = 1;
    std::vector<Rational> entries;

    // Degenerate single-entry path returned for a request with a == a'.
    bool trivial() const { return entries.size() < 2; }
};

// Right-hand side of the step law for adjacent entries u, w.
inline Rational npath_step(const Int& N, const Rational& u, const Rational& w) {
    return Rational(N, lcm(N, u.den()) * lcm(N, w.den()));
}

namespace detail {

inline void check_npath_input(const Int& N, const std::vector<Rational>& entries) {
    if (N < 1) throw validation_error("N must be a positive integer");
    if (entries.size() < 2) throw validation_error("an N-path needs at least two entries");
    if (entries.back() < Rational(0)) throw validation_error("N-path entries must be nonnegative");
    for (std::size_t i = 0; i + 1 < entries.size(); ++i)
        if (!(entries[i] > entries[i + 1]))
            throw validation_error("N-path entries must be strictly decreasing");
}

} // namespace detail

inline bool is_npath(const Int& N, const std::vector<Rational>& entries) {
    detail::check_npath_input(N, entries);
    for (std::size_t i = 0; i + 1 < entries.size(); ++i)
        if (entries[i] - entries[i + 1] != npath_step(N, entries[i], entries[i + 1]))
            return false;
    return true;
}

// An interior entry can be dropped exactly when the merged gap still obeys
// the step law; removing one entry leaves every other gap untouched, so
// single removals decide shortestness.
inline bool is_shortest_npath(const Int& N, const std::vector<Rational>& entries) {
    if (!is_npath(N, entries)) throw validation_error("sequence is not an N-path");
    for (std::size_t i = 1; i + 1 < entries.size(); ++i)
        if (entries[i - 1] - entries[i + 1] == npath_step(N, entries[i - 1], entries[i + 1]))
            return false;
    return true;
}

namespace detail {

// Shortest 1-path from ceil(a) down to a: exactly the convergents of the
// negative continued fraction of a.
inline std::vector<Rational> convergent_path(const Rational& a) { return ncf_expand(a).convergents; }

// Shortest 1-path from t down to 0 for 0 < t < 1: reciprocals of the
// convergents of 1/t in reverse order, with 0 appended.
inline std::vector<Rational> frac_to_zero_path(const Rational& t) {
    std::vector<Rational> conv = convergent_path(t.reciprocal());
    std::vector<Rational> out;
    out.reserve(conv.size() + 1);
    for (auto it = conv.rbegin(); it != conv.rend(); ++it) out.push_back(it->reciprocal());
    out.push_back(Rational(0));
    return out;
}

// Shortest 1-path from a down to ap (a > ap >= 0). If an integer lies in
// [ap, a] the path is the concatenation of the piece from a to floor(a),
// the run of integers, and the convergents of ap. Otherwise both endpoints
// share an integer part m; translate into (0,1), pass to reciprocals
// (which reverses direction and strictly shrinks the smaller denominator)
// and recurse.
inline std::vector<Rational> shortest_1path(const Rational& a, const Rational& ap) {
    if (a == ap) return {a};
    Int fa = a.floor();
    Int cap = ap.ceil();
    if (fa >= cap) {
        std::vector<Rational> out;
        if (a.is_integer()) {
            out.push_back(a);
        } else {
            for (const Rational& q : frac_to_zero_path(a - Rational(fa)))
                out.push_back(q + Rational(fa));
        }
        for (Int k = fa - 1; k >= cap; --k) out.push_back(Rational(k));
        if (!ap.is_integer()) {
            std::vector<Rational> tail = convergent_path(ap);
            WILDRES_ASSERT(tail.front() == out.back());
            out.insert(out.end(), tail.begin() + 1, tail.end());
        }
        return out;
    }
    Int m = fa; // fa == floor(ap); both endpoints lie strictly inside (m, m+1)
    Rational t = a - Rational(m);
    Rational tp = ap - Rational(m);
    std::vector<Rational> sub = shortest_1path(tp.reciprocal(), t.reciprocal());
    std::vector<Rational> out;
    out.reserve(sub.size());
    for (auto it = sub.rbegin(); it != sub.rend(); ++it)
        out.push_back(it->reciprocal() + Rational(m));
    return out;
}

} // namespace detail

// Reciprocal-and-reverse of a 1-path with positive entries; sends a 1-path
// from a to a' to a 1-path from 1/a' to 1/a and is an involution.
inline NPath invert_reverse(const NPath& p) {
    if (p.N != 1) throw validation_error("invert_reverse is defined for 1-paths only");
    for (const Rational& q : p.entries)
        if (!(q > Rational(0))) throw validation_error("invert_reverse needs positive entries");
    if (!p.trivial() && !is_npath(p.N, p.entries))
        throw validation_error("sequence is not a 1-path");
    NPath out;
    out.N = 1;
    out.entries.reserve(p.entries.size());
    for (auto it = p.entries.rbegin(); it != p.entries.rend(); ++it)
        out.entries.push_back(it->reciprocal());
    if (!out.trivial()) WILDRES_ASSERT(is_npath(out.N, out.entries));
    return out;
}

// Divides a 1-path through by N, yielding an N-path.
inline NPath rescale_path(const NPath& p, const Int& N) {
    if (N < 1) throw validation_error("N must be a positive integer");
    if (p.N != 1) throw validation_error("rescale_path expects a 1-path");
    if (!p.trivial() && !is_npath(p.N, p.entries))
        throw validation_error("sequence is not a 1-path");
    NPath out;
    out.N = N;
    out.entries.reserve(p.entries.size());
    for (const Rational& q : p.entries) out.entries.push_back(q / Rational(N));
    if (!out.trivial()) WILDRES_ASSERT(is_npath(out.N, out.entries));
    return out;
}

// The unique shortest N-path from a down to a'. Computed by rescaling the
// problem to N = 1, solving that by the convergent/concatenation recursion,
// and dividing back through by N. Both defining properties of the result
// are asserted before it is returned.
inline NPath shortest_npath(const Int& N, const Rational& a, const Rational& a_prime) {
    if (N < 1) throw validation_error("N must be a positive integer");
    if (a_prime < Rational(0) || a < a_prime)
        throw validation_error("shortest_npath needs a >= a' >= 0");
    NPath out;
    out.N = N;
    if (a == a_prime) {
        out.entries = {a};
        return out;
    }
    std::vector<Rational> ones =
        detail::shortest_1path(a * Rational(N), a_prime * Rational(N));
    out.entries.reserve(ones.size());
    for (const Rational& q : ones) out.entries.push_back(q / Rational(N));
    WILDRES_ASSERT(out.entries.front() == a && out.entries.back() == a_prime);
    WILDRES_ASSERT(is_shortest_npath(N, out.entries));
    return out;
}

// Independent oracle: breadth-first search over the full step-law graph on
// the rationals in [a', a] with denominator at most den_bound. Finds the
// minimum-hop path from a to a', checks it is the only one of its length,
// and then verifies definition-faithfully (reachability over step-law
// pairs of its entries) that no proper endpoint-preserving subsequence is
// an N-path. If the search exhausts the graph without reaching a', the
// bound was too small: every N-path contains the shortest one as a
// subsequence, so an out-of-bound entry in the true answer starves the
// whole graph of paths.
inline NPath brute_force_shortest_npath(const Int& N, const Rational& a,
                                        const Rational& a_prime, const Int& den_bound) {
    if (N < 1) throw validation_error("N must be a positive integer");
    if (a_prime < Rational(0) || a < a_prime)
        throw validation_error("brute_force_shortest_npath needs a >= a' >= 0");
    if (den_bound < 1) throw validation_error("den_bound must be positive");
    NPath out;
    out.N = N;
    if (a == a_prime) {
        out.entries = {a};
        return out;
    }
    if (a.den() > den_bound || a_prime.den() > den_bound)
        throw validation_error("den_bound exhausted: endpoint denominator exceeds bound");

    // Distinct values of lcm(N, d) over admissible denominators d.
    std::set<Int> lcm_values;
    for (Int d = 1; d <= den_bound; ++d) lcm_values.insert(lcm(N, d));

    struct NodeInfo {
        long long dist = -1;
        int ways = 0; // saturates at 2
        Rational parent;
    };
    std::map<Rational, NodeInfo> info;
    info[a] = {0, 1, Rational(0)};
    std::vector<Rational> frontier = {a};
    bool reached = false;
    long long reached_dist = -1;
    while (!frontier.empty() && !reached) {
        std::vector<Rational> next;
        for (const Rational& u : frontier) {
            const NodeInfo u_info = info[u]; // copy: map mutates below
            Int lu = lcm(N, u.den());
            for (const Int& lw : lcm_values) {
                Rational w = u - Rational(N, lu * lw);
                if (w < a_prime) continue;
                if (w.den() > den_bound || lcm(N, w.den()) != lw) continue;
                auto it = info.find(w);
                if (it == info.end()) {
                    info[w] = {u_info.dist + 1, u_info.ways, u};
                    next.push_back(w);
                } else if (it->second.dist == u_info.dist + 1) {
                    it->second.ways = std::min(2, it->second.ways + u_info.ways);
                }
                if (w == a_prime) {
                    reached = true;
                    reached_dist = u_info.dist + 1;
                }
            }
        }
        // Finish the whole frontier before stopping so path counts at the
        // final layer are complete.
        frontier = std::move(next);
    }
    auto target = info.find(a_prime);
    if (target == info.end())
        throw validation_error("den_bound exhausted: no N-path within denominator bound");
    WILDRES_ASSERT(target->second.dist == reached_dist);
    if (target->second.ways != 1)
        throw internal_error("minimum-hop N-path is not unique; theory violated");

    std::vector<Rational> rev;
    for (Rational cur = a_prime;; cur = info[cur].parent) {
        rev.push_back(cur);
        if (cur == a) break;
    }
    out.entries.assign(rev.rbegin(), rev.rend());

    // Definition-faithful shortestness check: dynamic program over step-law
    // pairs of the found entries; any 0 -> last route shorter than the full
    // chain would be a proper subsequence satisfying the step law.
    const std::size_t n = out.entries.size();
    std::vector<long long> dp(n, -1);
    dp[0] = 0;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (dp[i] < 0) continue;
            if (out.entries[i] - out.entries[j] !=
                npath_step(N, out.entries[i], out.entries[j]))
                continue;
            if (dp[j] < 0 || dp[i] + 1 < dp[j]) dp[j] = dp[i] + 1;
        }
    if (dp[n - 1] != static_cast<long long>(n - 1))
        throw internal_error("minimum-hop N-path admits a proper sub-N-path; theory violated");
    return out;
}

} // namespace wildres
