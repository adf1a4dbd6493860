#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maclane.hpp"

namespace wildres {

// Numeric profile of a valuation whose normal model has a weak wild
// quotient singularity: lambda_i = c_i / p^{e_i} with 0 < e_1 < ... <
// e_{n-1} = e and lambda_n = c_n integral. r and s are the two invariants
// of the singularity type; s is caller-supplied (or derived when n = 2,
// where c_n = r + s exactly).
struct WWParams {
    Int p;
    Int e = 0;              // the group is (Z/p)^e
    std::size_t n = 0;      // number of augmentation steps
    std::vector<Int> c;     // numerators c_1, ..., c_n
    std::vector<Int> eexp;  // exponents e_1, ..., e_{n-1}
    Int r = 0;              // c_1 * p^(e - e_1)
    Int s = 0;
};

struct ClassifyResult {
    std::optional<WWParams> params;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

// Writes n = p^k into k, or returns false if n is not a power of p.
inline bool p_power_exponent(const Int& p, Int n, Int& k) {
    k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1;
}

inline Int int_pow(const Int& base, Int exp) {
    WILDRES_ASSERT(exp >= 0);
    Int out = 1;
    for (Int i = 0; i < exp; ++i) out *= base;
    return out;
}

} // namespace detail

// Decide whether `shape` fits the numeric profile of a weak wild quotient
// singularity for the prime p, assembling WWParams on success and naming
// every failed condition otherwise.
inline ClassifyResult classify_ww(const ValuationShape& shape, const Int& p,
                                  std::optional<Int> s = std::nullopt) {
    if (!is_prime(p)) throw validation_error("p = " + p.str() + " is not prime");
    if (s && *s < 1) throw validation_error("s must be a positive integer");

    ClassifyResult res;
    auto fail = [&res](std::string msg) { res.violations.push_back(std::move(msg)); };

    const std::size_t n = shape.depth();
    if (n < 2) {
        fail("at least two augmentation steps required (n >= 2)");
        return res;
    }

    WWParams w;
    w.p = p;
    w.n = n;
    bool p_powers = true;
    std::vector<Int> allexp; // e_1, ..., e_n (e_n should be 0)
    for (std::size_t i = 1; i <= n; ++i) {
        Int k;
        if (!detail::p_power_exponent(p, shape.lambda(i).den(), k)) {
            fail("denominator not a p-power (lambda_" + std::to_string(i) + " = " +
                 shape.lambda(i).to_string() + ")");
            p_powers = false;
            k = -1;
        }
        allexp.push_back(k);
        w.c.push_back(shape.lambda(i).num());
    }
    if (!p_powers) return res; // exponent-based conditions are meaningless now

    if (allexp[n - 1] != 0)
        fail("lambda_n must be an integer (lambda_" + std::to_string(n) + " = " +
             shape.lambda(n).to_string() + ")");
    w.eexp.assign(allexp.begin(), allexp.end() - 1);

    Int prev = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(allexp[i] > prev))
            fail("exponents must satisfy 0 < e_1 < ... < e_" + std::to_string(n - 1) +
                 " (e_" + std::to_string(i + 1) + " = " + allexp[i].str() + ")");
        prev = allexp[i];
    }
    w.e = allexp[n - 2];

    if (w.c[0] < 1) fail("c_1 must be a positive integer");
    if (!(w.c[0] < detail::int_pow(p, allexp[0])))
        fail("c_1 must be smaller than p^{e_1}");

    if (!res.violations.empty()) return res;

    w.r = w.c[0] * detail::int_pow(p, w.e - allexp[0]);
    const Int& cn = w.c[n - 1];
    if (s) {
        w.s = *s;
        Int bound = w.r + w.s;
        if (cn < bound)
            fail("c_n = " + cn.str() + " is smaller than r + s = " + bound.str());
        else if (n == 2 && cn != bound)
            fail("c_n = " + cn.str() + " must equal r + s = " + bound.str() + " when n = 2");
        else if (n > 2 && cn == bound)
            fail("c_n = r + s is only possible when n = 2");
    } else if (n == 2) {
        w.s = cn - w.r;
        if (w.s < 1)
            fail("derived s = c_n - r = " + w.s.str() + " is not positive");
    } else {
        // s unknown and n > 2: the strict inequality c_n > r + s with s >= 1
        // still forces c_n >= r + 2.
        w.s = 0;
        if (cn < w.r + 2)
            fail("c_n = " + cn.str() + " leaves no room for a positive s (need c_n > r + s)");
    }

    if (res.violations.empty()) res.params = std::move(w);
    return res;
}

// The depth-two shape (r/p, r+s) of a singularity of type (r,s).
inline ValuationShape make_rs_shape(const Int& p, const Int& r, const Int& s) {
    if (!is_prime(p)) throw validation_error("p = " + p.str() + " is not prime");
    if (!(r > 0 && r < p)) throw validation_error("r must satisfy 0 < r < p");
    if (s < 1) throw validation_error("s must be a positive integer");
    return ValuationShape({Rational(r, p), Rational(r + s)});
}

// Existence constraints on the pair (r,s) beyond the shape itself. Returns
// the list of violated constraints (empty = ok); never throws.
inline std::vector<std::string> validate_rs(const Int& p, const Int& r, const Int& s,
                                            BaseField::Char characteristic,
                                            std::optional<Int> e_K = std::nullopt) {
    std::vector<std::string> v;
    if (!is_prime(p)) v.push_back("p = " + p.str() + " is not prime");
    if (!(r > 0 && r < p)) v.push_back("r must satisfy 0 < r < p");
    if (s < 1) v.push_back("s must be a positive integer");
    if (characteristic == BaseField::Char::p) {
        if (is_prime(p) && s % p == 0)
            v.push_back("in residue characteristic p the jump s may not be divisible by p");
    } else if (e_K) {
        if (*e_K < 1) v.push_back("e_K must be a positive integer");
        else if (p > 1 && Rational(s) > Rational(p * *e_K, p - 1))
            v.push_back("s = " + s.str() + " exceeds the bound p*e_K/(p-1) = " +
                        Rational(p * *e_K, p - 1).to_string());
    }
    return v;
}

} // namespace wildres
