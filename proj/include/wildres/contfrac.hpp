#pragma once

#include <vector>

#include "rational.hpp"

namespace wildres {

// Negative (minus-sign) continued fraction
//
//     y = a_0 - 1/(a_1 - 1/(a_2 - ... - 1/a_k))
//
// with a_i >= 2 for i >= 1. Every rational has exactly one such finite
// expansion, found by repeatedly taking ceilings.
struct NegContFrac {
    Rational target;
    std::vector<Int> quotients;        // a_0, ..., a_k
    std::vector<Rational> convergents; // value of the depth-i truncation
};

// Convergents b_i/c_i of a quotient sequence, via
//   b_0 = a_0, c_0 = 1, b_1 = a_0 a_1 - 1, c_1 = a_1,
//   b_{i+1} = a_{i+1} b_i - b_{i-1}, c_{i+1} = a_{i+1} c_i - c_{i-1}.
// The identity b_i c_{i+1} - b_{i+1} c_i = 1 makes every convergent
// automatically reduced; that is asserted rather than repaired, as is the
// strict growth of the denominators c_i.
inline std::vector<Rational> convergents(const std::vector<Int>& quotients) {
    if (quotients.empty()) throw validation_error("empty quotient sequence");
    for (std::size_t i = 1; i < quotients.size(); ++i)
        if (quotients[i] <= 1)
            throw validation_error("invalid quotient a_" + std::to_string(i) + " = " +
                                   quotients[i].str() + " (must be >= 2)");

    std::vector<Rational> out;
    out.reserve(quotients.size());
    Int b_prev = 1, c_prev = 0; // virtual index -1 convergent 1/0
    Int b = quotients[0], c = 1;
    out.push_back(Rational::from_reduced(b, c));
    for (std::size_t i = 1; i < quotients.size(); ++i) {
        Int b_next = quotients[i] * b - b_prev;
        Int c_next = quotients[i] * c - c_prev;
        WILDRES_ASSERT(b * c_next - b_next * c == 1);
        WILDRES_ASSERT(c_next > c);
        b_prev = b;
        c_prev = c;
        b = b_next;
        c = c_next;
        out.push_back(Rational::from_reduced(b, c));
    }
    return out;
}

// Expansion of y: a_0 = ceil(y), then recurse on 1/(a_0 - y). The tail's
// denominators strictly decrease, so this terminates.
inline NegContFrac ncf_expand(const Rational& y) {
    NegContFrac f;
    f.target = y;
    Rational cur = y;
    for (;;) {
        Int a = cur.ceil();
        f.quotients.push_back(a);
        if (cur.is_integer()) break;
        cur = (Rational(a) - cur).reciprocal();
    }
    f.convergents = convergents(f.quotients);
    WILDRES_ASSERT(f.convergents.back() == y);
    return f;
}

} // namespace wildres
