#pragma once

#include <string>
#include <vector>

#include "rational.hpp"

namespace wildres {

// Univariate polynomial over Q, dense coefficients, lowest degree first.
// The zero polynomial is the empty coefficient list; otherwise the leading
// coefficient is nonzero.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    // x^d with unit coefficient
    static Polynomial monomial(std::size_t d, const Rational& c = Rational(1)) {
        std::vector<Rational> v(d + 1, Rational(0));
        v[d] = c;
        return Polynomial(std::move(v));
    }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    Rational coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }
    const Rational& leading() const {
        WILDRES_ASSERT(!coeffs_.empty());
        return coeffs_.back();
    }
    bool is_monic() const { return !coeffs_.empty() && leading() == Rational(1); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }

    // Euclidean division by a monic divisor: *this = q * d + r, deg r < deg d.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (!d.is_monic()) throw validation_error("division requires a monic divisor");
        std::vector<Rational> rem = coeffs_;
        const long dd = d.degree();
        const long qd = degree() - dd;
        if (qd < 0) return {Polynomial(), *this};
        std::vector<Rational> quot(static_cast<std::size_t>(qd) + 1, Rational(0));
        for (long k = qd; k >= 0; --k) {
            Rational lead = rem[static_cast<std::size_t>(k + dd)];
            if (lead.is_zero()) continue;
            quot[static_cast<std::size_t>(k)] = lead;
            for (long j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(k + j)] -= lead * d.coeff(static_cast<std::size_t>(j));
        }
        rem.resize(static_cast<std::size_t>(dd));
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    // Human-readable form, highest degree first, e.g. "x^2 + 2" or "-x + 1/2".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (long i = degree(); i >= 0; --i) {
            Rational c = coeff(static_cast<std::size_t>(i));
            if (c.is_zero()) continue;
            bool neg = c < Rational(0);
            if (s.empty()) {
                if (neg) s += "-";
            } else {
                s += neg ? " - " : " + ";
            }
            Rational a = neg ? -c : c;
            if (i == 0) {
                s += a.to_string();
            } else {
                if (a != Rational(1)) s += a.to_string();
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

// Base-phi expansion: f = sum a_i * phi^i with deg a_i < deg phi, by
// repeated division. Returns [a_0, a_1, ...]; the zero polynomial expands
// to an empty list.
inline std::vector<Polynomial> phi_expansion(const Polynomial& f, const Polynomial& phi) {
    if (!phi.is_monic()) throw validation_error("phi_expansion requires a monic phi");
    if (phi.degree() < 1) throw validation_error("phi_expansion requires deg(phi) >= 1");
    std::vector<Polynomial> out;
    Polynomial cur = f;
    while (!cur.is_zero()) {
        auto [q, r] = cur.divmod(phi);
        out.push_back(r);
        cur = q;
    }
    return out;
}

} // namespace wildres
