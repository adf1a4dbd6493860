#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational.hpp"

namespace wildres {

// Deterministic trial-division primality test; inputs here are desk-scale.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Exponent of p in a nonzero integer.
inline Int padic_val_int(const Int& p, Int n) {
    WILDRES_ASSERT(n != 0 && p >= 2);
    Int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// A rational value extended by +infinity (the valuation of 0).
class ExtRat {
public:
    ExtRat() : inf_(false) {}
    ExtRat(Rational v) : inf_(false), v_(std::move(v)) {} // NOLINT: implicit by design
    static ExtRat infinity() {
        ExtRat e;
        e.inf_ = true;
        return e;
    }

    bool is_infinity() const { return inf_; }
    const Rational& value() const {
        if (inf_) throw validation_error("infinite valuation has no rational value");
        return v_;
    }

    friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtRat(a.v_ + b.v_);
    }
    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
    friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

    std::string to_string() const { return inf_ ? "infinity" : v_.to_string(); }

private:
    bool inf_;
    Rational v_;
};

// p-adic valuation of a rational, v_p(a/b) = v_p(a) - v_p(b); v_p(0) = +inf.
inline ExtRat padic_val(const Int& p, const Rational& q) {
    if (q.is_zero()) return ExtRat::infinity();
    return ExtRat(Rational(padic_val_int(p, q.num()) - padic_val_int(p, q.den())));
}

inline bool is_p_integral(const Int& p, const Rational& q) {
    return q.is_zero() || q.den() % p != 0;
}

// The base field: Q equipped with the p-adic valuation stands in for any
// complete discretely valued field with residue characteristic p. The
// characteristic and the absolute ramification index only matter to the
// (r,s) validators.
struct BaseField {
    enum class Char { zero, p };

    Int p;
    Char characteristic = Char::zero;
    std::optional<Int> e_K; // absolute ramification index, characteristic zero only

    explicit BaseField(Int p_, Char ch = Char::zero, std::optional<Int> e = std::nullopt)
        : p(std::move(p_)), characteristic(ch), e_K(std::move(e)) {
        if (!is_prime(p)) throw validation_error("p = " + p.str() + " is not prime");
        if (e_K && *e_K < 1) throw validation_error("e_K must be a positive integer");
        if (e_K && characteristic != Char::zero)
            throw validation_error("e_K is meaningful only in characteristic zero");
    }
};

// One augmentation step: the key polynomial g_i is declared to have value
// lambda_i.
struct ValuationStep {
    Polynomial key;
    Rational lambda;
};

namespace detail {

// Value of f under the valuation given by the first `depth` steps. Depth 0
// is the Gauss valuation (coefficient-wise minimum of p-adic valuations);
// at depth j the key-adic expansion f = sum a_i * key_j^i gives
// min_i (v_{j-1}(a_i) + i * lambda_j).
inline ExtRat eval_steps(const Int& p, const std::vector<ValuationStep>& steps,
                         std::size_t depth, const Polynomial& f) {
    if (f.is_zero()) return ExtRat::infinity();
    if (depth == 0) {
        ExtRat best = ExtRat::infinity();
        for (const Rational& c : f.coeffs()) {
            ExtRat v = padic_val(p, c);
            if (v < best) best = v;
        }
        return best;
    }
    const ValuationStep& step = steps[depth - 1];
    std::vector<Polynomial> expansion = phi_expansion(f, step.key);
    ExtRat best = ExtRat::infinity();
    Rational i_lambda(0);
    for (const Polynomial& a : expansion) {
        if (!a.is_zero()) {
            ExtRat v = eval_steps(p, steps, depth - 1, a) + ExtRat(i_lambda);
            if (v < best) best = v;
        }
        i_lambda += step.lambda;
    }
    return best;
}

} // namespace detail

// An inductive valuation [v_0, v_1(g_1) = lambda_1, ..., v_n(g_n) = lambda_n]
// dominating the Gauss valuation. Hard invariants (validated): monic
// p-integral keys of strictly increasing degree, the first key linear,
// lambda_1 >= 0, every augmentation proper, and v(g_i) = lambda_i.
// Key *certification* (the two recognized key-polynomial forms) is
// advisory: valuations built from uncertified keys carry verified() ==
// false but are otherwise fully usable.
class MacLaneValuation {
public:
    MacLaneValuation(BaseField field, std::vector<ValuationStep> steps)
        : field_(std::move(field)), steps_(std::move(steps)) {
        validate();
    }

    const BaseField& field() const { return field_; }
    const std::vector<ValuationStep>& steps() const { return steps_; }
    std::size_t depth() const { return steps_.size(); }
    bool verified() const { return verified_; }

    MacLaneValuation truncate(std::size_t j) const {
        WILDRES_ASSERT(j <= steps_.size());
        return MacLaneValuation(field_,
                                std::vector<ValuationStep>(steps_.begin(), steps_.begin() + j));
    }

    std::string to_string() const {
        std::string s = "[v0";
        for (std::size_t i = 0; i < steps_.size(); ++i)
            s += ", v" + std::to_string(i + 1) + "(" + steps_[i].key.to_string() +
                 ")=" + steps_[i].lambda.to_string();
        return s + "]";
    }

private:
    void validate();

    BaseField field_;
    std::vector<ValuationStep> steps_;
    bool verified_ = true;
};

inline ExtRat evaluate(const MacLaneValuation& v, const Polynomial& f) {
    return detail::eval_steps(v.field().p, v.steps(), v.depth(), f);
}

// Certifier for the two recognized key-polynomial forms over v:
//   (a) v = v_0 and phi is monic linear (with p-integral constant term);
//   (b) v = [v_0, v_1(x) = r/p^e] with 0 < r < p^e, p not dividing r, and
//       phi monic of degree p^e whose value and constant-term valuation
//       both equal r.
// Anything else returns false ("not certified"), never throws.
inline bool is_simple_key(const MacLaneValuation& v, const Polynomial& phi) {
    const Int& p = v.field().p;
    if (!phi.is_monic()) return false;
    for (const Rational& c : phi.coeffs())
        if (!is_p_integral(p, c)) return false;

    if (v.depth() == 0) return phi.degree() == 1;

    if (v.depth() == 1) {
        const ValuationStep& s1 = v.steps()[0];
        if (s1.key != Polynomial::monomial(1)) return false;
        const Rational& lam = s1.lambda;
        if (!(lam > Rational(0) && lam < Rational(1))) return false;
        Int pe = lam.den(); // must be a p-power: p^e with e >= 1
        Int q = pe;
        while (q % p == 0) q /= p;
        if (q != 1) return false;
        const Int& r = lam.num();
        if (Int(phi.degree()) != pe) return false;
        ExtRat vphi = evaluate(v, phi);
        ExtRat vconst = padic_val(p, phi.coeff(0));
        return vphi == ExtRat(Rational(r)) && vconst == ExtRat(Rational(r));
    }
    return false;
}

inline void MacLaneValuation::validate() {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        const std::string where = "step " + std::to_string(i + 1);
        const Polynomial& key = steps_[i].key;
        if (!key.is_monic()) throw validation_error(where + ": key is not monic");
        for (const Rational& c : key.coeffs())
            if (!is_p_integral(field_.p, c))
                throw validation_error(where + ": key has a non-p-integral coefficient");
        if (i == 0) {
            if (key.degree() != 1) throw validation_error("step 1 key must be linear");
            if (steps_[0].lambda < Rational(0))
                throw validation_error("lambda_1 must be nonnegative");
        } else {
            if (key.degree() <= steps_[i - 1].key.degree())
                throw validation_error(where + ": key degrees must strictly increase");
            ExtRat prev = detail::eval_steps(field_.p, steps_, i, key);
            if (!(ExtRat(steps_[i].lambda) > prev))
                throw validation_error(where + ": augmentation is not proper (lambda_" +
                                       std::to_string(i + 1) + " <= v_" + std::to_string(i) +
                                       "(key))");
        }
    }
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        ExtRat full = detail::eval_steps(field_.p, steps_, steps_.size(), steps_[i].key);
        if (full != ExtRat(steps_[i].lambda))
            throw validation_error("step " + std::to_string(i + 1) +
                                   ": v(key) deviates from its declared lambda");
    }
    for (std::size_t i = 0; i < steps_.size() && verified_; ++i)
        verified_ = is_simple_key(truncate(i), steps_[i].key);
}

inline MacLaneValuation augment(const MacLaneValuation& v, Polynomial key, Rational lambda) {
    std::vector<ValuationStep> steps = v.steps();
    steps.push_back(ValuationStep{std::move(key), std::move(lambda)});
    return MacLaneValuation(v.field(), std::move(steps));
}

// The denominator/lcm skeleton of a valuation: all graph computations read
// only the lambda list. N(i) = lcm of the first i reduced denominators,
// with N(0) = N(-1) = 1.
class ValuationShape {
public:
    explicit ValuationShape(std::vector<Rational> lambdas) : lambdas_(std::move(lambdas)) {
        if (lambdas_.empty()) throw validation_error("shape needs at least one lambda");
        if (lambdas_.front() < Rational(0))
            throw validation_error("lambda_1 must be nonnegative");
        Int running = 1;
        for (std::size_t i = 0; i < lambdas_.size(); ++i) {
            if (i + 1 < lambdas_.size() && (lambdas_[i] * Rational(running)).is_integer())
                throw validation_error("lambda_" + std::to_string(i + 1) + " lies in (1/N_" +
                                       std::to_string(i) + ")Z; key degrees would not increase");
            running = lcm(running, lambdas_[i].den());
            N_.push_back(running);
        }
        for (std::size_t i = 1; i < lambdas_.size(); ++i) {
            Rational ratio = Rational(N(static_cast<long>(i))) / Rational(N(static_cast<long>(i) - 1));
            if (!(lambdas_[i] > lambdas_[i - 1] * ratio))
                throw validation_error("lambda_" + std::to_string(i + 1) +
                                       " <= (N_" + std::to_string(i) + "/N_" + std::to_string(i - 1) +
                                       ")*lambda_" + std::to_string(i) + "; augmentation not proper");
        }
    }

    std::size_t depth() const { return lambdas_.size(); }
    const std::vector<Rational>& lambdas() const { return lambdas_; }
    // 1-based access matching the subscripts lambda_1, ..., lambda_n.
    const Rational& lambda(std::size_t i) const {
        WILDRES_ASSERT(i >= 1 && i <= lambdas_.size());
        return lambdas_[i - 1];
    }
    // N_i for -1 <= i <= n; N_{-1} = N_0 = 1.
    Int N(long i) const {
        WILDRES_ASSERT(i >= -1 && i <= static_cast<long>(lambdas_.size()));
        if (i <= 0) return 1;
        return N_[static_cast<std::size_t>(i - 1)];
    }

    friend bool operator==(const ValuationShape& a, const ValuationShape& b) {
        return a.lambdas_ == b.lambdas_;
    }

private:
    std::vector<Rational> lambdas_;
    std::vector<Int> N_; // N_[i] = N_{i+1}
};

// lcm of the reduced lambda denominators: the multiplicity of the
// component corresponding to the shape's valuation.
inline Int multiplicity(const ValuationShape& shape) {
    return shape.N(static_cast<long>(shape.depth()));
}

inline ValuationShape shape_of(const MacLaneValuation& v) {
    if (v.depth() == 0)
        throw validation_error("the Gauss valuation has no shape (no augmentation steps)");
    std::vector<Rational> lambdas;
    lambdas.reserve(v.depth());
    for (const ValuationStep& s : v.steps()) lambdas.push_back(s.lambda);
    return ValuationShape(std::move(lambdas));
}

} // namespace wildres
