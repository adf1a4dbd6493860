#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "error.hpp"

namespace wildres {

// Exact arbitrary-precision integer. Convergent denominators and chain
// multiplicities outgrow 64 bits quickly, so everything is built on this.
using Int = boost::multiprecision::cpp_int;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Floor division with the sign convention of mathematics, not of C++.
inline Int floor_div(const Int& a, const Int& b) {
    WILDRES_ASSERT(b != 0);
    Int q = a / b;
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}            // NOLINT: implicit by design
    Rational(Int n) : num_(std::move(n)), den_(1) {} // NOLINT: implicit by design

    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    // Constructs from a numerator/denominator pair that is already in lowest
    // terms with a positive denominator. Used where reducedness is a proven
    // property (e.g. continued-fraction convergents), so it is asserted, not
    // repaired.
    static Rational from_reduced(Int n, Int d) {
        WILDRES_ASSERT(d > 0 && gcd(n, d) == 1);
        Rational q;
        q.num_ = std::move(n);
        q.den_ = std::move(d);
        return q;
    }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Int floor() const { return floor_div(num_, den_); }
    Int ceil() const { return ceil_div(num_, den_); }

    Rational reciprocal() const {
        if (num_ == 0) throw validation_error("reciprocal of zero");
        Rational q;
        if (num_ > 0) {
            q.num_ = den_;
            q.den_ = num_;
        } else {
            q.num_ = -den_;
            q.den_ = -num_;
        }
        return q;
    }

    friend Rational operator-(const Rational& a) {
        Rational q;
        q.num_ = -a.num_;
        q.den_ = a.den_;
        return q;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw validation_error("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // "num/den", with "/den" omitted for integers.
    std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

private:
    void reduce() {
        if (den_ == 0) throw validation_error("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd(num_ < 0 ? Int(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;
};

inline Rational abs(const Rational& q) { return q < Rational(0) ? -q : q; }

inline std::string to_string(const Rational& q) { return q.to_string(); }

} // namespace wildres
