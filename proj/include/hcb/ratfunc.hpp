// Univariate rational functions over a field, kept in lowest terms with a
// monic denominator.  Usable as a coefficient field itself.
#pragma once

#include "hcb/upoly.hpp"

#include <string>

namespace hcb {

template <class F>
class RatFunc {
public:
    RatFunc() : num_(), den_(F(1)) {}
    RatFunc(int c) : num_(c), den_(F(1)) {}
    RatFunc(const F& c) : num_(c), den_(F(1)) {}
    RatFunc(const UPoly<F>& p) : num_(p), den_(F(1)) {}
    RatFunc(UPoly<F> n, UPoly<F> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFunc var() { return RatFunc(UPoly<F>::x()); }

    const UPoly<F>& num() const { return num_; }
    const UPoly<F>& den() const { return den_; }
    bool isZeroFn() const { return num_.isZeroPoly(); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc operator-() const { RatFunc r = *this; r.num_ = -r.num_; return r; }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.isZeroFn() || b.isZeroFn()) return RatFunc();
        // Cross-cancel first to keep sizes down.
        UPoly<F> g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        RatFunc r;
        r.num_ = divmod(a.num_, g1).first * divmod(b.num_, g2).first;
        r.den_ = divmod(a.den_, g2).first * divmod(b.den_, g1).first;
        r.fixSign();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.isZeroFn()) throw std::domain_error("rational function division by zero");
        return a * RatFunc(b.den_, b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    F eval(const F& t) const {
        F d = den_(t);
        if (isZero(d)) throw std::domain_error("rational function pole");
        return num_(t) / d;
    }
    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }
    // f(g(t)) for a rational function g.
    RatFunc compose(const RatFunc& g) const {
        auto horner = [&](const UPoly<F>& p) {
            RatFunc r;
            for (int i = p.degree(); i >= 0; --i) r = r * g + RatFunc(p.coeff(i));
            return r;
        };
        return horner(num_) / horner(den_);
    }

    std::string toString(const std::string& var = "n") const {
        if (den_.degree() == 0) return num_.toString(var);
        return "(" + num_.toString(var) + ")/(" + den_.toString(var) + ")";
    }

private:
    void fixSign() {
        if (den_.isZeroPoly()) throw std::domain_error("zero denominator");
        F l = den_.lc();
        if (!(l == F(1))) {
            F inv = F(1) / l;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    void normalize() {
        if (den_.isZeroPoly()) throw std::domain_error("zero denominator");
        if (num_.isZeroPoly()) {
            den_ = UPoly<F>(F(1));
            return;
        }
        UPoly<F> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        fixSign();
    }
    UPoly<F> num_, den_;
};

template <class F>
bool isZero(const RatFunc<F>& r) { return r.isZeroFn(); }
template <class F>
std::string toText(const RatFunc<F>& r) { return r.toString("n"); }

using QRat = RatFunc<Q>;

}  // namespace hcb
