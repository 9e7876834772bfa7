// Dense univariate polynomials over an exact coefficient type.
//
// F must be constructible from int, comparable with ==, and provide the
// free functions isZero(F) and toText(F).  operator/ on F is assumed exact
// (field division for Q, exact quotient for polynomial rings).
#pragma once

#include "hcb/rational.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hcb {

template <class F>
class UPoly {
public:
    UPoly() = default;
    UPoly(int c) { if (c != 0) c_.push_back(F(c)); }
    UPoly(const F& c) { if (!isZero(c)) c_.push_back(c); }
    explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly monomial(const F& a, int k) {
        if (isZero(a)) return {};
        std::vector<F> v(static_cast<size_t>(k) + 1, F(0));
        v[static_cast<size_t>(k)] = a;
        return UPoly(std::move(v));
    }
    static UPoly x() { return monomial(F(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool isZeroPoly() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(int k) const {
        if (k < 0 || k > degree()) return F(0);
        return c_[static_cast<size_t>(k)];
    }
    const F& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    void setCoeff(int k, const F& a) {
        if (k > degree()) c_.resize(static_cast<size_t>(k) + 1, F(0));
        c_[static_cast<size_t>(k)] = a;
        trim();
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (isZero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    UPoly scaled(const F& s) const {
        if (isZero(s)) return {};
        UPoly r = *this;
        for (auto& a : r.c_) a *= s;
        r.trim();
        return r;
    }
    UPoly shifted(int k) const {  // multiply by x^k
        if (c_.empty() || k == 0) return *this;
        std::vector<F> v(static_cast<size_t>(k), F(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return UPoly(std::move(v));
    }

    template <class T>
    T eval(const T& t) const {
        T r = T(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * t + T(c_[i]);
        return r;
    }
    F operator()(const F& t) const { return eval<F>(t); }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> v(c_.size() - 1, F(0));
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * F(static_cast<int>(i));
        return UPoly(std::move(v));
    }
    // p(q(x))
    UPoly compose(const UPoly& q) const {
        UPoly r;
        for (size_t i = c_.size(); i-- > 0;) r = r * q + UPoly(c_[i]);
        return r;
    }

    // Canonical text: "a0*x^0 + a1*x^1 + ...", zero terms omitted, "0" for zero.
    std::string toString(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (isZero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << wrap(toText(c_[i])) << "*" << var << "^" << i;
        }
        return os.str();
    }

private:
    static std::string wrap(const std::string& s) {
        if (s.find(' ') == std::string::npos) return s;
        return "(" + s + ")";
    }
    void trim() {
        while (!c_.empty() && isZero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F>
bool isZero(const UPoly<F>& p) { return p.isZeroPoly(); }
template <class F>
std::string toText(const UPoly<F>& p) { return p.toString("x"); }

using QPoly = UPoly<Q>;

// Division with remainder over a field.
template <class F>
std::pair<UPoly<F>, UPoly<F>> divmod(const UPoly<F>& a, const UPoly<F>& b) {
    if (b.isZeroPoly()) throw std::domain_error("polynomial division by zero");
    std::vector<F> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {UPoly<F>(), a};
    std::vector<F> q(static_cast<size_t>(da - db) + 1, F(0));
    const F& lb = b.lc();
    for (int k = da; k >= db; --k) {
        F t = r[static_cast<size_t>(k)] / lb;
        q[static_cast<size_t>(k - db)] = t;
        if (isZero(t)) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k - db + j)] -= t * b.coeff(j);
    }
    r.resize(static_cast<size_t>(db));
    return {UPoly<F>(std::move(q)), UPoly<F>(std::move(r))};
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r.
template <class R>
UPoly<R> prem(const UPoly<R>& a, const UPoly<R>& b) {
    if (b.isZeroPoly()) throw std::domain_error("pseudo-remainder by zero");
    int db = b.degree();
    if (a.degree() < db) return a;
    std::vector<R> r = a.coeffs();
    const R lb = b.lc();
    int e = a.degree() - db + 1;
    for (int k = a.degree(); k >= db; --k) {
        R t = r[static_cast<size_t>(k)];
        for (auto& x : r) x *= lb;
        --e;
        if (isZero(t)) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k - db + j)] -= t * b.coeff(j);
    }
    UPoly<R> out(std::vector<R>(r.begin(), r.begin() + db));
    for (; e > 0; --e) out = out.scaled(lb);
    return out;
}

// Exact quotient in R[x]; throws if b does not divide a.
template <class R>
UPoly<R> exactQuotient(const UPoly<R>& a, const UPoly<R>& b) {
    if (b.isZeroPoly()) throw std::domain_error("exact division by zero polynomial");
    if (a.isZeroPoly()) return {};
    int db = b.degree(), da = a.degree();
    if (da < db) throw std::domain_error("inexact polynomial division");
    std::vector<R> r = a.coeffs();
    std::vector<R> q(static_cast<size_t>(da - db) + 1, R(0));
    for (int k = da; k >= db; --k) {
        if (isZero(r[static_cast<size_t>(k)])) continue;
        R t = r[static_cast<size_t>(k)] / b.lc();
        q[static_cast<size_t>(k - db)] = t;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k - db + j)] -= t * b.coeff(j);
    }
    for (int k = 0; k < db; ++k)
        if (!isZero(r[static_cast<size_t>(k)])) throw std::domain_error("inexact polynomial division");
    return UPoly<R>(std::move(q));
}

template <class F>
UPoly<F> operator/(const UPoly<F>& a, const UPoly<F>& b) { return exactQuotient(a, b); }

template <class F>
UPoly<F> monic(const UPoly<F>& p) {
    if (p.isZeroPoly()) return p;
    return p.scaled(F(1) / p.lc());
}

// Monic gcd over a field.
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.isZeroPoly()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

template <class F>
UPoly<F> powPoly(const UPoly<F>& p, unsigned e) {
    UPoly<F> r(F(1)), b = p;
    while (e) {
        if (e & 1U) r *= b;
        b *= b;
        e >>= 1U;
    }
    return r;
}

// Resultant over an integral domain R by the subresultant PRS.
// Agrees with the Sylvester determinant (rows of a first), sign included.
template <class R>
R resultant(UPoly<R> a, UPoly<R> b) {
    if (a.isZeroPoly() || b.isZeroPoly()) throw std::domain_error("undefined resultant");
    R s(1);
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) s = -s;
    }
    if (b.degree() == 0) {
        R r(1);
        for (int i = 0; i < a.degree(); ++i) r *= b.lc();
        return s * r;
    }
    R g(1), h(1);
    for (;;) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da % 2 == 1) && (db % 2 == 1)) s = -s;
        UPoly<R> r = prem(a, b);
        a = std::move(b);
        if (r.isZeroPoly()) return R(0);
        R div = g;
        for (int i = 0; i < delta; ++i) div *= h;
        b = UPoly<R>(std::vector<R>(r.coeffs()));
        {
            std::vector<R> v = b.coeffs();
            for (auto& x : v) x = x / div;
            b = UPoly<R>(std::move(v));
        }
        g = a.lc();
        // h <- g^delta / h^(delta-1)
        if (delta == 0) {
            // h^(1) * g^0 / ... : h stays h^(1-0)=h, times g^0
        } else {
            R num(1);
            for (int i = 0; i < delta; ++i) num *= g;
            R den(1);
            for (int i = 0; i < delta - 1; ++i) den *= h;
            h = num / den;
        }
        if (b.degree() == 0) {
            int d = a.degree();
            R num(1);
            for (int i = 0; i < d; ++i) num *= b.lc();
            R den(1);
            for (int i = 0; i < d - 1; ++i) den *= h;
            return s * (num / den);
        }
    }
}

// Parse the canonical text form (Q coefficients only).
QPoly parseQPoly(const std::string& text, const std::string& var = "x");

}  // namespace hcb
