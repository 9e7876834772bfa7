// Sparse bivariate polynomials and resultants.
#pragma once

#include "hcb/upoly.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace hcb {

template <class R>
class BPoly {
public:
    using Exp = std::pair<int, int>;

    BPoly() = default;
    BPoly(int c) { if (c != 0) t_[{0, 0}] = R(c); }
    BPoly(const R& c) { if (!isZero(c)) t_[{0, 0}] = c; }

    static BPoly monomial(const R& c, int i, int j) {
        BPoly p;
        if (!isZero(c)) p.t_[{i, j}] = c;
        return p;
    }
    static BPoly x() { return monomial(R(1), 1, 0); }
    static BPoly y() { return monomial(R(1), 0, 1); }

    const std::map<Exp, R>& terms() const { return t_; }
    bool isZeroPoly() const { return t_.empty(); }
    R coeff(int i, int j) const {
        auto it = t_.find({i, j});
        return it == t_.end() ? R(0) : it->second;
    }
    void add(int i, int j, const R& c) {
        if (isZero(c)) return;
        auto it = t_.find({i, j});
        if (it == t_.end()) {
            t_[{i, j}] = c;
            return;
        }
        it->second += c;
        if (isZero(it->second)) t_.erase(it);
    }

    int degX() const { int d = -1; for (auto& [e, c] : t_) d = std::max(d, e.first); return d; }
    int degY() const { int d = -1; for (auto& [e, c] : t_) d = std::max(d, e.second); return d; }
    int totalDegree() const { int d = -1; for (auto& [e, c] : t_) d = std::max(d, e.first + e.second); return d; }
    int minTotalDegree() const {
        int d = 1 << 30;
        for (auto& [e, c] : t_) d = std::min(d, e.first + e.second);
        return t_.empty() ? -1 : d;
    }

    friend bool operator==(const BPoly& a, const BPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const BPoly& a, const BPoly& b) { return !(a == b); }

    BPoly operator-() const {
        BPoly r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }
    BPoly& operator+=(const BPoly& o) { for (auto& [e, c] : o.t_) add(e.first, e.second, c); return *this; }
    BPoly& operator-=(const BPoly& o) { for (auto& [e, c] : o.t_) add(e.first, e.second, -c); return *this; }
    friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
    friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }
    friend BPoly operator*(const BPoly& a, const BPoly& b) {
        BPoly r;
        for (auto& [ea, ca] : a.t_)
            for (auto& [eb, cb] : b.t_) r.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    BPoly& operator*=(const BPoly& o) { return *this = *this * o; }
    BPoly scaled(const R& s) const {
        BPoly r;
        for (auto& [e, c] : t_) r.add(e.first, e.second, c * s);
        return r;
    }

    BPoly dx() const {
        BPoly r;
        for (auto& [e, c] : t_)
            if (e.first > 0) r.add(e.first - 1, e.second, c * R(e.first));
        return r;
    }
    BPoly dy() const {
        BPoly r;
        for (auto& [e, c] : t_)
            if (e.second > 0) r.add(e.first, e.second - 1, c * R(e.second));
        return r;
    }

    // Coefficients in y, each a polynomial in x.
    UPoly<UPoly<R>> asPolyInY() const {
        std::vector<UPoly<R>> v(static_cast<size_t>(std::max(degY(), -1) + 1));
        for (auto& [e, c] : t_) v[static_cast<size_t>(e.second)] += UPoly<R>::monomial(c, e.first);
        return UPoly<UPoly<R>>(std::move(v));
    }
    UPoly<UPoly<R>> asPolyInX() const {
        std::vector<UPoly<R>> v(static_cast<size_t>(std::max(degX(), -1) + 1));
        for (auto& [e, c] : t_) v[static_cast<size_t>(e.first)] += UPoly<R>::monomial(c, e.second);
        return UPoly<UPoly<R>>(std::move(v));
    }

    UPoly<R> atX(const R& xv) const {  // polynomial in y
        UPoly<R> r;
        for (auto& [e, c] : t_) r += UPoly<R>::monomial(c * rpow(xv, e.first), e.second);
        return r;
    }
    UPoly<R> atY(const R& yv) const {  // polynomial in x
        UPoly<R> r;
        for (auto& [e, c] : t_) r += UPoly<R>::monomial(c * rpow(yv, e.second), e.first);
        return r;
    }
    R eval(const R& xv, const R& yv) const { return atX(xv)(yv); }

    // Substitute y = f(x).
    UPoly<R> onGraphY(const UPoly<R>& f) const {
        auto py = asPolyInY();
        UPoly<R> r;
        for (int j = py.degree(); j >= 0; --j) r = r * f + py.coeff(j);
        return r;
    }
    // Substitute x = g(y).
    UPoly<R> onGraphX(const UPoly<R>& g) const {
        auto px = asPolyInX();
        UPoly<R> r;
        for (int i = px.degree(); i >= 0; --i) r = r * g + px.coeff(i);
        return r;
    }

    // Canonical text: terms "c*x^i*y^j" ordered by (total degree, x-degree desc).
    std::string toString(const std::string& vx = "x", const std::string& vy = "y") const {
        if (t_.empty()) return "0";
        std::vector<std::pair<Exp, R>> v(t_.begin(), t_.end());
        std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
            int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
            if (da != db) return da < db;
            return a.first.first > b.first.first;
        });
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : v) {
            if (!first) os << " + ";
            first = false;
            std::string s = toText(c);
            if (s.find(' ') != std::string::npos) s = "(" + s + ")";
            os << s << "*" << vx << "^" << e.first << "*" << vy << "^" << e.second;
        }
        return os.str();
    }

private:
    static R rpow(const R& b, int e) {
        R r(1);
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }
    std::map<Exp, R> t_;
};

template <class R>
bool isZero(const BPoly<R>& p) { return p.isZeroPoly(); }
template <class R>
std::string toText(const BPoly<R>& p) { return p.toString(); }

using QBPoly = BPoly<Q>;

enum class Var { X, Y };

// Resultant eliminating the given variable; a polynomial in the other one.
template <class R>
UPoly<R> resultantWrt(const BPoly<R>& a, const BPoly<R>& b, Var elim) {
    if (a.isZeroPoly() || b.isZeroPoly()) throw std::domain_error("undefined resultant");
    if (elim == Var::Y) return resultant(a.asPolyInY(), b.asPolyInY());
    return resultant(a.asPolyInX(), b.asPolyInX());
}

QBPoly parseQBPoly(const std::string& text);

}  // namespace hcb
