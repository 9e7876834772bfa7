// Power series.
//
// TruncSeries<R>: coefficients of t^0..t^(order-1); everything at or above
// the order is discarded.  PSeries<F>: Laurent series over a field with an
// explicit absolute precision, for computations where valuations shift and
// precision is lost in divisions.
#pragma once

#include "hcb/upoly.hpp"

#include <climits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcb {

template <class R>
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int order) : c_(static_cast<size_t>(order), R(0)) {}
    TruncSeries(std::vector<R> c, int order) : c_(std::move(c)) { c_.resize(static_cast<size_t>(order), R(0)); }
    static TruncSeries constant(const R& a, int order) {
        TruncSeries s(order);
        if (order > 0) s.c_[0] = a;
        return s;
    }
    static TruncSeries variable(int order) {
        TruncSeries s(order);
        if (order > 1) s.c_[1] = R(1);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()); }
    const R& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    R& operator[](int k) { return c_[static_cast<size_t>(k)]; }
    R coeff(int k) const { return (k >= 0 && k < order()) ? c_[static_cast<size_t>(k)] : R(0); }
    const std::vector<R>& coeffs() const { return c_; }
    int valuation() const {
        for (int k = 0; k < order(); ++k)
            if (!isZero(c_[static_cast<size_t>(k)])) return k;
        return order();
    }

    TruncSeries truncated(int order) const {
        TruncSeries r(order);
        for (int k = 0; k < std::min(order, this->order()); ++k) r[k] = (*this)[k];
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

    TruncSeries operator-() const { TruncSeries r = *this; for (auto& a : r.c_) a = -a; return r; }
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        int n = std::min(a.order(), b.order());
        TruncSeries r(n);
        for (int k = 0; k < n; ++k) r[k] = a[k] + b[k];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        int n = std::min(a.order(), b.order());
        TruncSeries r(n);
        for (int i = 0; i < n; ++i) {
            if (isZero(a[i])) continue;
            for (int j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }
    TruncSeries scaled(const R& s) const { TruncSeries r = *this; for (auto& a : r.c_) a *= s; return r; }

    // 1/a, requires a unit constant term.
    TruncSeries inverse() const {
        if (order() == 0) return *this;
        if (isZero(c_[0])) throw std::domain_error("series inverse needs a nonzero constant term");
        TruncSeries r(order());
        R inv0 = R(1) / c_[0];
        r[0] = inv0;
        for (int k = 1; k < order(); ++k) {
            R s(0);
            for (int j = 1; j <= k; ++j) s += c_[static_cast<size_t>(j)] * r[k - j];
            r[k] = -(s * inv0);
        }
        return r;
    }
    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) { return a * b.inverse(); }

    // a(b(t)), requires b(0) = 0.
    TruncSeries compose(const TruncSeries& b) const {
        if (b.order() > 0 && !isZero(b[0])) throw std::domain_error("compose needs inner series without constant term");
        int n = std::min(order(), b.order());
        TruncSeries r(n), p = TruncSeries::constant(R(1), n);
        for (int k = 0; k < n; ++k) {
            if (!isZero(c_[static_cast<size_t>(k)])) r = r + p.scaled(c_[static_cast<size_t>(k)]);
            p = p * b.truncated(n);
        }
        return r;
    }

    // Compositional inverse; requires a(0)=0 and a nonzero linear term.
    TruncSeries revert() const {
        int n = order();
        if (n < 2) throw std::domain_error("reversion needs order >= 2");
        if (!isZero(c_[0])) throw std::domain_error("reversion needs zero constant term");
        if (isZero(c_[1])) throw std::domain_error("reversion of series with zero linear coefficient");
        // Newton-free iteration: solve a(r(t)) = t term by term.
        TruncSeries r(n);
        R inv1 = R(1) / c_[1];
        r[1] = inv1;
        for (int k = 2; k < n; ++k) {
            TruncSeries cur = compose(r);
            r[k] = -(cur[k] * inv1);
        }
        return r;
    }

    std::string toString(const std::string& var = "t") const {
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < order(); ++k) {
            if (isZero(c_[static_cast<size_t>(k)])) continue;
            if (!first) os << " + ";
            first = false;
            std::string s = toText(c_[static_cast<size_t>(k)]);
            if (s.find(' ') != std::string::npos) s = "(" + s + ")";
            os << s << "*" << var << "^" << k;
        }
        if (!first) os << " + ";
        os << "O(" << var << "^" << order() << ")";
        return os.str();
    }

private:
    std::vector<R> c_;
};

// ---------------------------------------------------------------------------

template <class F>
class PSeries {
public:
    static constexpr long kInf = LONG_MAX / 4;

    PSeries() = default;  // exact zero
    PSeries(int a) { if (a != 0) c_.push_back(F(a)); }
    PSeries(const F& a) { if (!isZero(a)) c_.push_back(a); }
    PSeries(std::vector<F> c, long lo, long prec) : lo_(lo), c_(std::move(c)), prec_(prec) { clip(); }
    static PSeries monomial(const F& a, long k) { return PSeries(std::vector<F>{a}, k, kInf); }
    static PSeries fromPoly(const UPoly<F>& p) { return PSeries(p.coeffs(), 0, kInf); }
    static PSeries zero(long prec) { return PSeries({}, 0, prec); }

    long prec() const { return prec_; }
    bool exact() const { return prec_ >= kInf; }
    long lo() const { return lo_; }
    // First exponent with a nonzero coefficient, or prec() if none is known.
    long val() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!isZero(c_[i])) return lo_ + static_cast<long>(i);
        return prec_;
    }
    bool knownZero() const { return val() >= prec_; }
    F coeff(long k) const {
        long i = k - lo_;
        if (i < 0 || i >= static_cast<long>(c_.size())) return F(0);
        return c_[static_cast<size_t>(i)];
    }
    F lead() const { return coeff(val()); }
    // Highest exponent with a stored coefficient + 1.
    long end() const { return lo_ + static_cast<long>(c_.size()); }

    PSeries withPrec(long p) const { PSeries r = *this; r.prec_ = std::min(r.prec_, p); r.clip(); return r; }

    PSeries operator-() const { PSeries r = *this; for (auto& a : r.c_) a = -a; return r; }
    friend PSeries operator+(const PSeries& a, const PSeries& b) {
        long p = std::min(a.prec_, b.prec_);
        long lo = std::min(a.lo_, b.lo_);
        long hi = std::min(std::max(a.end(), b.end()), p);
        std::vector<F> c(static_cast<size_t>(std::max(0L, hi - lo)), F(0));
        for (long k = lo; k < hi; ++k) c[static_cast<size_t>(k - lo)] = a.coeff(k) + b.coeff(k);
        return PSeries(std::move(c), lo, p);
    }
    friend PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }
    friend PSeries operator*(const PSeries& a, const PSeries& b) {
        long va = a.val(), vb = b.val();
        long p = kInf;
        if (!a.exact()) p = std::min(p, vb + a.prec_);
        if (!b.exact()) p = std::min(p, va + b.prec_);
        if (a.knownZero() || b.knownZero()) return zero(std::min(p, va + vb));
        long lo = va + vb;
        long hi = std::min(a.end() + b.end() - 1, p);
        if (hi <= lo) return zero(p);
        std::vector<F> c(static_cast<size_t>(hi - lo), F(0));
        for (long i = va; i < a.end(); ++i) {
            const F ai = a.coeff(i);
            if (isZero(ai)) continue;
            for (long j = vb; j < b.end() && i + j < hi; ++j) {
                c[static_cast<size_t>(i + j - lo)] += ai * b.coeff(j);
            }
        }
        return PSeries(std::move(c), lo, p);
    }
    PSeries scaled(const F& s) const { PSeries r = *this; for (auto& a : r.c_) a *= s; r.clip(); return r; }
    PSeries shifted(long k) const {  // multiply by t^k
        PSeries r = *this;
        r.lo_ += k;
        if (!r.exact()) r.prec_ += k;
        return r;
    }

    // 1/b with at most `relCap` correct terms after the leading one.
    PSeries inverse(long relCap) const {
        long v = val();
        if (v >= prec_) throw std::domain_error("inverse of a series not known to be nonzero");
        long rel = exact() ? relCap : std::min(relCap, prec_ - v);
        std::vector<F> u;
        for (long k = v; k < std::min(end(), v + rel); ++k) u.push_back(coeff(k));
        std::vector<F> r(static_cast<size_t>(rel), F(0));
        F inv0 = F(1) / u[0];
        r[0] = inv0;
        for (long k = 1; k < rel; ++k) {
            F s(0);
            for (long j = 1; j <= k && j < static_cast<long>(u.size()); ++j) s += u[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
            r[static_cast<size_t>(k)] = -(s * inv0);
        }
        return PSeries(std::move(r), -v, -v + rel);
    }
    // a/b where the quotient keeps at most relCap terms beyond its valuation.
    friend PSeries divide(const PSeries& a, const PSeries& b, long relCap) { return a * b.inverse(relCap); }

    std::string toString(const std::string& var = "M") const {
        std::ostringstream os;
        bool first = true;
        for (long k = lo_; k < end(); ++k) {
            F a = coeff(k);
            if (isZero(a)) continue;
            if (!first) os << " + ";
            first = false;
            os << toText(a) << "*" << var << "^" << k;
        }
        if (!exact()) {
            if (!first) os << " + ";
            os << "O(" << var << "^" << prec_ << ")";
        } else if (first) {
            os << "0";
        }
        return os.str();
    }

private:
    void clip() {
        if (!exact() && end() > prec_) c_.resize(static_cast<size_t>(std::max(0L, prec_ - lo_)));
        while (!c_.empty() && isZero(c_.back())) c_.pop_back();
        size_t z = 0;
        while (z < c_.size() && isZero(c_[z])) ++z;
        if (z) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(z));
            lo_ += static_cast<long>(z);
        }
        if (c_.empty()) lo_ = 0;
    }
    long lo_ = 0;
    std::vector<F> c_;
    long prec_ = kInf;
};

template <class F>
bool isZero(const PSeries<F>& s) { return s.knownZero(); }
template <class F>
std::string toText(const PSeries<F>& s) { return s.toString(); }

using QSeries = PSeries<Q>;

// Determinant over F[[t]] by elimination with minimal-valuation pivots.
template <class F>
PSeries<F> seriesDet(std::vector<std::vector<PSeries<F>>> a, long relCap) {
    size_t n = a.size();
    PSeries<F> d(1);
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        long best = PSeries<F>::kInf;
        size_t bi = k, bj = k;
        long minPrec = PSeries<F>::kInf;
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j) {
                long v = a[i][j].val();
                minPrec = std::min(minPrec, a[i][j].prec());
                if (v < a[i][j].prec() && v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best >= PSeries<F>::kInf) return PSeries<F>::zero(minPrec >= PSeries<F>::kInf ? PSeries<F>::kInf : minPrec);
        if (bi != k) { std::swap(a[bi], a[k]); sign = -sign; }
        if (bj != k) { for (auto& row : a) std::swap(row[bj], row[k]); sign = -sign; }
        const PSeries<F>& p = a[k][k];
        d = d * p;
        PSeries<F> inv = p.inverse(relCap);
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k].knownZero() && a[i][k].exact()) continue;
            PSeries<F> f = a[i][k] * inv;
            for (size_t j = k + 1; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
        }
    }
    return sign < 0 ? -d : d;
}

// Solve a x = rhs over F((t)) by full-pivot elimination.
template <class F>
std::vector<PSeries<F>> seriesSolve(std::vector<std::vector<PSeries<F>>> a, std::vector<PSeries<F>> rhs, long relCap) {
    size_t n = a.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t k = 0; k < n; ++k) {
        long best = PSeries<F>::kInf;
        size_t bi = k, bj = k;
        for (size_t i = k; i < n; ++i)
            for (size_t j = k; j < n; ++j) {
                long v = a[i][j].val();
                if (v < a[i][j].prec() && v < best) { best = v; bi = i; bj = j; }
            }
        if (best >= PSeries<F>::kInf) throw std::domain_error("singular series system at pivot " + std::to_string(k));
        std::swap(a[bi], a[k]);
        std::swap(rhs[bi], rhs[k]);
        if (bj != k) { for (auto& row : a) std::swap(row[bj], row[k]); std::swap(perm[bj], perm[k]); }
        PSeries<F> inv = a[k][k].inverse(relCap);
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k].knownZero() && a[i][k].exact()) continue;
            PSeries<F> f = a[i][k] * inv;
            for (size_t j = k + 1; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
            rhs[i] = rhs[i] - f * rhs[k];
        }
    }
    std::vector<PSeries<F>> y(n);
    for (size_t k = n; k-- > 0;) {
        PSeries<F> s = rhs[k];
        for (size_t j = k + 1; j < n; ++j) s = s - a[k][j] * y[j];
        y[k] = s * a[k][k].inverse(relCap);
    }
    std::vector<PSeries<F>> x(n);
    for (size_t k = 0; k < n; ++k) x[perm[k]] = y[k];
    return x;
}

}  // namespace hcb
