#include "hcb/rationalizer.hpp"
#include "hcb/bt.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hcb {

std::string DioPoint::toRecord() const {
    std::ostringstream os;
    os << "(" << u << "," << v << ") -> " << b;
    return os.str();
}

DioPoint dioParam(const mpz_class& u, const mpz_class& v) {
    if (v == 0 || 2 * u + v == 0) throw std::invalid_argument("degenerate parameter");
    DioPoint d;
    d.u = u;
    d.v = v;
    d.p = 4 * u * u - 17 * v * v;
    d.q = 4 * v * (2 * u + v);
    d.t = 2 * (4 * u * u + 4 * u * v + 17 * v * v);
    d.b = Q(d.p, d.q);
    d.b.canonicalize();
    d.aPlus = Q(mpz_class(2 * u + v), mpz_class(4 * v));
    d.aPlus.canonicalize();
    d.aMinus = Q(mpz_class(-4 * v), mpz_class(2 * u + v));
    d.aMinus.canonicalize();
    if (4 * d.p * d.p + 4 * d.p * d.q + 17 * d.q * d.q != d.t * d.t) throw std::logic_error("diophantine identity failed");
    if (d.aPlus * d.aMinus != -1 || d.aPlus + d.aMinus - Q(1, 2) != d.b) throw std::logic_error("eigenvalue identity failed");
    return d;
}

Q gMap(const Q& w) {
    Q den = 8 * w + 4;
    if (den == 0) throw std::invalid_argument("G is undefined at w = -1/2");
    return (4 * w * w - 17) / den;
}

namespace {

unsigned digitsFor(const Real& tol) {
    double e = -static_cast<double>(log10(tol));
    if (!std::isfinite(e) || e < 0) e = 0;
    return static_cast<unsigned>(2 * e) + 40;
}

mpz_class floorToZ(const Real& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDD);
    return z;
}

// Walks the convergents of x; calls visit(num, den) until it returns true.
template <class Visit>
void convergents(Real x, int maxTerms, Visit visit) {
    mpz_class h1 = 1, h0 = 0, k1 = 0, k0 = 1;
    for (int i = 0; i < maxTerms; ++i) {
        mpz_class a = floorToZ(x);
        mpz_class h = a * h1 + h0, k = a * k1 + k0;
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        if (visit(h, k)) return;
        Real frac = x - toReal(a);
        if (frac == 0) return;
        x = 1 / frac;
    }
}

}  // namespace

DioPoint approximateRationalB(const Real& target, const Real& tol) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    PrecisionScope scope(digitsFor(tol));
    Real t(target);
    Real w = t + sqrt(t * t + t + Real(17) / 4);  // the branch w > -1/2
    std::optional<DioPoint> best;
    Real bestErr;
    convergents(w, 4000, [&](const mpz_class& h, const mpz_class& k) {
        if (k == 0 || 2 * h + k == 0) return false;
        DioPoint d = dioParam(h, k);
        Real err = abs(toReal(d.b) - t);
        if (!best || err < bestErr) {
            best = d;
            bestErr = err;
        }
        return bestErr < tol;
    });
    if (!best || !(bestErr < tol)) throw std::runtime_error("continued fraction ran out of precision");
    return *best;
}

bool eigenvaluesRational(const Q& s, const Q& b) {
    Q c = b + s;
    return rationalSqrt(c * c + 8 * s).has_value();
}

RationalB generalizedRationality(const Q& s, const Real& target, const Real& tol, int budget) {
    if (s <= 0) throw std::invalid_argument("sqrt(n) must be positive");
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    PrecisionScope scope(digitsFor(tol));
    Real c = Real(target) + toReal(s);
    Real lambda = -c + sqrt(c * c + 8 * toReal(s));
    std::optional<RationalB> best;
    Real bestErr;
    convergents(lambda, budget, [&](const mpz_class& h, const mpz_class& k) {
        if (h <= 0) return false;
        Q l(h, k);
        l.canonicalize();
        RationalB r;
        r.b = (8 * s / l - l) / 2 - s;
        r.aPlus = 4 * s / l;
        r.aMinus = -l / 2;
        Real err = abs(toReal(r.b) - Real(target));
        if (!best || err < bestErr) {
            best = r;
            bestErr = err;
        }
        return bestErr < tol;
    });
    if (!best) throw std::runtime_error("search budget exhausted with no candidate");
    if (!(bestErr < tol)) {
        std::ostringstream os;
        os << "search budget exhausted; best candidate b = " << best->b;
        throw std::runtime_error(os.str());
    }
    if (!eigenvaluesRational(s, best->b)) throw std::logic_error("eigenvalues not rational");
    return *best;
}

}  // namespace hcb
