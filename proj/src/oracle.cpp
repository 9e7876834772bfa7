#include "hcb/oracle.hpp"
#include "hcb/family1.hpp"
#include "hcb/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hcb {

namespace {

mpfr_ptr raw(Real& r) { return r.backend().data(); }
mpfr_srcptr raw(const Real& r) { return r.backend().data(); }

// Copy rounded to the current default precision.
Real local(const Real& v) {
    Real r(0);
    mpfr_set(raw(r), raw(v), MPFR_RNDN);
    return r;
}

// Natural log of |v|, -inf for zero; safe far outside the double range.
double logAbs(const Real& v) {
    if (mpfr_zero_p(raw(v))) return -HUGE_VAL;
    long e = 0;
    double d = mpfr_get_d_2exp(&e, raw(v), MPFR_RNDN);
    return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

// acc = sum_{i=0..k} a[i] b[k-i]
void cauchy(mpfr_ptr acc, const std::vector<Real>& a, const std::vector<Real>& b, size_t k, mpfr_ptr tmp) {
    mpfr_set_zero(acc, 1);
    for (size_t i = 0; i <= k; ++i) {
        mpfr_mul(tmp, raw(a[i]), raw(b[k - i]), MPFR_RNDN);
        mpfr_add(acc, acc, tmp, MPFR_RNDN);
    }
}

void square(mpfr_ptr acc, const std::vector<Real>& a, size_t k, mpfr_ptr tmp) {
    mpfr_set_zero(acc, 1);
    for (size_t i = 0; 2 * i < k; ++i) {
        mpfr_mul(tmp, raw(a[i]), raw(a[k - i]), MPFR_RNDN);
        mpfr_add(acc, acc, tmp, MPFR_RNDN);
    }
    mpfr_mul_2ui(acc, acc, 1, MPFR_RNDN);
    if (k % 2 == 0) {
        mpfr_sqr(tmp, raw(a[k / 2]), MPFR_RNDN);
        mpfr_add(acc, acc, tmp, MPFR_RNDN);
    }
}

Real horner(const std::vector<Real>& c, const Real& s) {
    Real r = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        mpfr_mul(raw(r), raw(r), raw(s), MPFR_RNDN);
        mpfr_add(raw(r), raw(r), raw(c[i]), MPFR_RNDN);
    }
    return r;
}

Real hornerDerivative(const std::vector<Real>& c, const Real& s) {
    Real r(0);
    for (size_t i = c.size() - 1; i >= 1; --i) {
        r = r * s + Real(static_cast<unsigned long>(i)) * c[i];
    }
    return r;
}

int tolDigitsOf(const TaylorSettings& s) { return s.tolDigits > 0 ? s.tolDigits : static_cast<int>(s.digits) - 4; }

// Root of g on [0, h] given a sign change, by bisection polished with Newton.
template <class G, class DG>
Real locate(G g, DG dg, const Real& h) {
    Real lo(0), hi = local(h);
    Real glo = g(lo);
    for (int i = 0; i < 60; ++i) {
        Real mid = (lo + hi) / 2;
        Real gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Real s = (lo + hi) / 2;
    for (int i = 0; i < 8; ++i) {
        Real d = dg(s);
        if (d == 0) break;
        Real next = s - g(s) / d;
        if (next < lo || next > hi) break;
        s = next;
    }
    return s;
}

}  // namespace

QuadraticField QuadraticField::zero() {
    QuadraticField f;
    for (int i = 0; i < 6; ++i) f.p[i] = f.q[i] = Real(0);
    return f;
}

QuadraticField QuadraticField::btScaled(const Real& m, const Real& c) {
    QuadraticField f = zero();
    f.p[2] = 1;
    f.q[1] = 2;
    f.q[2] = c;
    f.q[3] = 1;
    f.q[4] = m;
    return f;
}

QuadraticField QuadraticField::family1(const Real& n, const Real& b) {
    QuadraticField f = zero();
    f.p[2] = 1;
    f.q[1] = -1;
    f.q[2] = b;
    f.q[4] = 1;
    f.q[5] = -n;
    return f;
}

QuadraticField QuadraticField::perko(const Real& mu1, const Real& mu2) {
    QuadraticField f = zero();
    f.p[2] = 1;
    f.q[1] = -1;
    f.q[2] = mu1;
    f.q[3] = 1;
    f.q[4] = mu2;
    return f;
}

QuadraticField QuadraticField::reversed() const {
    QuadraticField f;
    for (int i = 0; i < 6; ++i) {
        f.p[i] = -p[i];
        f.q[i] = -q[i];
    }
    return f;
}

Real QuadraticField::evalP(const Real& x, const Real& y) const {
    return p[0] + p[1] * x + p[2] * y + p[3] * x * x + p[4] * x * y + p[5] * y * y;
}

Real QuadraticField::evalQ(const Real& x, const Real& y) const {
    return q[0] + q[1] * x + q[2] * y + q[3] * x * x + q[4] * x * y + q[5] * y * y;
}

PlanePoint TaylorJet::eval(const Real& s) const { return {horner(x, s), horner(y, s)}; }
Real TaylorJet::evalX(const Real& s) const { return horner(x, s); }
Real TaylorJet::evalY(const Real& s) const { return horner(y, s); }
Real TaylorJet::evalXPrime(const Real& s) const { return hornerDerivative(x, s); }
Real TaylorJet::evalYPrime(const Real& s) const { return hornerDerivative(y, s); }

TaylorJet taylorJet(const QuadraticField& f, const PlanePoint& at, int order) {
    if (order < 1) throw std::invalid_argument("Taylor order must be >= 1");
    size_t N = static_cast<size_t>(order) + 1;
    TaylorJet j;
    j.x.assign(N, Real(0));
    j.y.assign(N, Real(0));
    j.x[0] = local(at.x);
    j.y[0] = local(at.y);
    bool needXX = f.p[3] != 0 || f.q[3] != 0;
    bool needXY = f.p[4] != 0 || f.q[4] != 0;
    bool needYY = f.p[5] != 0 || f.q[5] != 0;
    Real xx(0), xy(0), yy(0), tmp(0), acc(0);
    auto combine = [&](const std::array<Real, 6>& c, size_t k, Real& out) {
        mpfr_set_zero(raw(acc), 1);
        if (k == 0) mpfr_set(raw(acc), raw(c[0]), MPFR_RNDN);
        auto term = [&](const Real& coef, const Real& v) {
            if (coef == 0) return;
            mpfr_mul(raw(tmp), raw(coef), raw(v), MPFR_RNDN);
            mpfr_add(raw(acc), raw(acc), raw(tmp), MPFR_RNDN);
        };
        term(c[1], j.x[k]);
        term(c[2], j.y[k]);
        if (needXX) term(c[3], xx);
        if (needXY) term(c[4], xy);
        if (needYY) term(c[5], yy);
        mpfr_div_ui(raw(out), raw(acc), static_cast<unsigned long>(k + 1), MPFR_RNDN);
    };
    for (size_t k = 0; k + 1 < N; ++k) {
        if (needXX) square(raw(xx), j.x, k, raw(tmp));
        if (needXY) cauchy(raw(xy), j.x, j.y, k, raw(tmp));
        if (needYY) square(raw(yy), j.y, k, raw(tmp));
        combine(f.p, k, j.x[k + 1]);
        combine(f.q, k, j.y[k + 1]);
    }
    return j;
}

TaylorIntegrator::TaylorIntegrator(QuadraticField f, PlanePoint start, const TaylorSettings& s)
    : f_(std::move(f)), pt_{local(start.x), local(start.y)}, t_(0), maxSteps_(s.maxSteps) {
    int td = tolDigitsOf(s);
    if (td < 4) throw std::invalid_argument("tolerance must be at least 1e-4");
    logTol_ = -td * std::log(10.0);
    order_ = s.order > 0 ? s.order : static_cast<int>(std::ceil(-logTol_ / 2)) + 1;
}

std::pair<TaylorJet, Real> TaylorIntegrator::step(const std::optional<Real>& hmax) {
    if (++steps_ > maxSteps_) throw std::runtime_error("stiffness/precision exhausted: step limit reached");
    TaylorJet jet = taylorJet(f_, pt_, order_);
    // Jorba-Zou step size from the last two coefficients, relative to the
    // size of the current point.
    double scale = std::max(0.0, std::max(logAbs(pt_.x), logAbs(pt_.y)));
    double lt = logTol_ + scale;
    // The last two coefficients that are not exactly zero; symmetric jets can
    // vanish at the top orders by accident.
    double logH = HUGE_VAL;
    int used = 0;
    for (int k = order_; k >= order_ / 2 && used < 2; --k) {
        size_t i = static_cast<size_t>(k);
        double lc = std::max(logAbs(jet.x[i]), logAbs(jet.y[i]));
        if (!std::isfinite(lc)) continue;
        logH = std::min(logH, (lt - lc) / k);
        ++used;
    }
    Real h;
    if (std::isfinite(logH)) {
        logH -= 0.7 / (order_ - 1);
        h = Real(std::exp(logH));
        if (logH < -60) throw std::runtime_error("stiffness/precision exhausted: step size underflow");
    } else {
        h = hmax ? *hmax : Real(1);
    }
    if (hmax && h > *hmax) h = *hmax;
    pt_ = jet.eval(h);
    t_ += h;
    return {std::move(jet), h};
}

Trajectory taylorIntegrate(const QuadraticField& f, const PlanePoint& start, const Real& T,
                           const std::vector<Real>& outputTimes, const TaylorSettings& s) {
    PrecisionScope scope(s.digits);
    bool backward = T < 0;
    Real span = backward ? Real(-T) : local(T);
    TaylorIntegrator it(backward ? f.reversed() : f, start, s);
    Trajectory tr;
    size_t next = 0;
    auto emit = [&](const Real& t, const PlanePoint& p) {
        tr.t.push_back(backward ? Real(-t) : local(t));
        tr.points.push_back(p);
    };
    std::vector<Real> want;
    for (auto& t : outputTimes) {
        Real a = backward ? Real(-t) : local(t);
        if (a < 0 || a > span) throw std::invalid_argument("output time outside the integration span");
        want.push_back(a);
    }
    if (!std::is_sorted(want.begin(), want.end())) throw std::invalid_argument("output times must be monotone");
    while (next < want.size() && want[next] == 0) emit(Real(0), {local(start.x), local(start.y)}), ++next;
    while (it.time() < span) {
        Real t0 = it.time();
        auto [jet, h] = it.step(Real(span - t0));
        Real t1 = t0 + h;
        while (next < want.size() && want[next] <= t1) {
            emit(want[next], jet.eval(want[next] - t0));
            ++next;
        }
        if (span - it.time() < span * Real(1e-30)) break;
    }
    while (next < want.size()) emit(want[next], it.point()), ++next;
    return tr;
}

std::string outcomeName(Outcome o) {
    switch (o) {
        case Outcome::SpiralsIn: return "spirals-in";
        case Outcome::Escapes: return "escapes";
        case Outcome::Undecided: return "undecided";
    }
    return "?";
}

ShootingResult shootBT(const Q& n, const Real& bIn, const TaylorSettings& s) {
    if (n <= 0) throw std::domain_error("n must be positive");
    PrecisionScope scope(s.digits);
    Real b = local(bIn);
    Real m2 = sqrt(toReal(n));
    Real m = sqrt(m2);
    Real c = (b + m2) / m;
    ShootingResult res;
    res.n = n;
    res.b = b;
    res.digits = s.digits;
    // Launch point on the a1+ branch, x < 0, with the truncation error of
    // the local series below the working precision.
    Real a1 = (c + sqrt(c * c + 8)) / 2;
    int K = static_cast<int>(s.digits) / 2 + 4;
    auto a = saddleCoefficients(SaddleField<Real>{Real(2), c, Real(1), m}, a1, K,
                                [](const Real& x, const Real& y) { return Real(x / y); });
    Real X0 = Real(-1) / 100;
    Real Y0(0), pw(1);
    for (int k = 1; k <= K; ++k) {
        pw *= X0;
        Y0 += a[static_cast<size_t>(k)] * pw;
    }
    TaylorIntegrator it(QuadraticField::btScaled(m, c), {X0, Y0}, s);
    Real near = pow(Real(10), -static_cast<int>(s.digits) / 2);
    const Real maxTime(2000);
    int phase = 0;  // 0: below y = 0, 1: above after the left turn
    while (it.time() < maxTime) {
        auto [jet, h] = it.step(Real(1) / 2);
        const PlanePoint& after = it.point();
        if (phase == 0) {
            if (after.x >= 0) break;  // unexpected: left the loop region first
            if (after.y >= 0) phase = 1;
            continue;
        }
        bool hitsAxis = after.x >= 0;
        bool turnsDown = after.y < 0;
        if (!hitsAxis && !turnsDown) continue;
        std::optional<Real> sAxis, sDown;
        if (hitsAxis)
            sAxis = locate([&](const Real& t) { return jet.evalX(t); }, [&](const Real& t) { return jet.evalXPrime(t); }, h);
        if (turnsDown)
            sDown = locate([&](const Real& t) { return jet.evalY(t); }, [&](const Real& t) { return jet.evalYPrime(t); }, h);
        bool down = sDown && (!sAxis || *sDown < *sAxis);
        res.steps = it.steps();
        if (down) {
            PlanePoint p = jet.eval(*sDown);
            res.section = "y=0, between focus and saddle";
            res.crossX = p.x * m2;
            res.crossY = 0;
            res.outcome = abs(p.x) < near ? Outcome::Undecided : Outcome::SpiralsIn;
        } else {
            PlanePoint p = jet.eval(*sAxis);
            res.section = "x=0 (saddle abscissa), y > 0";
            res.crossX = 0;
            res.crossY = p.y * m2 * m;
            res.outcome = abs(p.y) < near ? Outcome::Undecided : Outcome::Escapes;
        }
        return res;
    }
    res.steps = it.steps();
    res.section = "none";
    res.outcome = Outcome::Undecided;
    return res;
}

ShootingResult shootFamily1(const Q& n, const Real& bIn, const TaylorSettings& s) {
    if (n <= 0) throw std::domain_error("n must be positive");
    PrecisionScope scope(s.digits);
    Real b = local(bIn);
    Real nr = toReal(n);
    ShootingResult res;
    res.n = n;
    res.b = b;
    res.digits = s.digits;
    // x = n y + psi(1/y) at y0 << 0; psi has radius of order min(1, n^2).
    Real inv2 = 1 / (nr * nr);
    Real y0 = -100 * (inv2 > 1 ? inv2 : Real(1));
    int K = static_cast<int>(s.digits) / 2 + 6;
    auto psi = infinityCoefficients(nr, b, K);
    Real w = 1 / y0, x0 = nr * y0, pw(1);
    for (int k = 0; k <= K; ++k) {
        x0 += psi[static_cast<size_t>(k)] * pw;
        pw *= w;
    }
    TaylorIntegrator it(QuadraticField::family1(nr, b).reversed(), {x0, y0}, s);
    Real near = pow(Real(10), -static_cast<int>(s.digits) / 2);
    const Real maxTime(100000);
    int phase = 0;
    while (it.time() < maxTime) {
        auto [jet, h] = it.step(Real(1) / 2);
        const PlanePoint& after = it.point();
        if (phase == 0) {
            if (after.y >= 1) break;
            if (after.y >= 0) phase = 1;
            continue;
        }
        bool up = after.y >= 1;
        bool down = after.y < 0;
        if (!up && !down) continue;
        res.steps = it.steps();
        if (down) {
            Real t = locate([&](const Real& u) { return jet.evalY(u); }, [&](const Real& u) { return jet.evalYPrime(u); }, h);
            res.section = "y=0, turning back";
            res.crossX = jet.evalX(t);
            res.crossY = 0;
            res.outcome = abs(res.crossX) < near ? Outcome::Undecided : Outcome::SpiralsIn;
        } else {
            Real t = locate([&](const Real& u) { return jet.evalY(u) - 1; }, [&](const Real& u) { return jet.evalYPrime(u); }, h);
            res.section = "y=1";
            res.crossX = jet.evalX(t);
            res.crossY = 1;
            res.outcome = Outcome::Escapes;
        }
        return res;
    }
    res.steps = it.steps();
    res.section = "none";
    res.outcome = Outcome::Undecided;
    return res;
}

int sideOfBStar(const ShootingResult& r, bool spiralsAbove) {
    if (r.outcome == Outcome::Undecided) return 0;
    return (r.outcome == Outcome::SpiralsIn) == spiralsAbove ? 1 : -1;
}

BStarEstimate bisectBStar(const Shooter& shoot, bool spiralsAbove, const Q& n, Real lo, Real hi, const Real& tol, unsigned digits) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (!(lo < hi)) throw std::invalid_argument("empty bracket");
    PrecisionScope scope(digits);
    BStarEstimate e;
    e.n = n;
    e.digits = digits;
    lo = local(lo);
    hi = local(hi);
    unsigned d = digits;
    while (hi - lo > 2 * tol) {
        Real mid = (lo + hi) / 2;
        ShootingResult r;
        for (int attempt = 0;; ++attempt) {
            TaylorSettings ts;
            ts.digits = d;
            r = shoot(n, mid, ts);
            ++e.shots;
            if (r.outcome != Outcome::Undecided) break;
            if (attempt == 4)
                throw std::runtime_error("shooting undecided at maximum precision on b in [" + toDecimal(lo, 20) +
                                         ", " + toDecimal(hi, 20) + "]");
            d *= 2;
        }
        if (sideOfBStar(r, spiralsAbove) > 0)
            hi = mid;
        else
            lo = mid;
    }
    e.lo = lo;
    e.hi = hi;
    e.b = (lo + hi) / 2;
    e.err = (hi - lo) / 2;
    e.digits = d;
    return e;
}

BStarEstimate bStarNumeric(const Q& n, const Real& tol, unsigned digits) {
    if (n <= 0) throw std::domain_error("n must be positive");
    PrecisionScope scope(digits);
    Real m2 = sqrt(toReal(n));
    Real lo = std::max(Real(-m2), Real(m2 - 1)), hi = m2;
    return bisectBStar(shootBT, false, n, lo, hi, tol, digits);
}

BStarEstimate bStarFamily1Numeric(const Q& n, const Real& tol, unsigned digits) {
    if (n <= 0) throw std::domain_error("n must be positive");
    PrecisionScope scope(digits);
    SimpleBounds sb = family1SimpleBounds(n);
    return bisectBStar(shootFamily1, true, n, toReal(sb.lower), toReal(sb.upper), tol, digits);
}

Real seriesValue(const std::vector<Q>& c, int k, const Q& n) {
    if (k < 1 || k >= static_cast<int>(c.size())) throw std::invalid_argument("series order out of range");
    Real s = sqrt(toReal(n)), pw(1), v(0);
    for (int j = 1; j <= k; ++j) {
        pw *= s;
        v += toReal(c[static_cast<size_t>(j)]) * pw;
    }
    return v;
}

std::vector<DeviationRow> seriesVsNumericReport(const std::vector<Q>& grid, const std::vector<Q>& c,
                                                const std::vector<int>& orders, const Real& tol, unsigned digits) {
    std::vector<DeviationRow> rows;
    for (const Q& n : grid) {
        if (n <= 0 || n > Q(1, 4)) throw std::invalid_argument("grid must lie in (0, 1/4]");
        BStarEstimate e = bStarNumeric(n, tol, digits);
        PrecisionScope scope(digits);
        for (int k : orders) {
            DeviationRow r;
            r.n = n;
            r.bStar = e.b;
            r.err = e.err;
            r.k = k;
            r.series = seriesValue(c, k, n);
            r.deviation = abs(r.series - e.b);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::string deviationCsv(const std::vector<DeviationRow>& rows, int digits) {
    std::ostringstream os;
    os << "n,b_star_num,err,series_k,deviation\n";
    for (auto& r : rows)
        os << r.n.get_str() << ',' << toDecimal(r.bStar, digits) << ',' << toDecimal(r.err, 3) << ',' << r.k << ','
           << toDecimal(r.deviation, 3) << '\n';
    return os.str();
}

std::vector<Q> logGrid(double lo, double hi, int count) {
    if (count < 1 || !(lo < hi)) throw std::invalid_argument("bad grid");
    std::vector<Q> g;
    for (int i = 0; i < count; ++i) {
        double e = lo + (hi - lo) * (i + 0.5) / count;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.5e", std::pow(10.0, e));
        // mantissa d.ddddd and exponent
        std::string t(buf);
        auto ep = t.find('e');
        std::string mant = t.substr(0, ep);
        int ex = std::stoi(t.substr(ep + 1));
        mant.erase(mant.find('.'), 1);
        Q v(mpz_class(mant), 1);
        ex -= 5;
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(ex)));
        if (ex < 0) v /= p10; else v *= p10;
        v.canonicalize();
        g.push_back(v);
    }
    return g;
}

}  // namespace hcb
