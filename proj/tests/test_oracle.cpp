#include "doctest.h"

#include "hcb/certifier.hpp"
#include "hcb/oracle.hpp"

#include <cmath>

using namespace hcb;

namespace {

Real r(const char* s) { return Real(s); }

Real hamiltonian(const PlanePoint& p) { return p.y * p.y / 2 + p.x * p.x / 2 - p.x * p.x * p.x / 3; }

Q qv(const char* s) {
    Q q(s);
    q.canonicalize();
    return q;
}

// 4-term bifurcation series of b*(n) in powers of sqrt(n).
const std::vector<Q> kFour = {0, Q(5, 7), Q(72, 2401), qv("-30024/45294865"), qv("-2352961656/11108339166925")};

}  // namespace

TEST_CASE("zero field is the identity map") {
    PrecisionScope ps(40);
    PlanePoint p{r("0.25"), r("-1.5")};
    Trajectory t = taylorIntegrate(QuadraticField::zero(), p, Real(3), {Real(1), Real(3)});
    REQUIRE(t.points.size() == 2);
    for (auto& q : t.points) {
        CHECK(q.x == p.x);
        CHECK(q.y == p.y);
    }
}

TEST_CASE("harmonic oscillator against cos and sin") {
    // [TRIVIAL] x' = y, y' = -x from (1, 0) gives (cos t, -sin t).
    PrecisionScope ps(40);
    QuadraticField f = QuadraticField::zero();
    f.p[2] = 1;
    f.q[1] = -1;
    TaylorSettings s;
    s.digits = 40;
    Trajectory t = taylorIntegrate(f, {Real(1), Real(0)}, Real(10), {Real(2), Real(10)}, s);
    for (size_t i = 0; i < 2; ++i) {
        Real tt = t.t[i];
        CHECK(abs(t.points[i].x - cos(tt)) < r("1e-30"));
        CHECK(abs(t.points[i].y + sin(tt)) < r("1e-30"));
    }
    // Backward in time as well.
    Trajectory b = taylorIntegrate(f, {Real(1), Real(0)}, Real(-3), {Real(-3)}, s);
    CHECK(abs(b.points[0].y - sin(Real(3))) < r("1e-30"));
}

TEST_CASE("energy is conserved for the Hamiltonian Perko field") {
    // mu1 = mu2 = 0: x' = y, y' = -x + x^2 keeps H = y^2/2 + x^2/2 - x^3/3.
    PrecisionScope ps(40);
    TaylorSettings s;
    s.digits = 40;
    s.tolDigits = 30;
    QuadraticField f = QuadraticField::perko(Real(0), Real(0));
    PlanePoint p0{r("0.5"), Real(0)};
    Real h0 = hamiltonian(p0);
    std::vector<Real> ts;
    for (int i = 1; i <= 8; ++i) ts.push_back(Real(i));  // about one period
    Trajectory t = taylorIntegrate(f, p0, Real(8), ts, s);
    for (auto& q : t.points) CHECK(abs(hamiltonian(q) - h0) < r("1e-29"));
}

TEST_CASE("step failure is reported") {
    // x' = x^2 blows up at t = 1 from x = 1.
    PrecisionScope ps(30);
    QuadraticField f = QuadraticField::zero();
    f.p[3] = 1;
    TaylorSettings s;
    s.digits = 30;
    s.maxSteps = 2000;
    CHECK_THROWS_WITH(taylorIntegrate(f, {Real(1), Real(0)}, Real(2), {Real(2)}, s),
                      doctest::Contains("stiffness/precision exhausted"));
}

TEST_CASE("b*(1/4) from shooting") {
    PrecisionScope ps(40);
    BStarEstimate e = bStarNumeric(Q(1, 4), r("1e-13"));
    // [PAPER] 0.3645452474215...
    CHECK(abs(e.b - r("0.3645452474215105")) < r("1e-12"));
    CHECK(e.lo > toReal(Q(951225059, 2609347034)));
    CHECK(e.hi < toReal(Q(258052528, 707875165)));
    // Halving the tolerance keeps the estimate inside the old bracket.
    BStarEstimate f = bStarNumeric(Q(1, 4), r("5e-14"));
    CHECK(f.lo >= e.lo - r("1e-30"));
    CHECK(f.hi <= e.hi + r("1e-30"));
}

TEST_CASE("outcome flips once along a b grid") {
    PrecisionScope ps(40);
    int flips = 0, last = 0;
    for (int i = 30; i <= 42; ++i) {
        ShootingResult s = shootBT(Q(1, 4), Real(i) / 100);
        int side = sideOfBStar(s, false);
        REQUIRE(side != 0);
        if (last != 0 && side != last) ++flips;
        last = side;
        if (i <= 36) CHECK(side == -1);
        if (i >= 37) CHECK(side == 1);
    }
    CHECK(flips == 1);
}

TEST_CASE("shooting agrees with the certified directions") {
    PrecisionScope ps(40);
    for (Q b : {Q(89, 368), Q(103, 228)}) {
        CertifyOutcome o = certifyLoopBound(Q(1, 4), b, 3);
        REQUIRE(o.certified());
        int want = o.certificate->direction == Direction::Lower ? -1 : 1;
        CHECK(sideOfBStar(shootBT(Q(1, 4), toReal(b)), false) == want);
    }
    for (Q alpha : {Q(1, 8), Q(-1, 8)}) {
        CertifyOutcome o = certifyGraphBound(Q(15), alpha, 4);
        REQUIRE(o.certified());
        int want = o.certificate->direction == Direction::Lower ? -1 : 1;
        CHECK(sideOfBStar(shootFamily1(Q(15), toReal(o.certificate->b)), true) == want);
    }
}

TEST_CASE("first family b*(15) lies inside the sandwich") {
    PrecisionScope ps(40);
    auto up = certifyGraphBound(Q(15), Q(1, 8), 4);
    auto lo = certifyGraphBound(Q(15), Q(-1, 8), 4);
    REQUIRE(up.certified());
    REQUIRE(lo.certified());
    BStarEstimate e = bStarFamily1Numeric(Q(15), r("1e-12"));
    CHECK(e.b > toReal(lo.certificate->b));
    CHECK(e.b < toReal(up.certificate->b));
    // A tighter run lands inside the coarser bracket.
    BStarEstimate f = bStarFamily1Numeric(Q(15), r("1e-14"));
    CHECK(f.b > e.lo);
    CHECK(f.b < e.hi);
    CHECK(f.err < r("1e-14"));
}

TEST_CASE("small n agrees with the four-term series") {
    PrecisionScope ps(40);
    Q n(1, 10000);
    BStarEstimate e = bStarNumeric(n, r("1e-14"));
    Real s = seriesValue(kFour, 4, n);
    CHECK(abs(e.b - s) < r("6e-10"));
    // The three-term truncation is visibly worse.
    CHECK(abs(e.b - seriesValue(kFour, 2, n)) > abs(e.b - s));
}

TEST_CASE("deviation report format") {
    PrecisionScope ps(40);
    auto rows = seriesVsNumericReport({Q(1, 100)}, kFour, {2, 4}, r("1e-12"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].bStar == rows[1].bStar);
    std::string csv = deviationCsv(rows);
    CHECK(csv.rfind("n,b_star_num,err,series_k,deviation\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    auto g = logGrid(-6, -2, 5);
    REQUIRE(g.size() == 5);
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK(g.front() > Q(1, 1000000));
    CHECK(g.back() < Q(1, 100));
}
