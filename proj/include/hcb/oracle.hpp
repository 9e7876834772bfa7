// Numerical oracle: Taylor-series integration of planar quadratic fields in
// MPFR arithmetic, separatrix shooting and bisection for b*(n).
//
// Nothing here is rigorous.  It is the independent cross-check for the
// exact certificates and the bifurcation series.
#pragma once

#include "hcb/bigfloat.hpp"
#include "hcb/rational.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hcb {

// x' = P, y' = Q with coefficients of 1, x, y, x^2, x y, y^2.
struct QuadraticField {
    std::array<Real, 6> p, q;

    static QuadraticField zero();
    // X' = Y,  Y' = 2X + c Y + X^2 + m X Y: the saddle form of the
    // Bogdanov-Takens family in X = x/m^2, Y = y/m^3, tau = m t, where
    // m = n^(1/4) and c = (b + m^2)/m.
    static QuadraticField btScaled(const Real& m, const Real& c);
    static QuadraticField family1(const Real& n, const Real& b);
    static QuadraticField perko(const Real& mu1, const Real& mu2);
    QuadraticField reversed() const;

    Real evalP(const Real& x, const Real& y) const;
    Real evalQ(const Real& x, const Real& y) const;
};

struct PlanePoint {
    Real x, y;
};

struct TaylorSettings {
    unsigned digits = 40;
    int tolDigits = 0;      // local error 10^-tolDigits; 0 means digits - 4
    int order = 0;          // 0 picks the order from the tolerance
    long maxSteps = 200000;
};

// Taylor coefficients of the solution through `at`, degree `order`.
struct TaylorJet {
    std::vector<Real> x, y;
    PlanePoint eval(const Real& s) const;
    Real evalX(const Real& s) const;
    Real evalY(const Real& s) const;
    Real evalYPrime(const Real& s) const;
    Real evalXPrime(const Real& s) const;
};

TaylorJet taylorJet(const QuadraticField& f, const PlanePoint& at, int order);

// One adaptive integrator.  step() returns the jet used and advances.
class TaylorIntegrator {
public:
    TaylorIntegrator(QuadraticField f, PlanePoint start, const TaylorSettings& s);

    const PlanePoint& point() const { return pt_; }
    const Real& time() const { return t_; }
    long steps() const { return steps_; }
    int order() const { return order_; }
    // Advances by at most hmax (when given); returns the jet and the step.
    std::pair<TaylorJet, Real> step(const std::optional<Real>& hmax = std::nullopt);

private:
    QuadraticField f_;
    PlanePoint pt_;
    Real t_;
    long steps_ = 0;
    int order_;
    double logTol_;
    long maxSteps_;
};

struct Trajectory {
    std::vector<Real> t;
    std::vector<PlanePoint> points;
};

// Dense output at `outputTimes` (sorted, within [0, T], T may be negative
// for backward time).  Throws "stiffness/precision exhausted" when the step
// underflows.
Trajectory taylorIntegrate(const QuadraticField& f, const PlanePoint& start, const Real& T,
                           const std::vector<Real>& outputTimes, const TaylorSettings& s = {});

enum class Outcome { SpiralsIn, Escapes, Undecided };
std::string outcomeName(Outcome o);

struct ShootingResult {
    Q n;
    Real b;
    Outcome outcome = Outcome::Undecided;
    std::string section;  // which crossing decided the outcome
    Real crossX, crossY;  // point on that section, original coordinates
    long steps = 0;
    unsigned digits = 0;
};

// Bogdanov-Takens: shoot the unstable separatrix leaving the saddle into
// x < 0.  SpiralsIn (back inside the loop region) means b < b*; Escapes
// (across the stable separatrix) means b > b*.
ShootingResult shootBT(const Q& n, const Real& b, const TaylorSettings& s = {});
// First family: follow the x ~ n y separatrix backward from y = -inf.
// Escapes (crossing y = 1) means b < b*, SpiralsIn means b > b*.
ShootingResult shootFamily1(const Q& n, const Real& b, const TaylorSettings& s = {});

struct BStarEstimate {
    Q n;
    Real b;      // midpoint of the final bracket
    Real err;    // half-width of the final bracket
    Real lo, hi;
    int shots = 0;
    unsigned digits = 0;
};

using Shooter = std::function<ShootingResult(const Q&, const Real&, const TaylorSettings&)>;

// Bisection on [lo, hi].  `spiralsAbove` says whether SpiralsIn marks
// b > b* (first family) or b < b* (Bogdanov-Takens).
// Undecided doubles the precision (up to 4 doublings); if it persists the
// error names the ambiguous interval.
BStarEstimate bisectBStar(const Shooter& shoot, bool spiralsAbove, const Q& n, Real lo, Real hi, const Real& tol,
                          unsigned digits = 40);
// Which side of b* a shooting outcome puts b on: +1 above, -1 below, 0 undecided.
int sideOfBStar(const ShootingResult& r, bool spiralsAbove);

// BT family on the bracket max(-sqrt n, sqrt n - 1) < b* < sqrt n.
BStarEstimate bStarNumeric(const Q& n, const Real& tol, unsigned digits = 40);
// First family on the elementary bounds.
BStarEstimate bStarFamily1Numeric(const Q& n, const Real& tol, unsigned digits = 40);

// sum_{j <= k} c[j] n^(j/2), c[0] unused.
Real seriesValue(const std::vector<Q>& c, int k, const Q& n);

struct DeviationRow {
    Q n;
    Real bStar, err;
    int k = 0;
    Real series, deviation;
};

std::vector<DeviationRow> seriesVsNumericReport(const std::vector<Q>& grid, const std::vector<Q>& c,
                                                const std::vector<int>& orders, const Real& tol,
                                                unsigned digits = 40);
// CSV with columns n,b_star_num,err,series_k,deviation.
std::string deviationCsv(const std::vector<DeviationRow>& rows, int digits = 20);

// n values 10^e evenly spaced in e, strictly inside (10^lo, 10^hi), as exact rationals.
std::vector<Q> logGrid(double lo, double hi, int count);

}  // namespace hcb
