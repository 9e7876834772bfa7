// From fitted curves to proved one-sided bounds on the bifurcation value.
//
// Graph curves (first family): the contact function M = dphi/dt on
// phi = q x - p = 0, written in z = 1 - y, must keep one sign on z > 0.
// Closed curves (Bogdanov-Takens): the curve must contain a loop through the
// saddle that the flow crosses in one direction only.
#pragma once

#include "hcb/bt.hpp"
#include "hcb/certificate.hpp"
#include "hcb/family1.hpp"
#include "hcb/fit.hpp"
#include "hcb/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hcb {

struct ContactReport {
    bool certified = false;
    int sign = 0;           // sign of M on z > 0, with phi oriented so phi(0,0) > 0
    std::string reason;     // why the sign could not be certified
    QPoly numZ, denZ;       // M = numZ / denZ in z = 1 - y
    int orientation = 1;    // -1 when q x - p was negated to make phi(0,0) > 0
    std::optional<RootBox> offending;
    std::vector<Fact> facts;
};

ContactReport contactReport(const QPoly& p, const QPoly& q, const Q& n, const Q& b);

// A certificate or the reason none was issued (the Indeterminate outcome).
struct CertifyOutcome {
    std::optional<BoundCertificate> certificate;
    std::string reason;
    bool certified() const { return certificate.has_value(); }
};

// b = centre(n) + alpha / n^power with graph degrees (dv + 1, dv).
CertifyOutcome certifyGraphBound(const Q& n, const Q& alpha, int dv);
// The hyperbola bounds; `upper` needs n > 1/2.
CertifyOutcome certifyHyperbolaBound(const Q& n, bool upper);

struct LoopReport {
    bool loop = false;
    std::string failure;        // first check that failed
    RootBox x0;                 // leftmost point of the loop
    RootBox x1;                 // crossing with the negative x-axis
    std::vector<std::pair<Q, int>> strata;  // x sample -> number of real roots in y
    Q xmin;                     // left end of the strip examined
    std::vector<Fact> facts;
};

LoopReport verifyLoop(const CurveCandidate& c);

struct FlowReport {
    std::optional<Crossing> crossing;
    std::string failure;
    std::vector<Fact> facts;
};

// Needs a successful loop report for the same curve.
FlowReport flowDirection(const CurveCandidate& c, const LoopReport& loop);

// n with rational sqrt and b with rational eigenvalues; fits with all
// conditions on the plus branch (k = 3) or the (4,5) split (k = 4).
CertifyOutcome certifyLoopBound(const Q& n, const Q& b, int k);
CertifyOutcome certifyLoopBound(const CurveCandidate& c);

// Replays every fact and rebuilds the evidence from the stored curve.
// Returns the first failure, or nullopt when the certificate stands.
std::optional<std::string> verifyCertificate(const BoundCertificate& c);

// Limit analysis of the quartic relation with B = beta(M) + alpha M^9.
struct QuarticLimit {
    std::vector<QPoly> P;        // P[i](alpha), i = 0..5 (only P[0] unless all were asked for)
    int xPower = 0;              // R(x) = x^xPower (sum P_i x^i) at leading order
    QPoly P0cubic;               // P0 / alpha^2
    std::vector<RootBox> P0negRoots;
    int signAtMinus = 0, signAtPlus = 0;  // sign P0(-1/2500), P0(1/2500)
    std::vector<Q> x1Series;     // x1(alpha=0, M) coefficients, unscaled
    Q x1Alpha;                   // alpha coefficient of x1
    int x1AlphaPower = 0;
    Q dLeadAlpha;                // D4(x1, 0) = dLeadAlpha * alpha * M^dLeadPower + ...
    int dLeadPower = 0;
    Q dNextAlpha, dNextConst;    // next order: (dNextAlpha alpha + dNextConst) M^(dLeadPower+1)
};

// By default only P0 is computed; allCoefficients adds P1..P5 (slow).
QuarticLimit resultantLimitAnalysis(long precision = 32, bool allCoefficients = false);

struct IdentityReport {
    bool invariantLine = false;  // L = x + y invariant at b = sqrt(n) - 1 with cofactor 2 sqrt(n) + x
    bool dulac = false;          // divergence identity for the first family
    std::string detail;
};

IdentityReport symbolicIdentityChecks();

}  // namespace hcb
