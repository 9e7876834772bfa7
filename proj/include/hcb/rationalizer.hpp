// Rational parameters with rational saddle eigenvalues.
//
// For n = 1/4 the eigenvalues are rational iff 4p^2 + 4pq + 17q^2 = t^2 with
// b = p/q; the solutions come from integer pairs (u, v) through
//   p = 4u^2 - 17v^2,  q = 4v(2u + v),  t = 2(4u^2 + 4uv + 17v^2),
// i.e. b = G(u/v) with G(w) = (4w^2 - 17)/(8w + 4).
#pragma once

#include "hcb/bigfloat.hpp"
#include "hcb/rational.hpp"

#include <string>

namespace hcb {

struct DioPoint {
    mpz_class u, v;
    mpz_class p, q, t;
    Q b;
    Q aPlus, aMinus;

    std::string toRecord() const;  // "(u,v) -> p/q"
};

DioPoint dioParam(const mpz_class& u, const mpz_class& v);

// G(w); throws on w = -1/2.
Q gMap(const Q& w);

// The closest point found while walking the continued fraction of the
// preimage of `target` under G (branch w > -1/2) until |b - target| < tol.
DioPoint approximateRationalB(const Real& target, const Real& tol);

// For sqrt(n) = s: b with (b + s)^2 + 8s a rational square, i.e. both
// eigenvalues rational, within tol of target.  With lambda = -2 a1-:
//   b = (8s/lambda - lambda)/2 - s,  a1+ = 4s/lambda,  a1- = -lambda/2.
struct RationalB {
    Q b, aPlus, aMinus;
};
RationalB generalizedRationality(const Q& s, const Real& target, const Real& tol, int budget = 200);

// True when (b + s)^2 + 8s is the square of a rational.
bool eigenvaluesRational(const Q& s, const Q& b);

}  // namespace hcb
