// The first family  x' = y,  y' = -x + b y + x y - n y^2.
//
// Graph curves x = p(y)/q(y) with q = (y - 1) * (monic) are fitted to the
// infinity separatrix x = n y + psi(1/y).  Coefficients live in a field F:
// Q for fixed parameters, QRat when n (or b) is kept symbolic.
#pragma once

#include "hcb/ratfunc.hpp"
#include "hcb/separatrix.hpp"
#include "hcb/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcb {

template <class F>
struct RationalGraphCurve {
    int du = 0, dv = 0;
    UPoly<F> p;       // numerator, leading term n y^du
    UPoly<F> q;       // (y - 1) * monic of degree dv - 1
    F mismatch;       // C_K: Psi - f = C_K / y^K + ...
    int K = 0;        // du + dv - 1
};

// Fit by matching the first du + dv - 1 coefficients at infinity.
template <class F>
RationalGraphCurve<F> fitRationalGraph(const F& n, const F& b, int du, int dv) {
    if (du != dv + 1 || dv < 2) throw std::invalid_argument("graph degrees must be (dv + 1, dv) with dv >= 2");
    if (isZero(n)) throw std::domain_error("n must be nonzero");
    int L = 2 * dv + 2;  // psi terms needed
    std::vector<F> psi = infinityCoefficients(n, b, L);
    // den * Psi, den = (y - 1)(v_0 + ... + v_{dv-2} y^{dv-2} + y^{dv-1}).
    // Coefficient of y^e in (y - 1) y^i Psi(y), Psi = n y + sum_k psi_k y^-k.
    auto psiAt = [&](int e) -> F {  // coefficient of y^e in Psi
        if (e == 1) return n;
        if (e <= 0 && -e <= L) return psi[static_cast<size_t>(-e)];
        return F(0);
    };
    auto shiftedCoeff = [&](int i, int e) -> F { return psiAt(e - i - 1) - psiAt(e - i); };  // (y-1) y^i Psi
    int nv = dv - 1;
    // Rows: y^-1 .. y^-(dv-1) of den * Psi vanish.
    Matrix<F> A(static_cast<size_t>(nv), std::vector<F>(static_cast<size_t>(nv), F(0)));
    std::vector<F> rhs(static_cast<size_t>(nv), F(0));
    for (int r = 0; r < nv; ++r) {
        int e = -(r + 1);
        for (int i = 0; i < nv; ++i) A[static_cast<size_t>(r)][static_cast<size_t>(i)] = shiftedCoeff(i, e);
        rhs[static_cast<size_t>(r)] = -shiftedCoeff(nv, e);
    }
    std::vector<F> v = gaussSolve(A, rhs);
    std::vector<F> vq = v;
    vq.push_back(F(1));
    auto denCoeffAt = [&](int e) -> F {  // coefficient of y^e in den * Psi
        F s(0);
        for (int i = 0; i <= nv; ++i) s += vq[static_cast<size_t>(i)] * shiftedCoeff(i, e);
        return s;
    };
    RationalGraphCurve<F> c;
    c.du = du;
    c.dv = dv;
    c.K = du + dv - 1;
    UPoly<F> monicPart{std::vector<F>(vq)};
    c.q = UPoly<F>(std::vector<F>{F(-1), F(1)}) * monicPart;
    std::vector<F> pc;
    for (int e = 0; e <= du; ++e) pc.push_back(denCoeffAt(e));
    c.p = UPoly<F>(std::move(pc));
    c.mismatch = denCoeffAt(-dv);
    return c;
}

// phi = q(y) x - p(y).  On x = p/q the flow gives  y' = flowY / q  with
// flowY = p (y - 1) + (b y - n y^2) q, so
//   dphi/dt = y q + (q' p - p' q) flowY / q^2 = num / q^2.
template <class F>
struct ContactFunction {
    UPoly<F> num, den;
};

template <class F>
ContactFunction<F> contactOnGraph(const UPoly<F>& p, const UPoly<F>& q, const F& n, const F& b) {
    UPoly<F> y = UPoly<F>::x();
    UPoly<F> ym1(std::vector<F>{F(-1), F(1)});
    UPoly<F> flowY = p * ym1 + (y.scaled(b) - (y * y).scaled(n)) * q;
    ContactFunction<F> m;
    m.num = y * q * q * q + (q.derivative() * p - p.derivative() * q) * flowY;
    m.den = q * q;
    return m;
}

// Strip the common powers of (y - 1) from numerator and denominator.
template <class F>
ContactFunction<F> reduceAtOne(ContactFunction<F> m) {
    UPoly<F> ym1(std::vector<F>{F(-1), F(1)});
    for (;;) {
        if (m.num.isZeroPoly()) return m;
        auto [a, ra] = divmod(m.num, ym1);
        auto [d, rd] = divmod(m.den, ym1);
        if (!ra.isZeroPoly() || !rd.isZeroPoly()) return m;
        m.num = a;
        m.den = d;
    }
}

// Elementary bounds from hyperbolas  a0 + a1 x + a2 y + x y - n y^2.
struct Hyperbola {
    Q a0, a1, a2, b;
    // x = p/q with q = y + a1, p = n y^2 - a2 y - a0.
    QPoly p(const Q& n) const { return QPoly(std::vector<Q>{-a0, -a2, n}); }
    QPoly q() const { return QPoly(std::vector<Q>{a1, Q(1)}); }
};

struct SimpleBounds {
    Q lower, upper;
    Hyperbola lowerCurve;
    std::optional<Hyperbola> upperCurve;  // absent when the Dulac bound b < n is used
};

SimpleBounds family1SimpleBounds(const Q& n);
// The hyperbola coefficients as rational functions of n.
struct SymbolicHyperbola {
    QRat a0, a1, a2, b;
};
SymbolicHyperbola hyperbolaUpper();
SymbolicHyperbola hyperbolaLower();
// (4n^2 - 1)/(16 n^3), the auxiliary lower bound.
Q auxiliaryLowerBound(const Q& n);

// Centre of the sandwich for graph degrees (dv+1, dv):
//   b = centre(n) + alpha / n^power.
struct GraphSandwich {
    int power;
    std::vector<Q> centre;  // coefficients of n^-1, n^-3, n^-5, ...
};
GraphSandwich graphSandwich(int dv);
Q sandwichB(const GraphSandwich& s, const Q& n, const Q& alpha);
QRat sandwichB(const GraphSandwich& s, const Q& alpha);  // in symbolic n

}  // namespace hcb
