#include "hcb/family1.hpp"

namespace hcb {

namespace {
QRat nVar() { return QRat::var(); }
QRat cst(long a, long b = 1) { return QRat(makeQ(a, b)); }
}  // namespace

SymbolicHyperbola hyperbolaUpper() {
    QRat n = nVar(), n2 = n * n, n3 = n2 * n;
    return {(cst(1) + cst(4) * n2) / (cst(8) * n3), cst(-1), -(cst(1) + cst(8) * n2) / (cst(16) * n3),
            (cst(8) * n2 - cst(1)) / (cst(16) * n3)};
}

SymbolicHyperbola hyperbolaLower() {
    QRat n = nVar(), n2 = n * n;
    QRat u = cst(2) * n2 + cst(1), v = cst(8) * n2 + cst(1), w = cst(4) * n2 + cst(1);
    return {u * u * v * v / (cst(2) * n * w * w * w * w), -(u * v) / (w * w), -(u * v) / (cst(2) * n * w * w), n / w};
}

static Hyperbola at(const SymbolicHyperbola& h, const Q& n) { return {h.a0.eval(n), h.a1.eval(n), h.a2.eval(n), h.b.eval(n)}; }

SimpleBounds family1SimpleBounds(const Q& n) {
    if (n <= 0) throw std::domain_error("n must be positive");
    SimpleBounds s;
    s.lowerCurve = at(hyperbolaLower(), n);
    s.lower = s.lowerCurve.b;
    if (n <= Q(1, 2)) {
        s.upper = n;
    } else {
        s.upperCurve = at(hyperbolaUpper(), n);
        s.upper = s.upperCurve->b;
    }
    return s;
}

Q auxiliaryLowerBound(const Q& n) { return (4 * n * n - 1) / (16 * n * n * n); }

GraphSandwich graphSandwich(int dv) {
    switch (dv) {
        case 4: return {3, {Q(1, 4)}};
        case 5: return {5, {Q(1, 4), Q(-1, 64)}};
        case 7: return {7, {Q(1, 4), Q(-1, 64), Q(-5, 512)}};
        default: throw std::invalid_argument("graph degrees must be (5,4), (6,5) or (8,7)");
    }
}

Q sandwichB(const GraphSandwich& s, const Q& n, const Q& alpha) {
    Q b = 0;
    for (size_t i = 0; i < s.centre.size(); ++i) b += s.centre[i] / qpow(n, 2 * i + 1);
    return b + alpha / qpow(n, static_cast<unsigned long>(s.power));
}

QRat sandwichB(const GraphSandwich& s, const Q& alpha) {
    QRat n = nVar(), b;
    QRat np = n;
    for (size_t i = 0; i < s.centre.size(); ++i) {
        b += QRat(s.centre[i]) / np;
        np = np * n * n;
    }
    QRat nk(Q(1));
    for (int i = 0; i < s.power; ++i) nk *= n;
    return b + QRat(alpha) / nk;
}

}  // namespace hcb
