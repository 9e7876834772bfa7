// Real roots of rational polynomials: Sturm counts, isolation, signs at
// algebraic points.
#pragma once

#include "hcb/upoly.hpp"

#include <optional>
#include <vector>

namespace hcb {

// Bound of the real line; nullopt is -inf on the left, +inf on the right.
using Bound = std::optional<Q>;

QPoly squarefreePart(const QPoly& p);

// p = odd * even^2, where odd collects the factors of odd multiplicity (and
// the constant).  The sign of p changes only at roots of odd.
std::pair<QPoly, QPoly> oddEvenSplit(const QPoly& p);

class SturmSequence {
public:
    explicit SturmSequence(const QPoly& p);  // square-free reduction applied
    int variations(const Q& x) const;
    int variationsAtInf(int side) const;  // side = -1 or +1
    // Distinct roots in (lo, hi].
    int count(const Bound& lo, const Bound& hi) const;
    const QPoly& base() const { return seq_.front(); }

private:
    std::vector<QPoly> seq_;
};

int sturmCount(const QPoly& p, const Bound& lo, const Bound& hi);

// Exactly one root of definingPoly lies in (lo, hi].
struct RootBox {
    QPoly definingPoly;
    Q lo, hi;

    Q width() const { return hi - lo; }
    Q mid() const { return (lo + hi) / 2; }
    void refine();                 // one bisection step
    void refineTo(const Q& width); // bisect until hi - lo < width
    double approx() const { return toDouble(mid()); }
};

Q cauchyBound(const QPoly& p);
std::vector<RootBox> isolateRoots(const QPoly& p);
std::vector<RootBox> isolateRoots(const QPoly& p, const Bound& lo, const Bound& hi);

// Exact sign of q at the root held by the box.
int signAtRoot(const QPoly& q, RootBox box);

// All rational roots, ascending.
std::vector<Q> rationalRoots(const QPoly& p);

// Integer primitive multiple of p (positive leading coefficient).
QPoly primitiveIntegerPart(const QPoly& p);

// Multiplicity of the root in box as a root of p (p(x) nonzero at no other
// point of the box is assumed after refinement).
int multiplicityAtRoot(const QPoly& p, const RootBox& box);

}  // namespace hcb
