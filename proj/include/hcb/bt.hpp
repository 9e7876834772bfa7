// The Bogdanov-Takens family  x' = y,  y' = -n + b y + x^2 + x y,  written
// at its saddle (x -> x - sqrt(n)) with m^2 = sqrt(n):
//   x' = y,  y' = 2 m^2 x + (b + m^2) y + x^2 + x y.
// The (B, M) chart has  B = (b + m^2)/2,  M^2 = B^2 + 2 m^2,  a1 = B +- M.
#pragma once

#include "hcb/bpoly.hpp"
#include "hcb/separatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hcb {

std::optional<Q> rationalSqrt(const Q& q);

class SaddleChart {
public:
    // From sqrt(n) = m2 and b.
    static SaddleChart fromSqrtN(const Q& m2, const Q& b);
    static SaddleChart fromBM(const Q& B, const Q& M);

    const Q& B() const { return B_; }
    const Q& M2() const { return M2_; }
    bool rationalM() const { return M_.has_value(); }
    const Q& M() const;
    Q m2() const { return (M2_ - B_ * B_) / 2; }
    Q b() const { return 2 * B_ - m2(); }
    Q n() const { return m2() * m2(); }
    bool isSaddle() const { return m2() > 0; }
    Q a1(Branch br) const { return br == Branch::Plus ? Q(B_ + M()) : Q(B_ - M()); }

    SaddleField<Q> field() const { return {2 * m2(), b() + m2(), Q(1), Q(1)}; }
    // C2 = -2 m^2 x^2 - (b + m^2) x y + y^2, the quadratic part every fitted curve shares.
    QBPoly quadraticPart() const;
    // Vector field components in the saddle chart.
    QBPoly P() const { return QBPoly::y(); }
    QBPoly Qf() const;

    friend bool operator==(const SaddleChart& a, const SaddleChart& b) { return a.B_ == b.B_ && a.M2_ == b.M2_; }

private:
    Q B_, M2_;
    std::optional<Q> M_;
};

struct SeparatrixExpansion {
    Branch branch;
    std::vector<Q> a;  // a[0] = 0, a[1] = eigen-slope, ..., a[K]
    int order() const { return static_cast<int>(a.size()) - 1; }
};

SeparatrixExpansion saddleSeriesBT(const SaddleChart& chart, Branch br, int K);

// Perko's form  x' = y,  y' = x (x - 1) + mu1 y + mu2 x y.
struct PerkoParams {
    Q mu1, mu2;
};
struct BTParams {
    Q n, b;
};
BTParams perkoToBT(const PerkoParams& p);
// Needs 4n to be a rational fourth power; the sign of mu2 is the extra datum.
PerkoParams btToPerko(const BTParams& p, int signMu2);

// Series conversions.  `Bcoef[j]` is the coefficient of M^j in B(M).
// Returns c[j] with  b = sum_j c[j] n^(j/2),  j = 1..terms.
std::vector<Q> bFromBSeries(const std::vector<Q>& Bcoef, int terms);
// h(mu2) = -mu2/2 + b*(mu2^4/4)/mu2 from the b(n^(1/2)) coefficients;
// h[j] is the coefficient of mu2^(2j-1).
std::vector<Q> perkoFromBSeries(const std::vector<Q>& c);

}  // namespace hcb
