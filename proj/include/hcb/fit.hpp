// Contact conditions between a closed curve
//   C(x,y) = C2(x,y) + sum_{3 <= i+j <= k} c_ij x^i y^j
// and the two saddle separatrices y = Psi_+-(x).  Row t of a branch is the
// x^t coefficient of C(x, Psi(x)), linear in the unknown c_ij.
#pragma once

#include "hcb/bt.hpp"
#include "hcb/linalg.hpp"

#include <utility>
#include <vector>

namespace hcb {

// (i, j) for 3 <= i+j <= k, by degree, then descending i.
std::vector<std::pair<int, int>> closedUnknowns(int k);

// Quadratic part  c20 x^2 + c11 x y + c02 y^2.
template <class F>
struct Quadratic {
    F c20, c11, c02;
};

// Powers Psi^j, j = 0..maxPow, as coefficient vectors truncated at x^D.
template <class F>
std::vector<std::vector<F>> graphPowers(const std::vector<F>& a, int maxPow, int D) {
    std::vector<std::vector<F>> p;
    std::vector<F> one(static_cast<size_t>(D) + 1, F(0));
    one[0] = F(1);
    p.push_back(one);
    for (int j = 1; j <= maxPow; ++j) {
        std::vector<F> r(static_cast<size_t>(D) + 1, F(0));
        const auto& prev = p.back();
        for (int s = 0; s <= D; ++s) {
            if (isZero(prev[static_cast<size_t>(s)])) continue;
            for (int t = 1; s + t <= D && t < static_cast<int>(a.size()); ++t)
                r[static_cast<size_t>(s + t)] = r[static_cast<size_t>(s + t)] + prev[static_cast<size_t>(s)] * a[static_cast<size_t>(t)];
        }
        p.push_back(std::move(r));
    }
    return p;
}

// Rows x^3 .. x^(2+count) of C(x, Psi(x)) for one branch; the last column
// holds the contribution of the fixed quadratic part.
template <class F>
Matrix<F> branchRows(const std::vector<F>& a, const Quadratic<F>& c2, int k, int count) {
    int D = count + 2;
    auto P = graphPowers(a, k, D);
    auto unk = closedUnknowns(k);
    auto mono = [&](int i, int j, int t) { return t - i >= 0 ? P[static_cast<size_t>(j)][static_cast<size_t>(t - i)] : F(0); };
    Matrix<F> rows;
    for (int t = 3; t < 3 + count; ++t) {
        std::vector<F> row;
        row.reserve(unk.size() + 1);
        for (auto [i, j] : unk) row.push_back(mono(i, j, t));
        row.push_back(c2.c20 * mono(2, 0, t) + c2.c11 * mono(1, 1, t) + c2.c02 * mono(0, 2, t));
        rows.push_back(std::move(row));
    }
    return rows;
}

// A fitted closed curve at fixed rational parameters.
struct CurveCandidate {
    int k = 0;
    SaddleChart chart = SaddleChart::fromBM(Q(0), Q(1));
    int jPlus = 0, jMinus = 0;
    QBPoly C;
    // First flatness coefficient not forced to vanish on each branch.
    Q residualPlus, residualMinus;
    // D = C_x P + C_y Q, the derivative of C along the flow.
    QBPoly flowDerivative() const;
    std::string toRecord() const;
};

// Solve the contact system; throws on a singular system or irrational slopes.
CurveCandidate fitClosedCurve(int k, const SaddleChart& chart, int jPlus, int jMinus);

// Flatness series F(x) = C(x, Psi(x)) through x^order for the given branch.
std::vector<Q> flatness(const CurveCandidate& c, Branch br, int order);

}  // namespace hcb
