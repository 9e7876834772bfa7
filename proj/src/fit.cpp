#include "hcb/fit.hpp"

#include <sstream>
#include <stdexcept>

namespace hcb {

std::vector<std::pair<int, int>> closedUnknowns(int k) {
    std::vector<std::pair<int, int>> u;
    for (int d = 3; d <= k; ++d)
        for (int i = d; i >= 0; --i) u.emplace_back(i, d - i);
    return u;
}

QBPoly CurveCandidate::flowDerivative() const { return C.dx() * chart.P() + C.dy() * chart.Qf(); }

std::string CurveCandidate::toRecord() const {
    std::ostringstream os;
    os << "kind closed\n"
       << "degree " << k << "\n"
       << "chart.B " << chart.B() << "\n"
       << "chart.M " << chart.M() << "\n"
       << "split " << jPlus << "," << jMinus << "\n"
       << "residual.plus " << residualPlus << "\n"
       << "residual.minus " << residualMinus << "\n"
       << "curve " << C.toString() << "\n";
    return os.str();
}

CurveCandidate fitClosedCurve(int k, const SaddleChart& chart, int jPlus, int jMinus) {
    if (k < 3) throw std::invalid_argument("closed curves start at degree 3");
    auto unk = closedUnknowns(k);
    if (jPlus < 0 || jMinus < 0 || jPlus + jMinus != static_cast<int>(unk.size()))
        throw std::invalid_argument("split must account for all " + std::to_string(unk.size()) + " coefficients");
    if (!chart.isSaddle()) throw std::domain_error("not a saddle");
    if (!chart.rationalM()) throw std::domain_error("eigenvalues are irrational; use rationalizer first");
    QBPoly c2 = chart.quadraticPart();
    Quadratic<Q> q{c2.coeff(2, 0), c2.coeff(1, 1), c2.coeff(0, 2)};
    int K = std::max(jPlus, jMinus) + 3;
    auto ap = saddleSeriesBT(chart, Branch::Plus, K).a;
    auto am = saddleSeriesBT(chart, Branch::Minus, K).a;
    Matrix<Q> rows = branchRows(ap, q, k, jPlus);
    for (auto& r : branchRows(am, q, k, jMinus)) rows.push_back(std::move(r));
    Matrix<Q> A;
    std::vector<Q> rhs;
    for (auto& r : rows) {
        rhs.push_back(-r.back());
        r.pop_back();
        A.push_back(std::move(r));
    }
    std::vector<Q> sol = gaussSolve(A, rhs);
    CurveCandidate c;
    c.k = k;
    c.chart = chart;
    c.jPlus = jPlus;
    c.jMinus = jMinus;
    c.C = c2;
    for (size_t u = 0; u < unk.size(); ++u) c.C.add(unk[u].first, unk[u].second, sol[u]);
    c.residualPlus = flatness(c, Branch::Plus, 3 + jPlus)[static_cast<size_t>(3 + jPlus)];
    c.residualMinus = flatness(c, Branch::Minus, 3 + jMinus)[static_cast<size_t>(3 + jMinus)];
    return c;
}

std::vector<Q> flatness(const CurveCandidate& c, Branch br, int order) {
    auto a = saddleSeriesBT(c.chart, br, std::max(order, 2)).a;
    auto P = graphPowers(a, c.C.degY(), order);
    std::vector<Q> F(static_cast<size_t>(order) + 1, Q(0));
    for (auto& [e, v] : c.C.terms())
        for (int t = e.first; t <= order; ++t) F[static_cast<size_t>(t)] += v * P[static_cast<size_t>(e.second)][static_cast<size_t>(t - e.first)];
    return F;
}

}  // namespace hcb
