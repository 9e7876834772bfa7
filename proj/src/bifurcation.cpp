#include "hcb/bifurcation.hpp"
#include "hcb/roots.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace hcb {

namespace {

struct ScaledSystem {
    Matrix<QSeries> rows;  // each row: unknown columns then the constant column
};

ScaledSystem scaledRows(const std::vector<Q>& Bcoef, int k, int jPlus, int jMinus, long N) {
    std::vector<Q> sc;
    for (size_t j = 1; j < Bcoef.size(); ++j) sc.push_back(Bcoef[j]);
    QSeries s(sc, 0, QSeries::kInf);
    QSeries M = QSeries::monomial(Q(1), 1);
    QSeries one(1);
    SaddleField<QSeries> f{one - s * s, s + s, one, M};
    Quadratic<QSeries> c2{-(one - s * s), -(s + s), one};
    auto div = [N](const QSeries& a, const QSeries& b) { return divide(a, b, N).withPrec(N); };
    int K = std::max(jPlus, jMinus) + 3;
    ScaledSystem sys;
    if (jPlus > 0) {
        auto ap = saddleCoefficients(f, s + one, K, div);
        sys.rows = branchRows(ap, c2, k, jPlus);
    }
    if (jMinus > 0) {
        auto am = saddleCoefficients(f, s - one, K, div);
        for (auto& r : branchRows(am, c2, k, jMinus)) sys.rows.push_back(std::move(r));
    }
    return sys;
}

// Polynomial through (xs[i], ys[i]) by Newton divided differences.
QPoly interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys) {
    size_t n = xs.size();
    std::vector<Q> d = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            d[i] = (d[i] - d[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    QPoly p(d[n - 1]);
    for (size_t i = n - 1; i-- > 0;) p = p * QPoly(std::vector<Q>{-xs[i], Q(1)}) + QPoly(d[i]);
    return p;
}

}  // namespace

std::pair<int, int> defaultRelationSplit(int k) {
    int u = static_cast<int>(closedUnknowns(k).size()) + 1;
    // (5,5) for the quartic, (11,12) for the sextic; (12,11) gives the same
    // sextic series.
    return {u / 2, u - u / 2};
}

QSeries bifurcationDeterminant(const std::vector<Q>& Bcoef, int k, int jPlus, int jMinus, long N) {
    auto sys = scaledRows(Bcoef, k, jPlus, jMinus, N);
    size_t n = sys.rows.size();
    if (n == 0 || sys.rows[0].size() != n) throw std::invalid_argument("relation needs one more condition than unknowns");
    return seriesDet(sys.rows, N);
}

std::vector<QSeries> scaledFit(const std::vector<Q>& Bcoef, int k, int jPlus, int jMinus, long N) {
    auto sys = scaledRows(Bcoef, k, jPlus, jMinus, N);
    size_t n = sys.rows.size();
    if (n == 0 || sys.rows[0].size() != n + 1) throw std::invalid_argument("fit needs as many conditions as unknowns");
    Matrix<QSeries> A;
    std::vector<QSeries> rhs;
    for (auto& r : sys.rows) {
        rhs.push_back(-r.back());
        r.pop_back();
        A.push_back(std::move(r));
    }
    return seriesSolve(A, rhs, N);
}

BifSeriesResult solveBifurcationSeries(int k, int order) {
    auto [p, m] = defaultRelationSplit(k);
    return solveBifurcationSeries(k, order, p, m);
}

BifSeriesResult solveBifurcationSeries(int k, int order, int jPlus, int jMinus) {
    if (k < 3) throw std::invalid_argument("degree must be >= 3");
    if (order < 2) throw std::invalid_argument("order must be >= 2");
    BifSeriesResult res;
    res.k = k;
    res.jPlus = jPlus;
    res.jMinus = jMinus;
    std::vector<Q> B(3, Q(0));
    long N = 12;
    // Sample points for the unknown coefficient: 0, 1, -1, 2, -2, ...
    auto sample = [](size_t i) { return i == 0 ? Q(0) : (i % 2 ? Q(static_cast<long>((i + 1) / 2)) : Q(-static_cast<long>(i / 2))); };
    for (int J = 2; J <= order; ++J) {
        if (static_cast<int>(B.size()) <= J) B.resize(static_cast<size_t>(J) + 1, Q(0));
        for (int attempt = 0;; ++attempt) {
            if (attempt > 8) throw std::runtime_error("bifurcation series: precision exhausted at order M^" + std::to_string(J));
            std::vector<Q> ts;
            std::vector<QSeries> phis;
            auto eval = [&](size_t i) {
                std::vector<Q> trial = B;
                trial[static_cast<size_t>(J)] = sample(i);
                ts.push_back(sample(i));
                phis.push_back(bifurcationDeterminant(trial, k, jPlus, jMinus, N));
            };
            for (size_t i = 0; i < 5; ++i) eval(i);
            QPoly poly;
            long lowest = 0;
            bool lost = false;
            for (;;) {
                lowest = QSeries::kInf;
                long minPrec = QSeries::kInf;
                for (auto& ph : phis) {
                    lowest = std::min(lowest, ph.val());
                    minPrec = std::min(minPrec, ph.prec());
                }
                if (lowest >= minPrec) { lost = true; break; }
                std::vector<Q> ys;
                for (auto& ph : phis) ys.push_back(ph.coeff(lowest));
                // The last two samples must lie on the interpolant of the rest.
                std::vector<Q> xs(ts.begin(), ts.end() - 2), yv(ys.begin(), ys.end() - 2);
                poly = interpolate(xs, yv);
                if (poly(ts[ts.size() - 2]) == ys[ys.size() - 2] && poly(ts.back()) == ys.back()) break;
                if (ts.size() > 40) throw std::runtime_error("bifurcation series: relation too nonlinear at order M^" + std::to_string(J));
                eval(ts.size());
            }
            if (lost) {
                N += 8;
                continue;
            }
            if (poly.degree() <= 0) throw std::runtime_error("bifurcation series: no solution at order M^" + std::to_string(J));
            auto roots = rationalRoots(poly);
            std::vector<Q> cand;
            for (auto& r : roots)
                if (J > 2 || !isZero(r)) cand.push_back(r);
            if (cand.empty()) throw std::runtime_error("bifurcation series: no rational solution at order M^" + std::to_string(J));
            if (cand.size() > 1) {
                // Several roots of the leading coefficient: keep the one that
                // makes the relation vanish to the highest order.
                std::vector<long> vals;
                for (auto& c : cand) {
                    std::vector<Q> trial = B;
                    trial[static_cast<size_t>(J)] = c;
                    vals.push_back(bifurcationDeterminant(trial, k, jPlus, jMinus, N + 8).val());
                }
                size_t best = 0;
                for (size_t i = 1; i < cand.size(); ++i)
                    if (vals[i] > vals[best]) best = i;
                for (size_t i = 0; i < cand.size(); ++i)
                    if (i != best && vals[i] == vals[best])
                        throw std::runtime_error("bifurcation series: ambiguous branch at order M^" + std::to_string(J));
                cand = {cand[best]};
            }
            B[static_cast<size_t>(J)] = cand[0];
            res.precisionUsed = N;
            break;
        }
    }
    B.resize(static_cast<size_t>(order) + 1, Q(0));
    res.B = B;
    int terms = order / 2;
    if (terms >= 1) res.b = bFromBSeries(B, terms);
    return res;
}

}  // namespace hcb
