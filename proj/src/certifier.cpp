#include "hcb/certifier.hpp"
#include "hcb/bifurcation.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace hcb {

namespace {

std::string bnd(const Bound& b, bool left) {
    if (b) return toText(*b);
    return left ? "-inf" : "inf";
}

Fact sturmFact(const QPoly& p, const Bound& lo, const Bound& hi, const std::string& note) {
    Fact f{"sturm", {p.toString(), bnd(lo, true), bnd(hi, false)}, "", note};
    f.result = evaluateFact(f);
    return f;
}

Fact signFact(const QPoly& p, const Q& at, const std::string& note) {
    Fact f{"sign", {p.toString(), toText(at)}, "", note};
    f.result = evaluateFact(f);
    return f;
}

Fact rootSignFact(const RootBox& box, const QPoly& q, const std::string& note) {
    Fact f{"rootsign", {box.definingPoly.toString(), toText(box.lo), toText(box.hi), q.toString()}, "", note};
    f.result = evaluateFact(f);
    return f;
}

Fact factorFact(const QPoly& p, const QPoly& odd, const QPoly& even, const std::string& note) {
    Fact f{"factor", {p.toString(), odd.toString(), even.toString()}, "", note};
    f.result = evaluateFact(f);
    return f;
}

int asInt(const Fact& f) { return std::stoi(f.result); }

QPoly stripX(const QPoly& p, int* v = nullptr) {
    int k = 0;
    while (k <= p.degree() && isZero(p.coeff(k))) ++k;
    if (v) *v = k;
    std::vector<Q> c(p.coeffs().begin() + k, p.coeffs().end());
    return QPoly(std::move(c));
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph curves

ContactReport contactReport(const QPoly& p, const QPoly& q, const Q& n, const Q& b) {
    ContactReport r;
    Q phi0 = -p(Q(0));
    if (isZero(phi0)) {
        r.reason = "curve passes through the origin";
        return r;
    }
    r.orientation = sgn(phi0);
    auto m = reduceAtOne(contactOnGraph(p, q, n, b));
    if (m.num.isZeroPoly()) {
        r.reason = "contact function vanishes identically";
        return r;
    }
    QPoly sub(std::vector<Q>{Q(1), Q(-1)});  // y = 1 - z
    r.numZ = m.num.compose(sub);
    r.denZ = m.den.compose(sub);
    while (isZero(r.numZ(Q(0))) && isZero(r.denZ(Q(0)))) {
        r.numZ = divmod(r.numZ, QPoly::x()).first;
        r.denZ = divmod(r.denZ, QPoly::x()).first;
    }
    auto den = sturmFact(r.denZ, Q(0), std::nullopt, "denominator of M in z has no root on z > 0");
    r.facts.push_back(den);
    if (asInt(den) != 0) {
        auto boxes = isolateRoots(r.denZ, Q(0), std::nullopt);
        r.offending = boxes.front();
        r.reason = "denominator vanishes on the region";
        return r;
    }
    auto [odd, even] = oddEvenSplit(r.numZ);
    r.facts.push_back(factorFact(r.numZ, odd, even, "numerator = odd * even^2"));
    auto num = sturmFact(odd, Q(0), std::nullopt, "odd-multiplicity part of the numerator has no root on z > 0");
    r.facts.push_back(num);
    if (asInt(num) != 0) {
        r.offending = isolateRoots(odd, Q(0), std::nullopt).front();
        r.reason = "contact function changes sign on the region";
        return r;
    }
    Q z0(1);
    for (int i = 1; isZero(r.numZ(z0)) || isZero(r.denZ(z0)); ++i) z0 = Q(i + 1);
    auto sn = signFact(r.numZ, z0, "numerator sign at the sample point");
    auto sd = signFact(r.denZ, z0, "denominator sign at the sample point");
    r.facts.push_back(sn);
    r.facts.push_back(sd);
    r.facts.push_back(signFact(QPoly(-p(Q(0))), Q(0), "phi(0,0) fixes the orientation"));
    r.sign = asInt(sn) * asInt(sd) * r.orientation;
    r.certified = r.sign != 0;
    if (!r.certified) r.reason = "sample sign is zero";
    return r;
}

namespace {

BoundCertificate contactCertificate(const Q& n, const Q& b, const QPoly& p, const QPoly& q, const ContactReport& r) {
    BoundCertificate c;
    c.family = "family1";
    c.n = n;
    c.b = b;
    c.direction = *directionFromContact(r.sign);
    c.evidence = Evidence::Contact;
    c.data["curve.p"] = p.toString("y");
    c.data["curve.q"] = q.toString("y");
    c.facts = r.facts;
    return c;
}

}  // namespace

CertifyOutcome certifyGraphBound(const Q& n, const Q& alpha, int dv) {
    CertifyOutcome out;
    if (n <= 0) {
        out.reason = "n must be positive";
        return out;
    }
    auto s = graphSandwich(dv);
    Q b = sandwichB(s, n, alpha);
    RationalGraphCurve<Q> g;
    try {
        g = fitRationalGraph<Q>(n, b, dv + 1, dv);
    } catch (const std::exception& e) {
        out.reason = e.what();
        return out;
    }
    auto r = contactReport(g.p, g.q, n, b);
    if (!r.certified) {
        out.reason = r.reason;
        return out;
    }
    auto c = contactCertificate(n, b, g.p, g.q, r);
    c.data["fit"] = "graph " + std::to_string(dv + 1) + "," + std::to_string(dv);
    c.data["alpha"] = toText(alpha);
    out.certificate = c;
    return out;
}

CertifyOutcome certifyHyperbolaBound(const Q& n, bool upper) {
    CertifyOutcome out;
    if (n <= 0 || (upper && n <= Q(1, 2))) {
        out.reason = upper ? "the hyperbola upper bound needs n > 1/2" : "n must be positive";
        return out;
    }
    auto bounds = family1SimpleBounds(n);
    Hyperbola h = upper ? *bounds.upperCurve : bounds.lowerCurve;
    auto r = contactReport(h.p(n), h.q(), n, h.b);
    if (!r.certified) {
        out.reason = r.reason;
        return out;
    }
    auto c = contactCertificate(n, h.b, h.p(n), h.q(), r);
    c.data["fit"] = upper ? "hyperbola upper" : "hyperbola lower";
    out.certificate = c;
    return out;
}

// ---------------------------------------------------------------------------
// Closed curves

namespace {

using PolyInY = UPoly<QPoly>;

// First principal subresultant coefficient of a and b (polynomials in y with
// coefficients in x): the determinant of the Sylvester submatrix for j = 1.
QPoly psc1(const PolyInY& a, const PolyInY& b) {
    int m = a.degree(), n = b.degree();
    int size = m + n - 2;
    if (size <= 0) return QPoly(Q(1));
    Matrix<QPoly> s(static_cast<size_t>(size), std::vector<QPoly>(static_cast<size_t>(size)));
    // Column c holds the coefficient of y^(m + n - 2 - c).
    auto fill = [&](int row, const PolyInY& p, int shift) {
        for (int c = 0; c < size; ++c) {
            int deg = m + n - 2 - c - shift;
            s[static_cast<size_t>(row)][static_cast<size_t>(c)] = deg >= 0 ? p.coeff(deg) : QPoly();
        }
    };
    int row = 0;
    for (int i = n - 2; i >= 0; --i) fill(row++, a, i);
    for (int i = m - 2; i >= 0; --i) fill(row++, b, i);
    return bareissDet(s);
}

QPoly leadInY(const QBPoly& c) { return c.asPolyInY().lc(); }

}  // namespace

LoopReport verifyLoop(const CurveCandidate& c) {
    LoopReport r;
    const QBPoly& C = c.C;
    int k = C.totalDegree();
    QBPoly Cx = C.dx(), Cy = C.dy();
    r.xmin = -4 * c.chart.m2();
    auto fail = [&](const std::string& why) {
        r.failure = why;
        return r;
    };

    // Only multiple point: the origin.
    QPoly g = gcd(gcd(resultantWrt(C, Cy, Var::Y), resultantWrt(C, Cx, Var::Y)), resultantWrt(Cx, Cy, Var::Y));
    QPoly gs = stripX(g);
    auto fs = sturmFact(gs, std::nullopt, std::nullopt, "no singular point off the line x = 0");
    r.facts.push_back(fs);
    if (asInt(fs) != 0) return fail("singular point away from x = 0");
    QPoly on0 = gcd(gcd(C.atX(Q(0)), Cx.atX(Q(0))), Cy.atX(Q(0)));
    QPoly on0s = stripX(on0);
    auto f0 = sturmFact(on0s, std::nullopt, std::nullopt, "no singular point on x = 0 except the origin");
    r.facts.push_back(f0);
    if (asInt(f0) != 0) return fail("singular point on x = 0 other than the origin");

    // C(0, y) = y^2 h(y).
    int v = 0;
    QPoly h = stripX(C.atX(Q(0)), &v);
    if (v != 2) return fail("origin is not a double point of C(0, y)");
    r.facts.push_back(signFact(h, Q(0), "h(0) != 0"));
    auto hr = sturmFact(h, std::nullopt, std::nullopt, "real roots of h in C(0,y) = y^2 h(y)");
    r.facts.push_back(hr);
    if (squarefreePart(h).degree() != h.degree()) return fail("C(0, y) has a repeated nonzero root");
    if (asInt(hr) != k - 2) return fail("C(0, y) does not have the expected nonzero roots");

    // Leading coefficient in y never vanishes on the strip.
    QPoly lc = leadInY(C);
    auto lcf = sturmFact(lc, r.xmin, Q(0), "leading coefficient in y is root-free on the strip");
    r.facts.push_back(lcf);
    r.facts.push_back(signFact(lc, r.xmin, "leading coefficient at the left end"));
    if (asInt(lcf) != 0 || isZero(lc(r.xmin))) return fail("leading coefficient in y vanishes on the strip");

    // x0: the unique fold of the curve over the strip.
    QPoly R = stripX(resultantWrt(C, Cy, Var::Y));
    auto rf = sturmFact(R, r.xmin, Q(0), "one fold of the curve on the strip");
    r.facts.push_back(rf);
    r.facts.push_back(signFact(R, r.xmin, "fold polynomial at the left end"));
    if (asInt(rf) != 1 || isZero(R(r.xmin))) return fail("fold point x0 not unique on the strip");
    r.x0 = isolateRoots(R, r.xmin, Q(0)).front();
    r.x0.refineTo(Q(1, 1000000));
    r.facts.push_back(rootSignFact(r.x0, psc1(C.asPolyInY(), Cy.asPolyInY()), "only one double root in y at x0"));
    if (r.facts.back().result == "0") return fail("more than one double root at x0");

    // Root counts on the strata.
    auto stratum = [&](const Q& x, int expect, const std::string& where) {
        auto f = sturmFact(C.atX(x), std::nullopt, std::nullopt, "real roots in y " + where);
        r.facts.push_back(f);
        r.strata.emplace_back(x, asInt(f));
        return asInt(f) == expect;
    };
    if (!stratum(r.xmin, k - 2, "at the left end")) return fail("wrong root count at the left end");
    if (!stratum((r.xmin + r.x0.lo) / 2, k - 2, "left of x0")) return fail("wrong root count left of x0");
    if (!stratum((r.x0.hi) / 2, k, "right of x0")) return fail("wrong root count right of x0");
    Q focus = -2 * c.chart.m2();
    if (focus > r.x0.hi && focus < 0 && !stratum(focus, k, "at the focus")) return fail("wrong root count at the focus");

    // x1: where the loop meets the negative x-axis.
    QPoly f = stripX(C.atY(Q(0)), &v);
    if (v != 2) return fail("C(x, 0) does not vanish to order two at the origin");
    auto x1f = sturmFact(f, r.x0.hi, Q(0), "one crossing of the negative x-axis right of x0");
    r.facts.push_back(x1f);
    if (asInt(x1f) != 1) return fail("loop does not cross the x-axis exactly once");
    r.x1 = isolateRoots(f, r.x0.hi, Q(0)).front();
    r.x1.refineTo(Q(1, 1000000));
    r.loop = true;
    return r;
}

FlowReport flowDirection(const CurveCandidate& c, const LoopReport& loop) {
    FlowReport fr;
    if (!loop.loop) {
        fr.failure = "no loop";
        return fr;
    }
    QBPoly D = c.flowDerivative();
    QPoly RD = stripX(resultantWrt(c.C, D, Var::Y));
    auto t = sturmFact(RD, loop.xmin, Q(0), "curve and contact locus meet only at the origin on the strip");
    fr.facts.push_back(t);
    fr.facts.push_back(signFact(RD, loop.xmin, "contact resultant at the left end"));
    if (asInt(t) != 0 || isZero(RD(loop.xmin))) {
        fr.failure = "flow is tangent to the curve on the strip";
        return fr;
    }
    QPoly f = stripX(c.C.atY(Q(0)));
    Q inside = loop.x1.hi / 2;
    auto si = signFact(f, inside, "sign of C inside the loop on the x-axis");
    auto sd = rootSignFact(loop.x1, D.atY(Q(0)), "sign of dC/dt where the loop crosses the x-axis");
    fr.facts.push_back(si);
    fr.facts.push_back(sd);
    int s1 = asInt(si), s2 = std::stoi(sd.result);
    if (s1 == 0 || s2 == 0) {
        fr.failure = "degenerate crossing";
        return fr;
    }
    fr.crossing = s1 == s2 ? Crossing::Inward : Crossing::Outward;
    return fr;
}

namespace {

std::pair<int, int> loopSplit(int k) {
    if (k == 3) return {4, 0};
    if (k == 4) return {4, 5};
    int u = static_cast<int>(closedUnknowns(k).size());
    return {u / 2, u - u / 2};
}

}  // namespace

CertifyOutcome certifyLoopBound(const CurveCandidate& cand) {
    CertifyOutcome out;
    auto loop = verifyLoop(cand);
    if (!loop.loop) {
        out.reason = "loop absent: " + loop.failure;
        return out;
    }
    auto flow = flowDirection(cand, loop);
    if (!flow.crossing) {
        out.reason = "not transversal: " + flow.failure;
        return out;
    }
    BoundCertificate c;
    c.family = "bt";
    c.n = cand.chart.n();
    c.b = cand.chart.b();
    c.direction = directionFromCrossing(*flow.crossing);
    c.evidence = Evidence::Loop;
    c.data["curve"] = cand.C.toString();
    c.data["fit"] = "closed " + std::to_string(cand.k) + " " + std::to_string(cand.jPlus) + "," + std::to_string(cand.jMinus);
    c.data["crossing"] = toText(*flow.crossing);
    c.facts = loop.facts;
    c.facts.insert(c.facts.end(), flow.facts.begin(), flow.facts.end());
    out.certificate = c;
    return out;
}

CertifyOutcome certifyLoopBound(const Q& n, const Q& b, int k) {
    CertifyOutcome out;
    auto m2 = rationalSqrt(n);
    if (n <= 0 || !m2) {
        out.reason = "sqrt(n) is not rational";
        return out;
    }
    auto chart = SaddleChart::fromSqrtN(*m2, b);
    if (!chart.rationalM()) {
        out.reason = "eigenvalues are irrational; use rationalizer first";
        return out;
    }
    auto [jp, jm] = loopSplit(k);
    try {
        return certifyLoopBound(fitClosedCurve(k, chart, jp, jm));
    } catch (const std::exception& e) {
        out.reason = e.what();
        return out;
    }
}

// ---------------------------------------------------------------------------
// Replay

std::optional<std::string> verifyCertificate(const BoundCertificate& c) {
    for (size_t i = 0; i < c.facts.size(); ++i) {
        const Fact& f = c.facts[i];
        std::string got;
        try {
            got = evaluateFact(f);
        } catch (const std::exception& e) {
            got = std::string("error: ") + e.what();
        }
        if (got != f.result) {
            std::ostringstream os;
            os << "fact " << i + 1 << " (" << f.kind << (f.note.empty() ? "" : ": " + f.note) << ") records " << f.result << " but replays to " << got;
            return os.str();
        }
    }
    if (!c.storedDigest.empty() && c.storedDigest != c.digest()) return "digest mismatch";
    auto get = [&](const std::string& k) -> std::string {
        auto it = c.data.find(k);
        if (it == c.data.end()) throw std::invalid_argument("missing data '" + k + "'");
        return it->second;
    };
    try {
        std::vector<Fact> facts;
        std::optional<Direction> dir;
        std::string fit = get("fit");
        if (c.family == "family1") {
            if (c.evidence != Evidence::Contact) return "family1 certificates carry contact evidence";
            QPoly p = parseQPoly(get("curve.p"), "y"), q = parseQPoly(get("curve.q"), "y");
            if (fit.rfind("graph ", 0) == 0) {
                int dv = std::stoi(fit.substr(fit.find(',') + 1));
                Q alpha = parseQ(get("alpha"));
                Q b = sandwichB(graphSandwich(dv), c.n, alpha);
                if (b != c.b) return "b does not match the sandwich centre and alpha";
                auto g = fitRationalGraph<Q>(c.n, b, dv + 1, dv);
                if (g.p != p || g.q != q) return "stored curve is not the fitted graph";
            } else if (fit == "hyperbola upper" || fit == "hyperbola lower") {
                auto sb = family1SimpleBounds(c.n);
                Hyperbola h = fit == "hyperbola upper" ? sb.upperCurve.value() : sb.lowerCurve;
                if (h.b != c.b || h.p(c.n) != p || h.q() != q) return "stored curve is not the hyperbola";
            } else {
                return "unknown fit '" + fit + "'";
            }
            auto r = contactReport(p, q, c.n, c.b);
            if (!r.certified) return "contact evidence does not hold: " + r.reason;
            facts = r.facts;
            dir = directionFromContact(r.sign);
        } else if (c.family == "bt") {
            if (c.evidence != Evidence::Loop) return "bt certificates carry loop evidence";
            std::istringstream is(fit);
            std::string kind, split;
            int k = 0;
            is >> kind >> k >> split;
            int jp = std::stoi(split.substr(0, split.find(','))), jm = std::stoi(split.substr(split.find(',') + 1));
            auto m2 = rationalSqrt(c.n);
            if (!m2) return "sqrt(n) is not rational";
            auto cand = fitClosedCurve(k, SaddleChart::fromSqrtN(*m2, c.b), jp, jm);
            if (cand.C != parseQBPoly(get("curve"))) return "stored curve is not the fitted curve";
            auto loop = verifyLoop(cand);
            if (!loop.loop) return "loop evidence does not hold: " + loop.failure;
            auto flow = flowDirection(cand, loop);
            if (!flow.crossing) return "flow evidence does not hold: " + flow.failure;
            facts = loop.facts;
            facts.insert(facts.end(), flow.facts.begin(), flow.facts.end());
            dir = directionFromCrossing(*flow.crossing);
        } else {
            return "unknown family '" + c.family + "'";
        }
        if (facts.size() != c.facts.size()) return "fact list differs from the rebuilt evidence";
        for (size_t i = 0; i < facts.size(); ++i)
            if (!(facts[i] == c.facts[i])) return "fact " + std::to_string(i + 1) + " differs from the rebuilt evidence";
        if (!dir || *dir != c.direction) return "direction does not follow from the evidence";
    } catch (const std::exception& e) {
        return std::string("rebuild failed: ") + e.what();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quartic limit analysis

namespace {

QPoly interpolateQ(const std::vector<Q>& xs, const std::vector<Q>& ys) {
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

struct ScaledQuartic {
    QSeries s;                       // B / M
    std::map<std::pair<int, int>, QSeries> C;  // scaled coefficients incl. the quadratic part
};

ScaledQuartic scaledQuartic(const std::vector<Q>& Bcoef, long N) {
    auto sol = scaledFit(Bcoef, 4, 4, 5, N);
    auto unk = closedUnknowns(4);
    ScaledQuartic q;
    std::vector<Q> sc(Bcoef.begin() + 1, Bcoef.end());
    q.s = QSeries(sc, 0, QSeries::kInf);
    QSeries one(1);
    q.C[{2, 0}] = -(one - q.s * q.s);
    q.C[{1, 1}] = -(q.s + q.s);
    q.C[{0, 2}] = one;
    for (size_t i = 0; i < unk.size(); ++i) q.C[unk[i]] = sol[i];
    return q;
}

// Coefficients in Y at a fixed rational X.
std::vector<QSeries> inY(const std::map<std::pair<int, int>, QSeries>& C, const Q& X) {
    std::vector<QSeries> r(6);
    for (auto& [e, v] : C) r[static_cast<size_t>(e.second)] = r[static_cast<size_t>(e.second)] + v.scaled(qpow(X, static_cast<unsigned long>(e.first)));
    return r;
}

QSeries sylvesterRes(std::vector<QSeries> a, std::vector<QSeries> b, long N) {
    auto deg = [](const std::vector<QSeries>& p) {
        int d = static_cast<int>(p.size()) - 1;
        while (d >= 0 && p[static_cast<size_t>(d)].exact() && p[static_cast<size_t>(d)].knownZero()) --d;
        return d;
    };
    int m = deg(a), n = deg(b);
    int size = m + n;
    Matrix<QSeries> s(static_cast<size_t>(size), std::vector<QSeries>(static_cast<size_t>(size)));
    for (int r = 0; r < n; ++r)
        for (int t = 0; t <= m; ++t) s[static_cast<size_t>(r)][static_cast<size_t>(r + t)] = a[static_cast<size_t>(m - t)];
    for (int r = 0; r < m; ++r)
        for (int t = 0; t <= n; ++t) s[static_cast<size_t>(n + r)][static_cast<size_t>(r + t)] = b[static_cast<size_t>(n - t)];
    return seriesDet(s, N);
}

// Scaled resultant Res_Y(C, D) at X.
QSeries scaledResultant(const ScaledQuartic& q, const Q& X, long N) {
    std::map<std::pair<int, int>, QSeries> Cx, Cy;
    for (auto& [e, v] : q.C) {
        if (e.first > 0) Cx[{e.first - 1, e.second}] = Cx[{e.first - 1, e.second}] + v.scaled(Q(e.first));
        if (e.second > 0) Cy[{e.first, e.second - 1}] = Cy[{e.first, e.second - 1}] + v.scaled(Q(e.second));
    }
    auto e = inY(q.C, X), ex = inY(Cx, X), ey = inY(Cy, X);
    QSeries one(1);
    QSeries M = QSeries::monomial(Q(1), 1);
    // D = C_X Y + C_Y ((1 - s^2) X + X^2 + (2 s + M X) Y)
    QSeries a0 = (one - q.s * q.s).scaled(X) + QSeries(X * X);
    QSeries a1 = q.s + q.s + M.scaled(X);
    std::vector<QSeries> d(7);
    for (size_t j = 0; j < 6; ++j) {
        d[j + 1] = d[j + 1] + ex[j] + ey[j] * a1;
        d[j] = d[j] + ey[j] * a0;
    }
    return sylvesterRes(e, d, N);
}

}  // namespace

QuarticLimit resultantLimitAnalysis(long N, bool allCoefficients) {
    auto base = solveBifurcationSeries(4, 9, 5, 5).B;  // through M^8
    base.resize(10, Q(0));
    QuarticLimit out;
    const std::vector<Q> xs = {Q(1), Q(2), Q(3), Q(-1), Q(-2), Q(-3), Q(1, 2), Q(3, 2)};
    const int xPow = 14;
    const int top = allCoefficients ? 6 : 1;  // highest x^(14 + i) entry needed
    // values[a][i]: coefficient of X^(xPow + i) at M^(24 + 2i) in R(X) for alpha sample a.
    auto leading = [&](const Q& alpha) {
        auto B = base;
        B[9] = alpha;
        auto q = scaledQuartic(B, N);
        std::vector<QSeries> R;
        for (auto& X : xs) R.push_back(scaledResultant(q, X, N));
        std::vector<Q> vals;
        for (int i = 0; i <= top; ++i) {
            long order = 24 + 2 * i;
            std::vector<Q> ys;
            for (size_t t = 0; t < xs.size(); ++t) {
                if (R[t].prec() <= order) throw std::runtime_error("series order insufficient for the M -> 0 limit; raise the precision above " + std::to_string(N));
                ys.push_back(R[t].coeff(order) / qpow(xs[t], xPow));
            }
            std::vector<Q> x7(xs.begin(), xs.begin() + 7), y7(ys.begin(), ys.begin() + 7);
            QPoly p = interpolateQ(x7, y7);
            if (p(xs[7]) != ys[7]) throw std::runtime_error("resultant is not x^14 times a sextic at order M^" + std::to_string(order));
            vals.push_back(p.coeff(i));
        }
        return vals;
    };
    // P_j is the x^(j+1) entry: the x^14 entry vanishes identically.
    std::vector<Q> alphas, P0vals;
    std::vector<std::vector<Q>> all;
    for (long i = 0;; ++i) {
        Q a = i == 0 ? Q(0) : Q(i % 2 ? (i + 1) / 2 : -(i / 2), 1000);
        alphas.push_back(a);
        all.push_back(leading(a));
        if (alphas.size() >= 8) {
            // stop once every P_j is pinned by two extra samples, or at 18 samples
            bool stable = true;
            for (int j = 0; j <= top && stable; ++j) {
                std::vector<Q> ys;
                for (auto& v : all) ys.push_back(v[static_cast<size_t>(j)]);
                std::vector<Q> xa(alphas.begin(), alphas.end() - 2), ya(ys.begin(), ys.end() - 2);
                QPoly p = interpolateQ(xa, ya);
                stable = p(alphas[alphas.size() - 2]) == ys[ys.size() - 2] && p(alphas.back()) == ys.back();
            }
            if (stable || alphas.size() >= 18) break;
        }
    }
    out.xPower = xPow + 1;
    for (int j = 1; j <= top; ++j) {
        std::vector<Q> ys;
        for (auto& v : all) ys.push_back(v[static_cast<size_t>(j)]);
        out.P.push_back(interpolateQ(alphas, ys));
    }
    {
        std::vector<Q> ys;
        for (auto& v : all) ys.push_back(v[0]);
        if (!interpolateQ(alphas, ys).isZeroPoly()) throw std::runtime_error("x^14 entry of the limit is not identically zero");
    }
    const QPoly& P0 = out.P[0];
    out.P0cubic = divmod(P0, QPoly::monomial(Q(1), 2)).first;
    out.P0negRoots = isolateRoots(out.P0cubic, std::nullopt, Q(0));
    for (auto& b : out.P0negRoots) b.refineTo(Q(1, 1000000000));
    out.signAtMinus = sgn(P0(Q(-1, 2500)));
    out.signAtPlus = sgn(P0(Q(1, 2500)));

    // x1 and D4(x1, 0): alpha enters linearly at the leading orders.
    auto crossing = [&](const Q& alpha) {
        auto B = base;
        B[9] = alpha;
        auto q = scaledQuartic(B, N);
        QSeries one(1);
        // C(X,0)/X^2 = -(1 - s^2) + c30 X + c40 X^2; Newton from X = -3/2.
        QSeries p0 = q.C[{2, 0}], p1 = q.C[{3, 0}], p2 = q.C[{4, 0}];
        QSeries X(Q(-3, 2));
        for (int it = 0; it < 8; ++it) {
            QSeries fv = p0 + p1 * X + p2 * X * X;
            QSeries fp = p1 + (p2 * X).scaled(Q(2));
            X = (X - divide(fv, fp, N)).withPrec(N);
        }
        // D(X,0) = C_Y(X,0) ((1 - s^2) X + X^2),  C_Y(X,0) = -2 s X + c21 X^2 + c31 X^3
        QSeries cy = -(q.s + q.s) * X + q.C[{2, 1}] * X * X + q.C[{3, 1}] * X * X * X;
        QSeries Dt = cy * X * ((one - q.s * q.s) + X);
        return std::make_pair(X, Dt);
    };
    auto [X0, D0] = crossing(Q(0));
    auto [X1, D1] = crossing(Q(1));
    auto [X2, D2] = crossing(Q(2));
    // Unscaled: x = M^2 X, D = M^7 D~.
    for (long k = 0; k < 11 && k < X0.prec(); ++k) out.x1Series.push_back(X0.coeff(k));
    QSeries dx = X1 - X0;
    out.x1AlphaPower = static_cast<int>(dx.val()) + 2;
    out.x1Alpha = dx.lead();
    QSeries dd = D1 - D0, dd2 = D2 - D0;
    long lv = dd.val();
    if (D0.val() <= lv) throw std::runtime_error("D4 at the crossing has an alpha-free leading term");
    if (dd2.coeff(lv) != 2 * dd.coeff(lv)) throw std::runtime_error("leading term of D4 at the crossing is not linear in alpha");
    out.dLeadAlpha = dd.coeff(lv);
    out.dLeadPower = static_cast<int>(lv) + 7;
    out.dNextAlpha = dd.coeff(lv + 1);
    out.dNextConst = D0.coeff(lv + 1);
    return out;
}

// ---------------------------------------------------------------------------
// Identities

IdentityReport symbolicIdentityChecks() {
    IdentityReport r;
    std::ostringstream os;
    {
        // Coefficients are polynomials in s = sqrt(n).
        using SB = BPoly<QPoly>;
        QPoly s = QPoly::x();
        SB x = SB::x(), y = SB::y();
        QPoly b = s - QPoly(Q(1));
        SB L = x + y;
        SB Qf = x.scaled(s.scaled(Q(2))) + y.scaled(b + s) + x * x + x * y;
        SB lhs = L.dx() * y + L.dy() * Qf;
        SB K = SB(s.scaled(Q(2))) + x;
        r.invariantLine = lhs == K * L;
        os << "invariant line: " << (r.invariantLine ? "holds" : "fails") << "\n";
    }
    {
        // Coefficients are polynomials in (n, b).
        using TB = BPoly<QBPoly>;
        QBPoly n = QBPoly::x(), b = QBPoly::y();
        TB x = TB::x(), y = TB::y();
        TB one(QBPoly(1));
        TB P = y, Qf = -x + y.scaled(b) + x * y - (y * y).scaled(n);
        TB w = one - y;  // (P, Q) / w
        // div(P/w, Q/w) * w^2 = (P_x + Q_y) w - (P w_x + Q w_y)
        TB num = (P.dx() + Qf.dy()) * w - (P * w.dx() + Qf * w.dy());
        TB rhs = TB(b) - (y.scaled(n)).scaled(QBPoly(2)) + (y * y).scaled(n);
        r.dulac = num == rhs;
        os << "divergence identity: " << (r.dulac ? "holds" : "fails") << "\n";
    }
    r.detail = os.str();
    return r;
}

}  // namespace hcb
