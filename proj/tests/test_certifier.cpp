#include "doctest.h"

#include "hcb/certificate.hpp"
#include "hcb/certifier.hpp"
#include "hcb/family1.hpp"
#include "hcb/rationalizer.hpp"
#include "hcb/roots.hpp"

#include <map>

using namespace hcb;

namespace {

// Issued once and shared by the replay tests.
const std::vector<BoundCertificate>& issued() {
    static std::vector<BoundCertificate> all = [] {
        std::vector<BoundCertificate> v;
        auto take = [&](CertifyOutcome o) {
            REQUIRE_MESSAGE(o.certified(), o.reason);
            v.push_back(*o.certificate);
        };
        take(certifyGraphBound(Q(15), Q(1, 8), 4));
        take(certifyGraphBound(Q(15), Q(-1, 8), 4));
        take(certifyHyperbolaBound(Q(2), true));
        take(certifyHyperbolaBound(Q(2), false));
        take(certifyLoopBound(Q(1, 4), Q(89, 368), 3));
        take(certifyLoopBound(Q(1, 4), Q(103, 228), 3));
        return v;
    }();
    return all;
}

}  // namespace

TEST_CASE("direction table is exhaustive") {
    CHECK(directionFromContact(1) == Direction::Lower);
    CHECK(directionFromContact(-1) == Direction::Upper);
    CHECK_FALSE(directionFromContact(0).has_value());
    CHECK(directionFromCrossing(Crossing::Inward) == Direction::Lower);
    CHECK(directionFromCrossing(Crossing::Outward) == Direction::Upper);
    CHECK(toText(Direction::Lower) == "lower");
    CHECK(toText(Direction::Upper) == "upper");
}

TEST_CASE("first family sandwich at n = 15 and n = 30") {
    for (Q n : {Q(15), Q(30)}) {
        auto up = certifyGraphBound(n, Q(1, 8), 4);
        auto lo = certifyGraphBound(n, Q(-1, 8), 4);
        REQUIRE_MESSAGE(up.certified(), up.reason);
        REQUIRE_MESSAGE(lo.certified(), lo.reason);
        CHECK(up.certificate->direction == Direction::Upper);
        CHECK(lo.certificate->direction == Direction::Lower);
        // [PAPER] |1/(4n) - b*| < 1/(8 n^3)
        Q c = 1 / (4 * n), h = 1 / (8 * n * n * n);
        CHECK(up.certificate->b == c + h);
        CHECK(lo.certificate->b == c - h);
    }
}

TEST_CASE("first family (6,5) curves at n = 6") {
    auto up = certifyGraphBound(Q(6), Q(1, 2), 5);
    auto lo = certifyGraphBound(Q(6), Q(-1, 2), 5);
    REQUIRE_MESSAGE(up.certified(), up.reason);
    REQUIRE_MESSAGE(lo.certified(), lo.reason);
    CHECK(up.certificate->direction == Direction::Upper);
    CHECK(lo.certificate->direction == Direction::Lower);
    // half-width 1/(2 n^5)
    CHECK(up.certificate->b - lo.certificate->b == 2 * Q(1, 2) / (Q(6) * 6 * 6 * 6 * 6));
    CHECK(verifyCertificate(*up.certificate) == std::nullopt);
}

TEST_CASE("sandwich too tight for small n is not certified") {
    auto o = certifyGraphBound(Q(2), Q(1, 8), 4);
    CHECK_FALSE(o.certified());
    CHECK_FALSE(o.reason.empty());
}

TEST_CASE("hyperbola bounds") {
    for (Q n : {Q(1, 3), Q(1), Q(15)}) {
        auto lo = certifyHyperbolaBound(n, false);
        REQUIRE_MESSAGE(lo.certified(), lo.reason);
        CHECK(lo.certificate->direction == Direction::Lower);
        CHECK(lo.certificate->b == n / (4 * n * n + 1));  // [PAPER]
    }
    auto up = certifyHyperbolaBound(Q(15), true);
    REQUIRE_MESSAGE(up.certified(), up.reason);
    CHECK(up.certificate->direction == Direction::Upper);
    CHECK(up.certificate->b == (8 * Q(225) - 1) / (16 * Q(3375)));  // [PAPER] (8n^2-1)/(16n^3)
    CHECK_FALSE(certifyHyperbolaBound(Q(1, 3), true).certified());
}

TEST_CASE("invariant line gives a vanishing contact function") {
    // x = n y is invariant for n b = 1 + n^2: the contact function is zero.
    Q n(2), b = (1 + n * n) / n;
    QPoly ym1(std::vector<Q>{Q(-1), Q(1)});
    QPoly p = QPoly(std::vector<Q>{Q(0), n}) * ym1;
    auto r = contactReport(p, ym1, n, b);
    CHECK_FALSE(r.certified);
    CHECK(r.sign == 0);
}

TEST_CASE("loop bounds at n = 1/4 with cubics") {
    auto lo = certifyLoopBound(Q(1, 4), Q(89, 368), 3);
    auto up = certifyLoopBound(Q(1, 4), Q(103, 228), 3);
    REQUIRE_MESSAGE(lo.certified(), lo.reason);
    REQUIRE_MESSAGE(up.certified(), up.reason);
    CHECK(lo.certificate->direction == Direction::Lower);
    CHECK(up.certificate->direction == Direction::Upper);
    CHECK(lo.certificate->data.at("crossing") == "inward");
    CHECK(up.certificate->data.at("crossing") == "outward");
}

TEST_CASE("loop structure of the lower cubic") {
    CurveCandidate c = fitClosedCurve(3, SaddleChart::fromSqrtN(Q(1, 2), Q(89, 368)), 4, 0);
    LoopReport r = verifyLoop(c);
    REQUIRE_MESSAGE(r.loop, r.failure);
    // [PAPER] x0 ~ -1.454; strata: one root left of x0, three right of it.
    CHECK(r.x0.lo >= Q(-146, 100));
    CHECK(r.x0.hi <= Q(-145, 100));
    CHECK(r.xmin == -2);
    for (auto& [x, k] : r.strata) CHECK(k == (x < r.x0.lo ? 1 : 3));
    FlowReport f = flowDirection(c, r);
    REQUIRE(f.crossing.has_value());
    CHECK(*f.crossing == Crossing::Inward);
}

TEST_CASE("larger cubic bracket from the rational parametrisation") {
    // [PAPER] b* in (G(951/398), G(29/11)) = (28898/114425, 1307/3036)
    Q lo = gMap(Q(951, 398)), hi = gMap(Q(29, 11));
    CHECK(lo == Q(28898, 114425));
    CHECK(hi == Q(1307, 3036));
    auto a = certifyLoopBound(Q(1, 4), lo, 3);
    auto b = certifyLoopBound(Q(1, 4), hi, 3);
    REQUIRE_MESSAGE(a.certified(), a.reason);
    REQUIRE_MESSAGE(b.certified(), b.reason);
    CHECK(a.certificate->direction == Direction::Lower);
    CHECK(b.certificate->direction == Direction::Upper);
}

TEST_CASE("loop certification needs rational eigenvalues") {
    auto o = certifyLoopBound(Q(1, 4), Q(3, 10), 3);
    CHECK_FALSE(o.certified());
    CHECK_FALSE(o.reason.empty());
}

TEST_CASE("every issued certificate replays") {
    for (auto& c : issued()) {
        CHECK(verifyCertificate(c) == std::nullopt);
        BoundCertificate back = BoundCertificate::parse(c.serialize());
        CHECK(back.serialize() == c.serialize());
        CHECK(back.storedDigest == c.digest());
        CHECK(verifyCertificate(back) == std::nullopt);
    }
}

TEST_CASE("tampering with any fact is detected") {
    for (auto& c : issued()) {
        for (size_t i = 0; i < c.facts.size(); ++i) {
            BoundCertificate t = BoundCertificate::parse(c.serialize());
            std::string& r = t.facts[i].result;
            r = r == "0" ? "1" : (r == "1" ? "-1" : "0");
            auto failure = verifyCertificate(t);
            REQUIRE(failure.has_value());
            CHECK(failure->find("fact " + std::to_string(i + 1)) == 0);
        }
    }
}

TEST_CASE("tampering with the claim is detected") {
    const BoundCertificate& c = issued().front();
    {
        BoundCertificate t = BoundCertificate::parse(c.serialize());
        t.direction = t.direction == Direction::Lower ? Direction::Upper : Direction::Lower;
        CHECK(verifyCertificate(t).has_value());  // digest mismatch
        t.storedDigest.clear();
        CHECK(verifyCertificate(t).has_value());  // rebuilt evidence disagrees
    }
    {
        BoundCertificate t = BoundCertificate::parse(c.serialize());
        t.b += Q(1, 1000000);
        t.storedDigest.clear();
        CHECK(verifyCertificate(t).has_value());
    }
    {
        std::string text = c.serialize();
        auto pos = text.find("digest ");
        text[pos + 7] = text[pos + 7] == '0' ? '1' : '0';
        CHECK(verifyCertificate(BoundCertificate::parse(text)) == std::optional<std::string>("digest mismatch"));
    }
}

TEST_CASE("facts evaluate with the kernel") {
    Fact s{"sturm", {"-2*x^0 + 1*x^2", "-inf", "inf"}, "2", ""};
    CHECK(evaluateFact(s) == "2");
    Fact g{"sign", {"-2*x^0 + 1*x^2", "1"}, "-1", ""};
    CHECK(evaluateFact(g) == "-1");
    Fact rs{"rootsign", {"-2*x^0 + 1*x^2", "1", "2", "-3*x^0 + 1*x^2"}, "-1", ""};
    CHECK(evaluateFact(rs) == "-1");
    Fact bad{"nonsense", {}, "0", ""};
    CHECK_THROWS(evaluateFact(bad));
}

TEST_CASE("upper hyperbola contact identity in symbolic n") {
    // [PAPER] M(x(y), y) = (4n^2+1)(4n^2 y - 1)^2 / (128 n^6 (y - 1))
    QRat n = QRat::var();
    auto h = hyperbolaUpper();
    UPoly<QRat> p(std::vector<QRat>{-h.a0, -h.a2, n}), q(std::vector<QRat>{h.a1, QRat(1)});
    auto m = contactOnGraph(p, q, n, h.b);
    QRat n2 = n * n;
    UPoly<QRat> y = UPoly<QRat>::x(), ym1(std::vector<QRat>{QRat(-1), QRat(1)});
    UPoly<QRat> lin(std::vector<QRat>{QRat(-1), QRat(4) * n2});
    UPoly<QRat> lhs = m.num * ym1.scaled(QRat(128) * n2 * n2 * n2);
    UPoly<QRat> rhs = (lin * lin).scaled(QRat(4) * n2 + QRat(1)) * m.den;
    CHECK(lhs == rhs);
}

TEST_CASE("lower hyperbola contact is a perfect square times y^2") {
    // [PAPER] M = y^2 R1(y)^2 / S1(y)^2 with R1, S1 linear.
    QRat n = QRat::var();
    auto h = hyperbolaLower();
    UPoly<QRat> p(std::vector<QRat>{-h.a0, -h.a2, n}), q(std::vector<QRat>{h.a1, QRat(1)});
    auto m = contactOnGraph(p, q, n, h.b);
    REQUIRE(m.num.degree() == 4);
    CHECK(isZero(m.num.coeff(0)));
    CHECK(isZero(m.num.coeff(1)));
    // c2 + c3 y + c4 y^2 is a square: c3^2 = 4 c2 c4.
    QRat c2 = m.num.coeff(2), c3 = m.num.coeff(3), c4 = m.num.coeff(4);
    CHECK(c3 * c3 == QRat(4) * c2 * c4);
    // The denominator q^2 is a square whose root a1... lies off y < 1 for sample n.
    for (Q nv : {Q(1, 10), Q(1), Q(15)}) {
        Q root = -h.a1.eval(nv);
        CHECK(root >= 1);
        CHECK(c4.eval(nv) > 0);
    }
}

TEST_CASE("symbolic identities") {
    IdentityReport r = symbolicIdentityChecks();
    CHECK_MESSAGE(r.invariantLine, r.detail);
    CHECK_MESSAGE(r.dulac, r.detail);
}

TEST_CASE("degree-16 factor of the leading contact coefficient") {
    // [PAPER] 2560 n^16 - 446720 n^14 - ... + 21990713 divides r4(n, 1/8), largest root ~ 13.397.
    std::vector<Q> fc(17, Q(0));
    long cc[9] = {21990713, 85765842, 131940378, 98872176, 33662656, 1116256, -2294624, -446720, 2560};
    for (int i = 0; i < 9; ++i) fc[2 * i] = Q(cc[i]);
    QPoly f(fc);
    QRat n = QRat::var();
    QRat b = sandwichB(graphSandwich(4), Q(1, 8));
    auto g = fitRationalGraph<QRat>(n, b, 5, 4);
    auto M = reduceAtOne(contactOnGraph(g.p, g.q, n, b));
    UPoly<QRat> z(std::vector<QRat>{QRat(1), QRat(-1)});  // y = 1 - z
    UPoly<QRat> N = M.num.compose(z);
    REQUIRE(N.degree() == 4);
    QPoly r4 = N.coeff(4).num();
    CHECK(divmod(r4, f).second.isZeroPoly());
    auto roots = isolateRoots(f, Q(0), std::nullopt);
    REQUIRE_FALSE(roots.empty());
    CHECK(sturmCount(f, Q(1339, 100), Q(1340, 100)) == 1);
    CHECK(sturmCount(f, Q(1340, 100), std::nullopt) == 0);
    // No r_i(n, +-1/8) or denominator factor has a root beyond 13.4.
    for (Q a : {Q(1, 8), Q(-1, 8)}) {
        QRat ba = sandwichB(graphSandwich(4), a);
        auto ga = fitRationalGraph<QRat>(n, ba, 5, 4);
        auto Ma = reduceAtOne(contactOnGraph(ga.p, ga.q, n, ba));
        UPoly<QRat> Na = Ma.num.compose(z), Da = Ma.den.compose(z);
        for (int i = 0; i <= Na.degree(); ++i)
            if (!isZero(Na.coeff(i))) CHECK(sturmCount(Na.coeff(i).num(), Q(134, 10), std::nullopt) == 0);
        for (int i = 0; i <= Da.degree(); ++i)
            if (!isZero(Da.coeff(i))) CHECK(sturmCount(Da.coeff(i).num(), Q(134, 10), std::nullopt) == 0);
    }
}
