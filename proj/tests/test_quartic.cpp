#include "doctest.h"

#include "hcb/certifier.hpp"
#include "hcb/roots.hpp"

using namespace hcb;

namespace {

Q qv(const char* s) {
    Q q(s);
    q.canonicalize();
    return q;
}

const QuarticLimit& limit() {
    static QuarticLimit q = resultantLimitAnalysis();
    return q;
}

}  // namespace

TEST_CASE("leading coefficient of the limit resultant") {
    const QuarticLimit& q = limit();
    REQUIRE(q.P0cubic.degree() == 3);
    // [PAPER] integer cubic in alpha; ours differs by a rational scale.
    QPoly ref(std::vector<Q>{qv("112647235678813465306115059636253208576"),
                         qv("532161050006783873283311272385459961077760"),
                         qv("719549554938315584569470362390245200816649200"),
                         qv("296751659628833594552482011388242366232495503625")});
    Q scale = q.P0cubic.coeff(3) / ref.coeff(3);
    for (int i = 0; i <= 3; ++i) CHECK(q.P0cubic.coeff(i) == scale * ref.coeff(i));
    CHECK(q.P[0] == q.P0cubic * QPoly::monomial(Q(1), 2));
}

TEST_CASE("sign change and negative roots of P0") {
    const QuarticLimit& q = limit();
    CHECK(q.signAtMinus == -1);
    CHECK(q.signAtPlus == 1);
    REQUIRE(q.P0negRoots.size() == 3);
    for (auto& r : q.P0negRoots) {
        CHECK(r.lo > Q(-117, 100000));
        CHECK(r.hi < Q(-36, 100000));
    }
    // Oracle: count sign changes of the cubic on a fine rational grid.
    int changes = 0;
    for (int i = -1200; i < -300; ++i) {
        Q a(i, 1000000), b(i + 1, 1000000);
        if (sgn(q.P0cubic(a)) * sgn(q.P0cubic(b)) < 0) ++changes;
    }
    CHECK(changes == 3);
}

TEST_CASE("point of the loop on the x-axis") {
    const QuarticLimit& q = limit();
    // [PAPER] x1(0, M) = -3/2 M^2 + 99/392 M^4 - 14661/168070 M^6 + ...
    const char* want[] = {"-3/2", "0", "99/392", "0", "-14661/168070", "0", "1097361567/28988713600", "0",
                          "-57336960516777/3110334966739000", "-1360220314860156764457/758276772825613000960000"};
    REQUIRE(q.x1Series.size() >= 10);
    for (size_t i = 0; i < 10; ++i) CHECK(q.x1Series[i] == qv(want[i]));
    CHECK(q.x1Alpha == Q(429, 1280));
}

TEST_CASE("contact function changes sign with alpha") {
    const QuarticLimit& q = limit();
    CHECK(q.dLeadAlpha > 0);
    CHECK(q.dLeadPower > 0);
}
