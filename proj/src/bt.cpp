#include "hcb/bt.hpp"

#include <stdexcept>

namespace hcb {

std::optional<Q> rationalSqrt(const Q& q) {
    if (q < 0) return std::nullopt;
    Z n = q.get_num(), d = q.get_den(), rn, rd;
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Q r(rn, rd);
    r.canonicalize();
    return r;
}

SaddleChart SaddleChart::fromSqrtN(const Q& m2, const Q& b) {
    SaddleChart c;
    c.B_ = (b + m2) / 2;
    c.M2_ = c.B_ * c.B_ + 2 * m2;
    c.M_ = rationalSqrt(c.M2_);
    return c;
}

SaddleChart SaddleChart::fromBM(const Q& B, const Q& M) {
    if (M <= 0) throw std::invalid_argument("M must be positive");
    SaddleChart c;
    c.B_ = B;
    c.M2_ = M * M;
    c.M_ = M;
    return c;
}

const Q& SaddleChart::M() const {
    if (!M_) throw std::domain_error("eigenvalues are irrational; use rationalizer first");
    return *M_;
}

QBPoly SaddleChart::quadraticPart() const {
    return QBPoly::monomial(-2 * m2(), 2, 0) + QBPoly::monomial(-(b() + m2()), 1, 1) + QBPoly::monomial(Q(1), 0, 2);
}

QBPoly SaddleChart::Qf() const {
    return QBPoly::monomial(2 * m2(), 1, 0) + QBPoly::monomial(b() + m2(), 0, 1) + QBPoly::monomial(Q(1), 2, 0) +
           QBPoly::monomial(Q(1), 1, 1);
}

SeparatrixExpansion saddleSeriesBT(const SaddleChart& chart, Branch br, int K) {
    if (!chart.isSaddle()) throw std::domain_error("not a saddle");
    if (K < 2) throw std::invalid_argument("separatrix order must be >= 2");
    Q a1 = chart.a1(br);
    return {br, saddleCoefficients(chart.field(), a1, K)};
}

BTParams perkoToBT(const PerkoParams& p) {
    Q m4 = p.mu2 * p.mu2 * p.mu2 * p.mu2;
    return {m4 / 4, p.mu2 * (2 * p.mu1 + p.mu2) / 2};
}

PerkoParams btToPerko(const BTParams& p, int signMu2) {
    auto r2 = rationalSqrt(4 * p.n);
    std::optional<Q> r = r2 ? rationalSqrt(*r2) : std::nullopt;
    if (!r || isZero(*r)) throw std::domain_error("4n is not a nonzero rational fourth power");
    Q mu2 = signMu2 < 0 ? Q(-*r) : *r;
    return {p.b / mu2 - mu2 / 2, mu2};
}

std::vector<Q> bFromBSeries(const std::vector<Q>& Bcoef, int terms) {
    // Work in mu = M^2.  sigma = sqrt(n) = (mu - B^2)/2; revert to mu(sigma);
    // then b = 2 B(mu(sigma)) - sigma.
    int ord = terms + 1;
    for (size_t j = 0; j < Bcoef.size(); ++j)
        if ((j % 2 == 1 || j == 0) && !isZero(Bcoef[j])) throw std::domain_error("B(M) must be even with B(0) = 0");
    if (static_cast<int>(Bcoef.size()) < 2 * terms + 1) throw std::invalid_argument("B series too short for requested terms");
    TruncSeries<Q> beta(ord);
    for (int j = 1; j < ord; ++j) beta[j] = Bcoef[static_cast<size_t>(2 * j)];
    TruncSeries<Q> mu = TruncSeries<Q>::variable(ord);
    TruncSeries<Q> sigma = (mu - beta * beta).scaled(Q(1, 2));
    TruncSeries<Q> muOfSigma = sigma.revert();
    TruncSeries<Q> b = beta.compose(muOfSigma).scaled(Q(2)) - TruncSeries<Q>::variable(ord);
    std::vector<Q> c(static_cast<size_t>(terms) + 1, Q(0));
    for (int j = 1; j <= terms; ++j) c[static_cast<size_t>(j)] = b[j];
    return c;
}

std::vector<Q> perkoFromBSeries(const std::vector<Q>& c) {
    // sqrt(n) = mu2^2/2, so c_j n^(j/2) / mu2 = c_j mu2^(2j-1) / 2^j.
    std::vector<Q> h(c.size(), Q(0));
    for (size_t j = 1; j < c.size(); ++j) h[j] = c[j] / qpow(Q(2), j);
    if (h.size() > 1) h[1] -= Q(1, 2);
    return h;
}

}  // namespace hcb
