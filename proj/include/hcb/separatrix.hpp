// Separatrix expansions.
//
// Saddle branches of  x' = y,  y' = c10 x + c01 y + c20 x^2 + c11 x y  as
// graphs y = sum a_k x^k, and the infinity branch x = n y + psi(1/y) of
//   x' = y,  y' = -x + b y + x y - n y^2.
#pragma once

#include "hcb/series.hpp"

#include <stdexcept>
#include <vector>

namespace hcb {

// Coefficients of the quadratic saddle field  y' = c10 x + c01 y + c20 x^2 + c11 x y.
template <class F>
struct SaddleField {
    F c10, c01, c20, c11;
};

enum class Branch { Plus, Minus };

// a[0..K] with a[0] = 0 and a[1] = a1 (a root of a1^2 = c10 + c01 a1).
// The division is passed in so series coefficient rings can control
// their precision.
template <class F, class Div>
std::vector<F> saddleCoefficients(const SaddleField<F>& f, const F& a1, int K, Div div) {
    if (K < 1) throw std::invalid_argument("separatrix order must be >= 1");
    std::vector<F> a(static_cast<size_t>(K) + 1, F(0));
    a[1] = a1;
    for (int k = 2; k <= K; ++k) {
        F rhs = f.c11 * a[static_cast<size_t>(k - 1)];
        if (k == 2) rhs = rhs + f.c20;
        for (int i = 2; i < k; ++i) rhs = rhs - F(i) * (a[static_cast<size_t>(i)] * a[static_cast<size_t>(k + 1 - i)]);
        F den = F(k + 1) * a1 - f.c01;
        a[static_cast<size_t>(k)] = div(rhs, den);
    }
    return a;
}

template <class F>
std::vector<F> saddleCoefficients(const SaddleField<F>& f, const F& a1, int K) {
    return saddleCoefficients(f, a1, K, [](const F& x, const F& y) {
        if (isZero(y)) throw std::domain_error("vanishing separatrix denominator");
        return x / y;
    });
}

// Residual of the invariance identity  Psi' Psi - (c10 x + c01 Psi + c20 x^2 + c11 x Psi)
// truncated at x^(K+1); zero iff the coefficients are right through order K.
template <class F>
TruncSeries<F> saddleResidual(const SaddleField<F>& f, const std::vector<F>& a) {
    int ord = static_cast<int>(a.size());
    TruncSeries<F> psi(a, ord), dpsi(ord), x = TruncSeries<F>::variable(ord);
    for (int k = 1; k < ord; ++k) dpsi[k - 1] = F(k) * a[static_cast<size_t>(k)];
    TruncSeries<F> x2 = x * x;
    return dpsi * psi - (x.scaled(f.c10) + psi.scaled(f.c01) + x2.scaled(f.c20) + (x * psi).scaled(f.c11));
}

// psi_0..psi_K for the infinity branch; F may be Q or a rational function
// field in n (and b enters as an element of F).
template <class F>
std::vector<F> infinityCoefficients(const F& n, const F& b, int K) {
    if (isZero(n)) throw std::domain_error("infinity series needs n != 0");
    if (K < 0) throw std::invalid_argument("negative order");
    F inv = F(1) / n;
    std::vector<F> psi(static_cast<size_t>(K) + 1, F(0)), g(static_cast<size_t>(K) + 1, F(0));
    psi[0] = (F(1) + n * n - n * b) * inv;
    g[0] = inv;  // (b - n) + psi_0
    for (int k = 1; k <= K; ++k) {
        F s(0);
        for (int j = 1; j < k; ++j) s = s + F(j) * psi[static_cast<size_t>(j)] * g[static_cast<size_t>(k - 1 - j)];
        psi[static_cast<size_t>(k)] = psi[static_cast<size_t>(k - 1)] + s * inv;
        g[static_cast<size_t>(k)] = psi[static_cast<size_t>(k)] - psi[static_cast<size_t>(k - 1)];
    }
    return psi;
}

// 1 - (n - w^2 psi'(w)) ((b - n) + (1 - w) psi(w)), truncated at w^(K+1).
template <class F>
TruncSeries<F> infinityResidual(const F& n, const F& b, const std::vector<F>& psi) {
    int ord = static_cast<int>(psi.size());
    TruncSeries<F> p(psi, ord), w2dp(ord), w = TruncSeries<F>::variable(ord);
    for (int j = 1; j < ord; ++j)
        if (j + 1 < ord) w2dp[j + 1] = F(j) * psi[static_cast<size_t>(j)];
    TruncSeries<F> one = TruncSeries<F>::constant(F(1), ord);
    TruncSeries<F> g = TruncSeries<F>::constant(b - n, ord) + (one - w) * p;
    return one - (TruncSeries<F>::constant(n, ord) - w2dp) * g;
}

}  // namespace hcb
