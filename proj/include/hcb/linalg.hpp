// Dense linear algebra over exact fields.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hcb {

template <class F>
using Matrix = std::vector<std::vector<F>>;

// Gaussian elimination; throws naming the pivot column on singularity.
template <class F>
std::vector<F> gaussSolve(Matrix<F> a, std::vector<F> b) {
    size_t n = a.size();
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && isZero(a[p][k])) ++p;
        if (p == n) throw std::domain_error("singular linear system at pivot " + std::to_string(k));
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        F inv = F(1) / a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (isZero(a[i][k])) continue;
            F f = a[i][k] * inv;
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<F> x(n, F(0));
    for (size_t k = n; k-- > 0;) {
        F s = b[k];
        for (size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
        x[k] = s / a[k][k];
    }
    return x;
}

// Determinant by fraction-free Bareiss elimination over an integral domain
// with exact division.
template <class R>
R bareissDet(Matrix<R> a) {
    size_t n = a.size();
    if (n == 0) return R(1);
    R prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (isZero(a[k][k])) {
            size_t p = k + 1;
            while (p < n && isZero(a[p][k])) ++p;
            if (p == n) return R(0);
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    R d = a[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

}  // namespace hcb
