// Bifurcation series B = beta(M) in the scaled (B, M) chart
//   X = x/M^2, Y = y/M^3, s = B/M:
//   X' = Y,  Y' = (1 - s^2) X + 2 s Y + X^2 + M X Y.
// A curve of degree k fitted with one condition more than it has free
// coefficients exists only on the relation Phi(B, M) = 0 (the determinant of
// the augmented contact system); its branch through B ~ (3/7) M^2 is solved
// order by order in M.
#pragma once

#include "hcb/fit.hpp"

#include <utility>
#include <vector>

namespace hcb {

struct BifSeriesResult {
    int k = 0;
    int jPlus = 0, jMinus = 0;
    std::vector<Q> B;       // B[j] = coefficient of M^j, j = 0..order
    std::vector<Q> b;       // b[j] = coefficient of n^(j/2)
    long precisionUsed = 0; // series precision in M of the last determinant
};

// Default split for the relation: one more row than unknowns.
std::pair<int, int> defaultRelationSplit(int k);

// Phi as a series in M, known modulo M^N.
QSeries bifurcationDeterminant(const std::vector<Q>& Bcoef, int k, int jPlus, int jMinus, long N);

// Solves B through M^order.  Throws naming the order that failed.
BifSeriesResult solveBifurcationSeries(int k, int order);
BifSeriesResult solveBifurcationSeries(int k, int order, int jPlus, int jMinus);

// Scaled contact system over Q[[M]]: unknowns are the scaled coefficients
// c~_ij (c_ij = c~_ij / M^(2i+3j-6)); returns the solved series.
std::vector<QSeries> scaledFit(const std::vector<Q>& Bcoef, int k, int jPlus, int jMinus, long N);

}  // namespace hcb
