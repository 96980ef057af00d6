#pragma once

#include <random>
#include <vector>

#include "dlt/complex.hpp"
#include "dlt/matrix.hpp"

namespace testutil {

using namespace dlt;

inline Matrix random_matrix(std::mt19937& g, RingSpec R, int r, int c, int bound = 3) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Matrix m(R, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, Laurent(d(g)));
    return m;
}

// Product of elementary matrices, so invertible over every supported ring.
inline Matrix random_unimodular(std::mt19937& g, RingSpec R, int n, int steps = 0) {
    Matrix m = Matrix::identity(R, n);
    if (n < 2) return m;
    std::uniform_int_distribution<int> idx(0, n - 1), c(-2, 2);
    for (int k = 0; k < (steps ? steps : 3 * n); ++k) {
        int i = idx(g), j = idx(g);
        if (i == j) continue;
        Matrix e = Matrix::identity(R, n);
        e.set(i, j, Laurent(c(g)));
        m = e * m;
    }
    return m;
}

// Complex with h[r] homology generators in degree r and b[r] cancelling pairs between
// degrees r and r-1, conjugated degreewise by random unimodular matrices.
inline ChainComplex random_complex(std::mt19937& g, RingSpec R, int lo, const std::vector<int>& h,
                                   const std::vector<int>& b) {
    int n = static_cast<int>(h.size());
    std::vector<int> dims(n, 0);
    for (int i = 0; i < n; ++i) {
        dims[i] += h[i];
        if (i > 0) dims[i] += b[i], dims[i - 1] += b[i];
    }
    ChainComplex C(R, lo, dims);
    std::vector<Matrix> P, Pinv;
    for (int i = 0; i < n; ++i) {
        Matrix u = random_unimodular(g, R, dims[i]);
        P.push_back(u);
        Pinv.push_back(*inverse(u));
    }
    // Standard layout per degree: [incoming pair targets | homology | outgoing pair sources].
    for (int i = 1; i < n; ++i) {
        Matrix d(R, dims[i - 1], dims[i]);
        int tgt0 = dims[i - 1] - b[i];
        for (int k = 0; k < b[i]; ++k) d.set(tgt0 + k, k, 1);
        C.set_d(lo + i, Pinv[i - 1] * d * P[i]);
    }
    return C;
}

}  // namespace testutil
