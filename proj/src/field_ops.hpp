#pragma once

// Dense elimination over Q (mpq_class) or F_p (int64), used by every field-coefficient
// routine. Zero entries are skipped, which matters for the Kronecker-shaped systems
// produced by homotopy solving.

#include <cstdint>
#include <optional>
#include <vector>

#include "dlt/errors.hpp"
#include "dlt/matrix.hpp"

namespace dlt::detail {

struct RatOps {
    using T = mpq_class;
    T from(const Laurent& x) const { return x.is_zero() ? T(0) : x.constant(); }
    Laurent to(const T& x) const { return Laurent(x); }
    static bool is0(const T& x) { return sgn(x) == 0; }
    T inv(const T& x) const { return 1 / x; }
    T mul(const T& a, const T& b) const { return a * b; }
    // a -= b*c
    void sub_mul(T& a, const T& b, const T& c) const { a -= b * c; }
    T neg(const T& x) const { return -x; }
    T one() const { return 1; }
};

struct ModOps {
    using T = std::int64_t;
    std::int64_t p;
    T from(const Laurent& x) const {
        if (x.is_zero()) return 0;
        return mod_p(x.constant(), p).get_num().get_si();
    }
    Laurent to(const T& x) const { return Laurent(static_cast<long>(x)); }
    static bool is0(const T& x) { return x == 0; }
    T inv(T x) const {
        T a = x, m = p, u = 1, v = 0;
        while (m != 0) {
            T q = a / m;
            T t = a - q * m;
            a = m;
            m = t;
            t = u - q * v;
            u = v;
            v = t;
        }
        u %= p;
        return u < 0 ? u + p : u;
    }
    T mul(T a, T b) const { return static_cast<T>((static_cast<__int128>(a) * b) % p); }
    void sub_mul(T& a, T b, T c) const {
        a = static_cast<T>((a - static_cast<__int128>(b) * c % p + p) % p);
    }
    T neg(T x) const { return x == 0 ? 0 : p - x; }
    T one() const { return 1; }
};

template <class Ops>
struct Dense {
    using T = typename Ops::T;
    Ops ops;
    int r = 0, c = 0;
    std::vector<T> a;
    Dense(Ops o, int rows, int cols) : ops(o), r(rows), c(cols), a(static_cast<size_t>(rows) * cols, T(0)) {}
    T& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
    const T& at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
};

template <class Ops>
Dense<Ops> to_dense(const Ops& ops, const Matrix& m) {
    Dense<Ops> d(ops, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) d.at(i, j) = ops.from(m(i, j));
    return d;
}

template <class Ops>
Matrix from_dense(const RingSpec& R, const Dense<Ops>& d) {
    Matrix m(R, d.r, d.c);
    for (int i = 0; i < d.r; ++i)
        for (int j = 0; j < d.c; ++j)
            if (!Ops::is0(d.at(i, j))) m.ref(i, j) = d.ops.to(d.at(i, j));
    return m;
}

// Reduced row echelon form in place on the first `ncols` columns (row ops applied to all
// columns). Returns pivot columns.
template <class Ops>
std::vector<int> rref(Dense<Ops>& d, int ncols = -1) {
    using T = typename Ops::T;
    if (ncols < 0) ncols = d.c;
    std::vector<int> piv;
    int row = 0;
    std::vector<int> nz;
    for (int col = 0; col < ncols && row < d.r; ++col) {
        int sel = -1;
        for (int i = row; i < d.r; ++i)
            if (!Ops::is0(d.at(i, col))) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < d.c; ++j) std::swap(d.at(sel, j), d.at(row, j));
        T inv = d.ops.inv(d.at(row, col));
        nz.clear();
        for (int j = 0; j < d.c; ++j)
            if (!Ops::is0(d.at(row, j))) {
                d.at(row, j) = d.ops.mul(d.at(row, j), inv);
                nz.push_back(j);
            }
        for (int i = 0; i < d.r; ++i) {
            if (i == row || Ops::is0(d.at(i, col))) continue;
            T f = d.at(i, col);
            for (int j : nz) d.ops.sub_mul(d.at(i, j), f, d.at(row, j));
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

template <class Ops>
int rank_of(Dense<Ops> d) {
    return static_cast<int>(rref(d).size());
}

// Solve A X = B; nullopt if inconsistent. Free variables are set to zero.
template <class Ops>
std::optional<Dense<Ops>> solve_dense(const Dense<Ops>& A, const Dense<Ops>& B) {
    Dense<Ops> aug(A.ops, A.r, A.c + B.c);
    for (int i = 0; i < A.r; ++i) {
        for (int j = 0; j < A.c; ++j) aug.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.c; ++j) aug.at(i, A.c + j) = B.at(i, j);
    }
    auto piv = rref(aug, A.c);
    int rk = static_cast<int>(piv.size());
    for (int i = rk; i < A.r; ++i)
        for (int j = 0; j < B.c; ++j)
            if (!Ops::is0(aug.at(i, A.c + j))) return std::nullopt;
    Dense<Ops> X(A.ops, A.c, B.c);
    for (int k = 0; k < rk; ++k)
        for (int j = 0; j < B.c; ++j) X.at(piv[k], j) = aug.at(k, A.c + j);
    return X;
}

template <class Ops>
Dense<Ops> nullspace_dense(Dense<Ops> A) {
    auto piv = rref(A);
    std::vector<bool> is_piv(A.c, false);
    for (int p : piv) is_piv[p] = true;
    int nfree = A.c - static_cast<int>(piv.size());
    Dense<Ops> N(A.ops, A.c, nfree);
    int k = 0;
    for (int j = 0; j < A.c; ++j) {
        if (is_piv[j]) continue;
        N.at(j, k) = A.ops.one();
        for (size_t t = 0; t < piv.size(); ++t)
            if (!Ops::is0(A.at(static_cast<int>(t), j))) N.at(piv[t], k) = A.ops.neg(A.at(static_cast<int>(t), j));
        ++k;
    }
    return N;
}

template <class F>
decltype(auto) with_field(const RingSpec& R, F&& f) {
    if (R.kind == RingKind::PrimeField) return f(ModOps{R.p});
    if (R.kind == RingKind::Rationals) return f(RatOps{});
    throw NotAField("expected field coefficients, got " + R.name());
}

}  // namespace dlt::detail
