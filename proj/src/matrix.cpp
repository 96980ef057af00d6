#include "dlt/matrix.hpp"

#include <sstream>

#include "dlt/errors.hpp"
#include "field_ops.hpp"

namespace dlt {

using detail::with_field;

Matrix::Matrix(RingSpec R, int rows, int cols)
    : R_(R), r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix size");
}

Matrix Matrix::identity(RingSpec R, int n) { return scalar(R, n, Laurent(1)); }

Matrix Matrix::scalar(RingSpec R, int n, const Laurent& s) {
    Matrix m(R, n, n);
    Laurent v = R.normalize(s);
    for (int i = 0; i < n; ++i) m.ref(i, i) = v;
    return m;
}

Matrix Matrix::from_rows(RingSpec R, const std::vector<std::vector<Laurent>>& rows) {
    int nr = static_cast<int>(rows.size());
    int nc = nr ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(R, nr, nc);
    for (int i = 0; i < nr; ++i) {
        if (static_cast<int>(rows[i].size()) != nc) throw DimensionMismatch("ragged matrix rows");
        for (int j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_ints(RingSpec R, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Laurent>> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return from_rows(R, r);
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(R_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t.ref(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::adjoint() const {
    Matrix t(R_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t.ref(j, i) = R_.conj((*this)(i, j));
    return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > r_ || c0 + nc > c_) throw DimensionMismatch("block out of range");
    Matrix b(R_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b.ref(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& m) {
    if (r0 < 0 || c0 < 0 || r0 + m.r_ > r_ || c0 + m.c_ > c_) throw DimensionMismatch("set_block out of range");
    for (int i = 0; i < m.r_; ++i)
        for (int j = 0; j < m.c_; ++j) ref(r0 + i, c0 + j) = R_.normalize(m(i, j));
}

Matrix Matrix::rows_of(const std::vector<int>& idx) const {
    Matrix b(R_, static_cast<int>(idx.size()), c_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < c_; ++j) b.ref(static_cast<int>(i), j) = (*this)(idx[i], j);
    return b;
}

Matrix Matrix::cols_of(const std::vector<int>& idx) const {
    Matrix b(R_, r_, static_cast<int>(idx.size()));
    for (int i = 0; i < r_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) b.ref(i, static_cast<int>(j)) = (*this)(i, idx[j]);
    return b;
}

Matrix Matrix::map(RingSpec target) const {
    Matrix b(target, r_, c_);
    for (size_t k = 0; k < a_.size(); ++k) b.a_[k] = target.normalize(a_[k]);
    return b;
}

Matrix Matrix::operator-() const {
    Matrix b = *this;
    for (auto& x : b.a_) x = R_.neg(x);
    return b;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix sum " + std::to_string(r_) + "x" + std::to_string(c_) + " + " + std::to_string(o.r_) + "x" + std::to_string(o.c_));
    for (size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] = R_.add(a_[k], o.a_[k]);
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix difference size mismatch");
    for (size_t k = 0; k < a_.size(); ++k)
        if (!o.a_[k].is_zero()) a_[k] = R_.sub(a_[k], o.a_[k]);
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_)
        throw DimensionMismatch("matrix product " + std::to_string(a.r_) + "x" + std::to_string(a.c_) + " * " + std::to_string(b.r_) + "x" + std::to_string(b.c_));
    Matrix m(a.R_, a.r_, b.c_);
    if (a.R_.is_field()) {
        return with_field(a.R_, [&](auto ops) {
            auto A = detail::to_dense(ops, a);
            auto B = detail::to_dense(ops, b);
            decltype(A) C(ops, a.r_, b.c_);
            for (int i = 0; i < a.r_; ++i)
                for (int k = 0; k < a.c_; ++k) {
                    if (decltype(ops)::is0(A.at(i, k))) continue;
                    auto f = ops.neg(A.at(i, k));
                    for (int j = 0; j < b.c_; ++j)
                        if (!decltype(ops)::is0(B.at(k, j))) ops.sub_mul(C.at(i, j), f, B.at(k, j));
                }
            return detail::from_dense(a.R_, C);
        });
    }
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Laurent& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m.ref(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator*(const Laurent& s, const Matrix& m) {
    Matrix b = m;
    Laurent v = m.R_.normalize(s);
    for (auto& x : b.a_)
        if (!x.is_zero()) x = m.R_.mul(v, x);
    return b;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_) throw DimensionMismatch("hcat row mismatch");
    Matrix m(a.R_, a.r_, a.c_ + b.c_);
    m.set_block(0, 0, a);
    m.set_block(0, a.c_, b);
    return m;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.c_) throw DimensionMismatch("vcat column mismatch");
    Matrix m(a.R_, a.r_ + b.r_, a.c_);
    m.set_block(0, 0, a);
    m.set_block(a.r_, 0, b);
    return m;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
    Matrix m(a.R_, a.r_ + b.r_, a.c_ + b.c_);
    m.set_block(0, 0, a);
    m.set_block(a.r_, a.c_, b);
    return m;
}

namespace {

// Fraction-free echelon form (Bareiss) over an integral domain; returns rank and, for
// square input, the determinant.
std::pair<int, Laurent> bareiss(const Matrix& m) {
    int nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Laurent>> a(nr, std::vector<Laurent>(nc));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) a[i][j] = m(i, j);
    Laurent prev = 1;
    int sign = 1, row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int sel = -1;
        for (int i = row; i < nr; ++i)
            if (!a[i][col].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row) {
            std::swap(a[sel], a[row]);
            sign = -sign;
        }
        for (int i = row + 1; i < nr; ++i) {
            for (int j = col + 1; j < nc; ++j) {
                Laurent v = a[row][col] * a[i][j] - a[i][col] * a[row][j];
                auto q = laurent_exact_div(v, prev);
                if (!q) throw std::logic_error("Bareiss division not exact");
                a[i][j] = *q;
            }
            a[i][col] = Laurent();
        }
        prev = a[row][col];
        ++row;
    }
    Laurent d;
    if (nr == nc) d = row == nr ? (sign < 0 ? -prev : prev) : Laurent();
    if (nr == 0 && nc == 0) d = 1;
    return {row, d};
}

}  // namespace

Laurent det(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("det of non-square matrix");
    if (m.rows() == 0) return 1;
    const RingSpec& R = m.ring();
    if (R.is_field()) {
        return with_field(R, [&](auto ops) {
            auto A = detail::to_dense(ops, m);
            using T = typename decltype(ops)::T;
            T d = ops.one();
            int n = A.r;
            for (int c = 0; c < n; ++c) {
                int sel = -1;
                for (int i = c; i < n; ++i)
                    if (!decltype(ops)::is0(A.at(i, c))) {
                        sel = i;
                        break;
                    }
                if (sel < 0) return Laurent();
                if (sel != c) {
                    for (int j = 0; j < n; ++j) std::swap(A.at(sel, j), A.at(c, j));
                    d = ops.neg(d);
                }
                d = ops.mul(d, A.at(c, c));
                T inv = ops.inv(A.at(c, c));
                for (int i = c + 1; i < n; ++i) {
                    if (decltype(ops)::is0(A.at(i, c))) continue;
                    T f = ops.mul(A.at(i, c), inv);
                    for (int j = c; j < n; ++j) ops.sub_mul(A.at(i, j), f, A.at(c, j));
                }
            }
            return ops.to(d);
        });
    }
    return R.normalize(bareiss(m).second);
}

int rank(const Matrix& m) {
    if (m.empty()) return 0;
    if (m.ring().is_field()) return with_field(m.ring(), [&](auto ops) { return detail::rank_of(detail::to_dense(ops, m)); });
    return bareiss(m).first;
}

Matrix adjugate(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("adjugate of non-square matrix");
    int n = m.rows();
    const RingSpec& R = m.ring();
    Matrix adj(R, n, n);
    if (n == 1) {
        adj.ref(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < n; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            Laurent c = det(m.rows_of(rows).cols_of(cols));
            adj.set(i, j, (i + j) % 2 ? R.neg(c) : c);
        }
    return adj;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
    const RingSpec& R = m.ring();
    int n = m.rows();
    if (R.is_field()) {
        return with_field(R, [&](auto ops) -> std::optional<Matrix> {
            auto A = detail::to_dense(ops, m);
            decltype(A) I(ops, n, n);
            for (int i = 0; i < n; ++i) I.at(i, i) = ops.one();
            if (detail::rank_of(A) < n) return std::nullopt;
            auto X = detail::solve_dense(A, I);
            return detail::from_dense(R, *X);
        });
    }
    Laurent d = det(m);
    if (!R.is_unit(d)) return std::nullopt;
    return R.inverse(d) * adjugate(m);
}

namespace {

struct SnfState {
    const RingSpec& R;
    Matrix A, U, Uinv, V, Vinv;

    void row_add(int i, int t, const Laurent& c) {  // row_i += c * row_t
        if (c.is_zero()) return;
        for (int j = 0; j < A.cols(); ++j)
            if (!A(t, j).is_zero()) A.ref(i, j) = R.add(A(i, j), R.mul(c, A(t, j)));
        for (int j = 0; j < U.cols(); ++j)
            if (!U(t, j).is_zero()) U.ref(i, j) = R.add(U(i, j), R.mul(c, U(t, j)));
        for (int k = 0; k < Uinv.rows(); ++k)
            if (!Uinv(k, i).is_zero()) Uinv.ref(k, t) = R.sub(Uinv(k, t), R.mul(c, Uinv(k, i)));
    }
    void row_swap(int i, int t) {
        if (i == t) return;
        for (int j = 0; j < A.cols(); ++j) std::swap(A.ref(i, j), A.ref(t, j));
        for (int j = 0; j < U.cols(); ++j) std::swap(U.ref(i, j), U.ref(t, j));
        for (int k = 0; k < Uinv.rows(); ++k) std::swap(Uinv.ref(k, i), Uinv.ref(k, t));
    }
    void row_scale(int t, const Laurent& u) {
        Laurent ui = R.inverse(u);
        for (int j = 0; j < A.cols(); ++j) A.ref(t, j) = R.mul(u, A(t, j));
        for (int j = 0; j < U.cols(); ++j) U.ref(t, j) = R.mul(u, U(t, j));
        for (int k = 0; k < Uinv.rows(); ++k) Uinv.ref(k, t) = R.mul(ui, Uinv(k, t));
    }
    void col_add(int j, int t, const Laurent& c) {  // col_j += c * col_t
        if (c.is_zero()) return;
        for (int i = 0; i < A.rows(); ++i)
            if (!A(i, t).is_zero()) A.ref(i, j) = R.add(A(i, j), R.mul(c, A(i, t)));
        for (int i = 0; i < V.rows(); ++i)
            if (!V(i, t).is_zero()) V.ref(i, j) = R.add(V(i, j), R.mul(c, V(i, t)));
        for (int k = 0; k < Vinv.cols(); ++k)
            if (!Vinv(j, k).is_zero()) Vinv.ref(t, k) = R.sub(Vinv(t, k), R.mul(c, Vinv(j, k)));
    }
    void col_swap(int j, int t) {
        if (j == t) return;
        for (int i = 0; i < A.rows(); ++i) std::swap(A.ref(i, j), A.ref(i, t));
        for (int i = 0; i < V.rows(); ++i) std::swap(V.ref(i, j), V.ref(i, t));
        for (int k = 0; k < Vinv.cols(); ++k) std::swap(Vinv.ref(j, k), Vinv.ref(t, k));
    }
};

}  // namespace

SmithForm smith_normal_form(const Matrix& m) {
    const RingSpec& R = m.ring();
    if (!R.is_euclidean())
        throw UnsupportedRing("Smith normal form over " + R.name() + " (not a PID); route through Q[z,z^-1]");
    int nr = m.rows(), nc = m.cols();
    SnfState s{R, m, Matrix::identity(R, nr), Matrix::identity(R, nr), Matrix::identity(R, nc), Matrix::identity(R, nc)};
    int t = 0;
    for (; t < std::min(nr, nc); ++t) {
        // Pivot of minimal Euclidean size, row-major tie-break.
        int bi = -1, bj = -1;
        std::pair<long, mpz_class> best;
        for (int i = t; i < nr; ++i)
            for (int j = t; j < nc; ++j) {
                if (s.A(i, j).is_zero()) continue;
                auto nrm = R.norm(s.A(i, j));
                if (bi < 0 || nrm < best) {
                    best = nrm;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        s.row_swap(bi, t);
        s.col_swap(bj, t);
        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < nr; ++i) {
                if (s.A(i, t).is_zero()) continue;
                auto [q, r] = R.divmod(s.A(i, t), s.A(t, t));
                s.row_add(i, t, R.neg(q));
                if (!r.is_zero()) {
                    s.row_swap(i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < nc; ++j) {
                if (s.A(t, j).is_zero()) continue;
                auto [q, r] = R.divmod(s.A(t, j), s.A(t, t));
                s.col_add(j, t, R.neg(q));
                if (!r.is_zero()) {
                    s.col_swap(j, t);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility chain: pull in any row with an entry the pivot does not divide.
            int bad = -1;
            for (int i = t + 1; i < nr && bad < 0; ++i)
                for (int j = t + 1; j < nc; ++j)
                    if (!s.A(i, j).is_zero() && !R.divide(s.A(i, j), s.A(t, t))) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            s.row_add(t, bad, Laurent(1));
        }
        s.row_scale(t, R.normalizing_unit(s.A(t, t)));
    }
    SmithForm out{s.U, s.A, s.V, s.Uinv, s.Vinv, t, {}};
    for (int i = 0; i < t; ++i) out.diagonal.push_back(s.A(i, i));
    return out;
}

std::optional<Matrix> solve(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows()) throw DimensionMismatch("solve: row mismatch");
    const RingSpec& R = A.ring();
    if (R.is_field()) {
        return with_field(R, [&](auto ops) -> std::optional<Matrix> {
            auto X = detail::solve_dense(detail::to_dense(ops, A), detail::to_dense(ops, B));
            if (!X) return std::nullopt;
            return detail::from_dense(R, *X);
        });
    }
    if (!R.is_euclidean()) throw UnsupportedRing("linear solve over " + R.name());
    SmithForm snf = smith_normal_form(A);
    Matrix UB = snf.U * B;
    Matrix Y(R, A.cols(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            if (UB(i, j).is_zero()) continue;
            if (i >= snf.rank) return std::nullopt;
            auto q = R.divide(UB(i, j), snf.diagonal[i]);
            if (!q) return std::nullopt;
            Y.ref(i, j) = *q;
        }
    return snf.V * Y;
}

Matrix kernel(const Matrix& m) {
    const RingSpec& R = m.ring();
    if (R.is_field())
        return with_field(R, [&](auto ops) { return detail::from_dense(R, detail::nullspace_dense(detail::to_dense(ops, m))); });
    SmithForm snf = smith_normal_form(m);
    std::vector<int> idx;
    for (int j = snf.rank; j < m.cols(); ++j) idx.push_back(j);
    return snf.V.cols_of(idx);
}

int signature(const Matrix& m) {
    if (!m.is_square() || m != m.transpose()) throw NotSymmetric("signature needs a symmetric matrix");
    RingKind k = m.ring().kind;
    if (k != RingKind::Rationals && k != RingKind::Integers)
        throw UnsupportedRing("signature needs rational entries");
    int n = m.rows();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j).constant();
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i;
    int sig = 0;
    while (!live.empty()) {
        int p = -1;
        for (int i : live)
            if (a[i][i] != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            int pi = -1, pj = -1;
            for (int i : live)
                for (int j : live)
                    if (pi < 0 && a[i][j] != 0) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;
            // Replace e_i by e_i + e_j: the new diagonal entry is 2 a_ij.
            for (int k2 : live) a[pi][k2] += a[pj][k2];
            for (int k2 : live) a[k2][pi] += a[k2][pj];
            continue;
        }
        sig += sgn(a[p][p]);
        std::erase(live, p);
        for (int i : live) {
            if (a[i][p] == 0) continue;
            mpq_class f = a[i][p] / a[p][p];
            for (int j : live) a[i][j] -= f * a[p][j];
        }
    }
    return sig;
}

std::vector<int> complement_indices(const Matrix& basis) {
    const RingSpec& R = basis.ring();
    int n = basis.rows();
    return with_field(R, [&](auto ops) {
        auto B = detail::to_dense(ops, Matrix::hcat(basis, Matrix::identity(R, n)));
        auto piv = detail::rref(B);
        std::vector<int> out;
        for (int p : piv)
            if (p >= basis.cols()) out.push_back(p - basis.cols());
        return out;
    });
}

Matrix augment(const Matrix& m) {
    const RingSpec& R = m.ring();
    RingSpec T = R.kind == RingKind::IntLaurent ? RingSpec::integers() : RingSpec::rationals();
    if (!R.is_laurent()) return m;
    Matrix out(T, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.set(i, j, Laurent(m(i, j).eval(1)));
    return out;
}

}  // namespace dlt
