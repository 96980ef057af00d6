#include "dlt/linear_system.hpp"

#include "dlt/errors.hpp"

namespace dlt {

int LinearSystem::add_unknown(int rows, int cols) {
    shape_.push_back({rows, cols});
    off_.push_back(nvar_);
    nvar_ += rows * cols;
    return static_cast<int>(shape_.size()) - 1;
}

void LinearSystem::add_equation(const std::vector<Term>& terms, const Matrix& rhs) {
    Eq e{{}, rhs};
    for (const auto& t : terms) {
        auto [r, c] = shape_.at(t.var);
        if (t.left.cols() != r || t.right.rows() != c || t.left.rows() != rhs.rows() || t.right.cols() != rhs.cols())
            throw DimensionMismatch("linear system term has the wrong shape");
        if (r == 0 || c == 0 || t.left.is_zero() || t.right.is_zero()) continue;
        e.terms.push_back(t);
    }
    if (rhs.rows() == 0 || rhs.cols() == 0) return;
    eqs_.push_back(std::move(e));
}

std::optional<std::vector<Matrix>> LinearSystem::solve() const {
    int neq = 0;
    for (const auto& e : eqs_) neq += e.rhs.rows() * e.rhs.cols();
    Matrix A(R_, neq, nvar_), b(R_, neq, 1);
    int row = 0;
    for (const auto& e : eqs_) {
        int m = e.rhs.rows();
        // Column-major vec: vec(L X R)[j*m + i] = sum_{p,q} L(i,p) R(q,j) X(p,q).
        for (const auto& t : e.terms) {
            int xr = shape_[t.var].first;
            int base = off_[t.var];
            for (int j = 0; j < t.right.cols(); ++j)
                for (int q = 0; q < t.right.rows(); ++q) {
                    const Laurent& rq = t.right(q, j);
                    if (rq.is_zero()) continue;
                    for (int i = 0; i < m; ++i)
                        for (int p = 0; p < xr; ++p) {
                            const Laurent& lp = t.left(i, p);
                            if (lp.is_zero()) continue;
                            int col = base + q * xr + p;
                            A.set(row + j * m + i, col, A(row + j * m + i, col) + lp * rq);
                        }
                }
        }
        for (int j = 0; j < e.rhs.cols(); ++j)
            for (int i = 0; i < m; ++i) b.set(row + j * m + i, 0, e.rhs(i, j));
        row += m * e.rhs.cols();
    }
    std::vector<Matrix> out;
    std::optional<Matrix> x;
    if (nvar_ == 0) {
        if (!b.is_zero()) return std::nullopt;
        x = Matrix(R_, 0, 1);
    } else {
        x = dlt::solve(A, b);
        if (!x) return std::nullopt;
    }
    for (size_t v = 0; v < shape_.size(); ++v) {
        auto [r, c] = shape_[v];
        Matrix X(R_, r, c);
        for (int q = 0; q < c; ++q)
            for (int p = 0; p < r; ++p) X.set(p, q, (*x)(off_[v] + q * r + p, 0));
        out.push_back(X);
    }
    return out;
}

}  // namespace dlt
