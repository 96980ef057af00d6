#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlt/ring.hpp"

namespace dlt {

// Dense matrix over a RingSpec. Acts on column vectors; entries are kept normalized.
class Matrix {
public:
    Matrix() = default;
    Matrix(RingSpec R, int rows, int cols);

    static Matrix zero(RingSpec R, int rows, int cols) { return Matrix(R, rows, cols); }
    static Matrix identity(RingSpec R, int n);
    static Matrix scalar(RingSpec R, int n, const Laurent& s);
    static Matrix from_rows(RingSpec R, const std::vector<std::vector<Laurent>>& rows);
    static Matrix from_ints(RingSpec R, const std::vector<std::vector<long>>& rows);

    const RingSpec& ring() const { return R_; }
    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }
    const Laurent& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }
    void set(int i, int j, const Laurent& v) { a_[static_cast<size_t>(i) * c_ + j] = R_.normalize(v); }
    // Raw access; caller keeps entries normalized.
    Laurent& ref(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }

    bool is_zero() const;
    bool is_square() const { return r_ == c_; }
    Matrix transpose() const;
    // Conjugate transpose under the ring involution.
    Matrix adjoint() const;
    Matrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const Matrix& m);
    Matrix rows_of(const std::vector<int>& idx) const;
    Matrix cols_of(const std::vector<int>& idx) const;
    Matrix map(RingSpec target) const;  // re-normalize entries into another ring

    Matrix operator-() const;
    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Laurent& s, const Matrix& m);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string str() const;

    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);
    static Matrix direct_sum(const Matrix& a, const Matrix& b);

private:
    RingSpec R_;
    int r_ = 0, c_ = 0;
    std::vector<Laurent> a_;
};

Laurent det(const Matrix& m);
// Rank over the fraction field.
int rank(const Matrix& m);
// Inverse over the ring itself (nullopt if not invertible there).
std::optional<Matrix> inverse(const Matrix& m);
// Some X with A*X = B over the ring, or nullopt. Throws UnsupportedRing over Z[z,z^-1].
std::optional<Matrix> solve(const Matrix& A, const Matrix& B);
// Columns form a basis of the kernel (saturated over PIDs).
Matrix kernel(const Matrix& m);
// Adjugate and determinant, valid over any supported commutative ring.
Matrix adjugate(const Matrix& m);

struct SmithForm {
    Matrix U, D, V, Uinv, Vinv;  // U*M*V = D
    int rank = 0;
    std::vector<Laurent> diagonal;  // first `rank` nonzero invariant factors
};
SmithForm smith_normal_form(const Matrix& m);

// Signature of a symmetric rational matrix (exact symmetric elimination).
int signature(const Matrix& m);

// Over a field: columns of `basis` are extended by standard vectors to a basis of the
// ambient space; returns the indices of the added standard vectors.
std::vector<int> complement_indices(const Matrix& basis);

// z -> 1 from Z[z,z^-1] to Z (or Q[z,z^-1] to Q).
Matrix augment(const Matrix& m);

}  // namespace dlt
