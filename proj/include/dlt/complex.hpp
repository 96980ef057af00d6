#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dlt/matrix.hpp"

namespace dlt {

// Bounded chain complex of free modules; d(r): C_r -> C_{r-1}. Degrees outside
// [lo, hi] have rank 0.
class ChainComplex {
public:
    ChainComplex() = default;
    explicit ChainComplex(RingSpec R) : R_(R) {}
    ChainComplex(RingSpec R, int lo, std::vector<int> dims);

    static ChainComplex concentrated(RingSpec R, int degree, int rank);

    const RingSpec& ring() const { return R_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool is_zero() const;
    int dim(int r) const;
    int total_rank() const;
    Matrix d(int r) const;
    void set_d(int r, const Matrix& m);
    // Grow the stored degree range so that it includes r.
    void extend_to(int r);
    // d o d = 0 and matrix shapes agree.
    bool is_chain() const;
    // Drop rank-0 degrees at both ends.
    ChainComplex trimmed() const;

    friend bool operator==(const ChainComplex& a, const ChainComplex& b);

private:
    RingSpec R_;
    int lo_ = 0;
    std::vector<int> dims_;
    std::map<int, Matrix> d_;
};

// Graded module map of degree k: component r is C_r -> D_{r+k}.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ChainComplex src, ChainComplex tgt, int degree = 0);

    static ChainMap identity(const ChainComplex& C);
    static ChainMap zero(const ChainComplex& C, const ChainComplex& D, int degree = 0);

    const ChainComplex& src() const { return src_; }
    const ChainComplex& tgt() const { return tgt_; }
    int degree() const { return deg_; }
    int lo() const { return src_.lo(); }
    int hi() const { return src_.hi(); }
    Matrix operator[](int r) const;
    void set(int r, const Matrix& m);
    bool is_zero() const;
    // d f = (-1)^k f d.
    bool is_chain_map() const;
    // Hom-complex differential d f - (-1)^k f d (degree k-1).
    ChainMap boundary() const;

    ChainMap operator-() const;
    friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
    friend ChainMap operator-(const ChainMap& a, const ChainMap& b) { return a + (-b); }
    friend ChainMap operator*(const Laurent& s, const ChainMap& f);
    friend bool operator==(const ChainMap& a, const ChainMap& b);

private:
    ChainComplex src_, tgt_;
    int deg_ = 0;
    std::map<int, Matrix> c_;
};

// g o f
ChainMap compose(const ChainMap& g, const ChainMap& f);

// C^{n-*}: (C^{n-*})_r = C^{n-r} with differential (-1)^r d*.
ChainComplex dualize(const ChainComplex& C, int n);
// For f: C -> D of degree 0, the dual f^{n-*}: D^{n-*} -> C^{n-*}, components f*.
ChainMap dual_map(const ChainMap& f, int n);
// (Sigma C)_r = C_{r-1}; differentials unchanged.
ChainComplex suspend(const ChainComplex& C, int times = 1);
ChainMap suspend(const ChainMap& f, int times = 1);
// Cone(f)_r = D_r + C_{r-1}, d = [[d_D, (-1)^(r-1) f], [0, d_C]].
ChainComplex mapping_cone(const ChainMap& f);
ChainComplex direct_sum(const ChainComplex& A, const ChainComplex& B);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
// (f g): A + B -> D and (f; g): C -> D + E.
ChainMap hstack(const ChainMap& f, const ChainMap& g);
ChainMap vstack(const ChainMap& f, const ChainMap& g);
// Inclusions and projections of direct_sum(A, B).
ChainMap inclusion_first(const ChainComplex& A, const ChainComplex& B);
ChainMap inclusion_second(const ChainComplex& A, const ChainComplex& B);
ChainMap projection_first(const ChainComplex& A, const ChainComplex& B);
ChainMap projection_second(const ChainComplex& A, const ChainComplex& B);
// Cone(f) -> Sigma C and D -> Cone(f).
ChainMap cone_projection(const ChainMap& f);
ChainMap cone_inclusion(const ChainMap& f);
// Complex and map with every entry sent through the ring map (e.g. z -> 1).
ChainComplex change_ring(const ChainComplex& C, RingSpec target, bool augment);

// Homology presentation: free rank plus the non-unit invariant factors.
struct ModulePresentation {
    RingSpec ring;
    int generators = 0;
    Matrix relations;  // columns are relations, in Smith form
    int free_rank = 0;
    std::vector<Laurent> torsion;
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};
ModulePresentation homology(const ChainComplex& C, int k);
bool is_acyclic(const ChainComplex& C);
bool is_quasi_iso(const ChainMap& f);

// Splitting of a complex over a field: C = B + H + K degreewise with
// 1 - i p = d s + s d, p i = 1, and H carrying the zero differential.
struct Splitting {
    ChainComplex H;  // homology with zero differential
    ChainMap i, p, s;
};
Splitting split(const ChainComplex& C);

// h of degree +1 with d h + h d = g for a degree-0 chain map g, or nullopt.
std::optional<ChainMap> nullhomotopy_solve(const ChainMap& g);
// Homotopy inverse of a quasi-isomorphism (field coefficients).
ChainMap homotopy_inverse(const ChainMap& f);

}  // namespace dlt
