#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlt/matrix.hpp"

namespace dlt {

// eps-symmetric Seifert form: psi + eps psi^* is invertible over the ring.
struct SeifertForm {
    Matrix psi;
    int eps = 1;

    const RingSpec& ring() const { return psi.ring(); }
    int rank() const { return psi.rows(); }
    // phi = psi + eps psi^*
    Matrix symmetrised() const;
};

// Throws NotNonsingular unless det(M + eps M^*) is a unit.
SeifertForm seifert_new(const Matrix& M, int eps);
// e = (psi + eps psi^*)^-1 psi.
Matrix e_endomorphism(const SeifertForm& F);
// psi = [[0, block], [0, 0]].
SeifertForm hyperbolic_standard(int n, int eps, const Matrix& block);
SeifertForm direct_sum(const SeifertForm& a, const SeifertForm& b);
SeifertForm negate(const SeifertForm& F);
// P^* psi P for an invertible P.
SeifertForm change_basis(const SeifertForm& F, const Matrix& P);

enum class LagrangianKind { MetabolicHalf, HyperbolicPlus, HyperbolicMinus };

struct Lagrangian {
    Matrix inclusion;  // basis as columns
    LagrangianKind kind = LagrangianKind::MetabolicHalf;
};

// psi vanishes on L, L is e-invariant, and 0 -> L -> K -> L^* -> 0 is exact.
bool is_lagrangian(const SeifertForm& F, const Matrix& L);
// Both lagrangians and together a basis of K.
bool are_complementary(const SeifertForm& F, const Matrix& plus, const Matrix& minus);

enum class SearchMode { Metabolic, Hyperbolic };

struct SearchOptions {
    long budget = 20000;  // candidate generators tried before giving up
    int max_height = 3;   // coordinate bound for candidate generators
};

// nullopt: no lagrangian exists (decided by an obstruction). Hyperbolic mode returns
// {plus, minus}, metabolic mode a single lagrangian. Throws SearchBudgetExceeded.
std::optional<std::vector<Lagrangian>> lagrangian_search(const SeifertForm& F, SearchMode mode,
                                                         const SearchOptions& opts = {});

enum class Closure { Real, Complex };

// One entry per (component, level, place). modulus 0: integer signature datum,
// otherwise a Z/modulus-valued Witt datum over a residue field.
struct DWEntry {
    Laurent component;  // monic irreducible factor of char(e), variable t
    int level = 1;
    int place = 0;
    int modulus = 0;
    long value = 0;
    std::string place_desc;
};

struct DWInvariantVector {
    int eps = 1;
    std::vector<DWEntry> entries;   // real places and rank parities; sorted, nonzero only
    std::vector<DWEntry> residues;  // second residues at primes p (factors of degree <= 2)

    bool is_zero() const { return entries.empty() && residues.empty(); }
    DWInvariantVector negated() const;
    DWInvariantVector with_eps(int e) const;
    std::string str() const;
    friend DWInvariantVector operator+(const DWInvariantVector& a, const DWInvariantVector& b);
    friend bool operator==(const DWInvariantVector& a, const DWInvariantVector& b);
};

// Over Q. Throws UnsupportedRing otherwise.
DWInvariantVector dw_invariants(const SeifertForm& F, Closure closure = Closure::Real);
// Sum over odd levels: the classical (single) Witt class data.
DWInvariantVector witt_invariants(const SeifertForm& F);

enum class WittGroup { W, DW };
bool witt_classes_equal(const SeifertForm& a, const SeifertForm& b, WittGroup group);

}  // namespace dlt
