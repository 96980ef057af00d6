#pragma once

#include <optional>
#include <vector>

#include "dlt/forms.hpp"
#include "dlt/matrix.hpp"
#include "dlt/torsion.hpp"

namespace dlt {

// eps-symmetric linking form on T = coker(M), lambda(x, y) = conj(x)^T Q M^-1 y in S^-1 A / A.
struct LinkingForm {
    LocPair pair;
    Matrix presentation;  // M, square, det in S
    Matrix numerator;     // Q, identity by default
    int eps = 1;

    const RingSpec& ring() const { return presentation.ring(); }
    int generators() const { return presentation.rows(); }
};

// Throws SingularPresentation, DenominatorNotInS or SymmetryViolation.
LinkingForm linking_new(const Matrix& M, LocPair pair, int eps, std::optional<Matrix> Q = std::nullopt);
// Value on generators i, j.
TorsionValue linking_value(const LinkingForm& T, int i, int j);
// Value on vectors (columns) of A^n.
TorsionValue linking_value(const LinkingForm& T, const Matrix& x, const Matrix& y);
bool linking_symmetric(const LinkingForm& T);
// Non-unit invariant factors of M, normalized; equal lists mean isomorphic modules.
std::vector<Laurent> presentation_invariants(const LinkingForm& T);
// Orthogonal sum.
LinkingForm direct_sum(const LinkingForm& a, const LinkingForm& b);

struct LinkingLagrangian {
    Matrix generators;  // columns in A^n
    LagrangianKind kind = LagrangianKind::MetabolicHalf;
};

struct LinkingSearchOptions {
    long budget = 100000;   // submodules examined
    long max_order = 4096;  // largest |T| enumerated over Z
};

// Over (Z, Z\0): enumeration of all subgroups. Over (Q[z,z^-1], P): submodules split along
// the invariant factor decomposition (complete when T is cyclic). nullopt when none exists
// in that space; throws SearchBudgetExceeded or UnsupportedRing.
std::optional<std::vector<LinkingLagrangian>> linking_lagrangian_search(const LinkingForm& T, SearchMode mode,
                                                                       const LinkingSearchOptions& opts = {});

}  // namespace dlt
