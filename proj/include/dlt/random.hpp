#pragma once

#include <random>
#include <vector>

#include "dlt/structure.hpp"

namespace dlt {

using Rng = std::mt19937_64;

Matrix random_matrix(Rng& g, const RingSpec& R, int rows, int cols, int bound = 3);
// Product of random elementary matrices.
Matrix random_unimodular(Rng& g, const RingSpec& R, int n);
// Random chain map of the given degree between two complexes (not a chain map in general).
ChainMap random_graded_map(Rng& g, const ChainComplex& C, const ChainComplex& D, int degree);

// Poincare structure over a field: homology ranks h[r] (r = 0..n, made symmetric
// h[r] = h[n-r]), pairs[r] cancelling pairs between degrees r and r-1, random basis
// change and a random boundary added to psi.
Structure random_poincare(Rng& g, const RingSpec& R, int n, int eps, std::vector<int> h, std::vector<int> pairs,
                          StructureKind kind = StructureKind::Ultraquadratic);
// Same with random ranks and total rank at most max_rank.
Structure random_poincare(Rng& g, const RingSpec& R, int n, int eps, int max_rank,
                          StructureKind kind = StructureKind::Ultraquadratic);

// A stabilised, conjugated copy y of x with h: C -> C', g: C' -> C inverse up to homotopy
// and y = h psi h^* up to a random boundary.
struct RandomEquivalence {
    ChainMap h, g;
    Structure y;
};
RandomEquivalence random_equivalence(Rng& g, const Structure& x, int extra_pairs = 2);

}  // namespace dlt
