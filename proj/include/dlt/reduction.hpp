#pragma once

#include <optional>
#include <vector>

#include "dlt/forms.hpp"
#include "dlt/structure.hpp"

namespace dlt {

// For a pair x = (f: C -> D, delta) with Thom structure X on C(f) and e': C(f) -> Cone(Phi)
// (Phi the pair duality map, Cone(Phi) = Sigma C'): the composites e' X and e' T X.
struct SurgeryObstruction {
    ChainMap composite, composite_t;
    std::optional<ChainMap> witness, witness_t;  // d h + h d = composite
    bool vanishes = false;
};

// Propagates UnsupportedRing when no nullhomotopy solver exists.
SurgeryObstruction surgery_obstruction(const StructuredPair& x);

// Effect (C', psi') with C' = Sigma^-1 Cone(Phi), together with the trace: the Poincare pair
// C + C' -> Cone(phi f^*: D^{n-*} -> C) with base psi + (-psi').
struct SurgeryResult {
    Structure effect;
    StructuredPair trace;
};

// Throws ObstructedSurgery.
SurgeryResult do_surgery(const StructuredPair& x);

// One surgery above and one below the middle dimension on the input.
struct ReductionStep {
    StructuredPair plus, minus;  // relative terms zero
    SurgeryObstruction obstruction_plus, obstruction_minus;
    std::optional<SurgeryResult> effect_plus, effect_minus;
};

struct ReductionTrace {
    Structure input;
    std::vector<ReductionStep> steps;
    // Even dimension 2k: a Seifert form whose k-fold skew-suspension is `representative`.
    std::optional<SeifertForm> output;
    Structure representative;
    // Input against representative (even), or a double nullcobordism of the input (odd).
    std::vector<DoubleCobordismCertificate> certificates;
};

struct ReduceOptions {
    bool compute_effects = true;  // run do_surgery on both pairs of every step
};

// Field coefficients and a Poincare input. Throws NotAField, NotPoincare.
ReductionTrace reduce(const Structure& x, const ReduceOptions& opts = {});

// Over Q: dw invariants of the reduced Seifert form, tagged with the input eps; zero for odd n.
DWInvariantVector dl_invariants(const Structure& x);

}  // namespace dlt
