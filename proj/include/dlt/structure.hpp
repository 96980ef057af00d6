#pragma once

#include <optional>
#include <string>

#include "dlt/complex.hpp"

namespace dlt {

enum class StructureKind { Ultraquadratic, SymmetricPhi0 };

// n-dimensional structure on C, stored as the chain map psi: C^{n-*} -> C.
// For SymmetricPhi0 psi is the symmetric phi_0 itself.
struct Structure {
    int n = 0;
    int eps = 1;
    StructureKind kind = StructureKind::Ultraquadratic;
    ChainMap psi;

    Structure() = default;
    // Throws CycleViolation unless psi is a chain map C^{n-*} -> C.
    Structure(int n, int eps, StructureKind kind, ChainMap psi);
    static Structure zero(const ChainComplex& C, int n, int eps,
                          StructureKind kind = StructureKind::Ultraquadratic);

    const ChainComplex& complex() const { return psi.tgt(); }
    const RingSpec& ring() const { return psi.tgt().ring(); }
    Structure operator-() const;
    friend bool operator==(const Structure& a, const Structure& b);
};

// (T psi)_r = eps (-1)^{r(n-r)} psi_{n-r}^*, for any degree-0 map C^{n-*} -> C.
ChainMap transpose_eps(const ChainMap& psi, int n, int eps);
// phi = psi + T psi (identity on symmetric structures).
Structure symmetrise(const Structure& x);
ChainMap duality_map(const Structure& x);
bool is_poincare(const Structure& x);
Structure direct_sum(const Structure& a, const Structure& b);
// Pushforward h psi h^* along a chain map h: C -> D.
Structure pushforward(const ChainMap& h, const Structure& x);
// Degrees +1, n + 2, eps negated.
Structure skew_suspend(const Structure& x);

// (n+1)-dimensional pair: f: C -> D with structure x on C and delta: D^{n-*} -> D of
// degree +1 (component r is the relative term in degree r+1) such that
// d delta + delta d = f psi f^*.
struct StructuredPair {
    ChainMap f;
    ChainMap delta;
    Structure base;

    StructuredPair() = default;
    // Throws CycleViolation unless the relative condition holds.
    StructuredPair(ChainMap f, ChainMap delta, Structure base);

    const ChainComplex& source() const { return f.src(); }
    const ChainComplex& target() const { return f.tgt(); }
    int n() const { return base.n; }
    int eps() const { return base.eps; }
};

bool relative_condition_holds(const ChainMap& f, const ChainMap& delta, const Structure& base);
// The relative term reinterpreted as a degree-0 map D^{n+1-*} -> D.
ChainMap pair_delta_map(const StructuredPair& x);
// D^{n+1-*} -> C(f), components (delta phi_r ; (-1)^r phi_{r-1} f^*).
ChainMap pair_duality_map(const StructuredPair& x);
bool is_poincare_pair(const StructuredPair& x);
StructuredPair skew_suspend(const StructuredPair& x);

// Structure on the mapping cone of f. Throws CycleViolation on a sign failure.
Structure thom_construction(const StructuredPair& x);

// Union of x: C + C' -> D (base psi + (-psi')) and y: C' + C'' -> D' (base psi' + (-psi''))
// along C'. Both bases must be the stated direct sums; the split points are given by
// the ranks of C and C'. Throws BoundaryMismatch.
StructuredPair glue(const StructuredPair& x, const Structure& left, const Structure& mid,
                    const StructuredPair& y, const Structure& right);

// Pair of nullcobordisms of (C, psi) + (C', -psi').
struct DoubleCobordismCertificate {
    Structure left, right;
    StructuredPair plus, minus;
};

struct Verdict {
    bool valid = true;
    std::string reason;
    explicit operator bool() const { return valid; }
    static Verdict ok() { return {}; }
    static Verdict invalid(std::string why) { return {false, std::move(why)}; }
};

Verdict verify_double_cobordism(const DoubleCobordismCertificate& cert, bool require_p_acyclic = false);

// Certificates that (C, psi) and (C', psi') are double-cobordant, given h: C -> C'
// with homotopy inverse g and h psi h^* ~ psi'. Throws NotEquivalence.
DoubleCobordismCertificate cobordisms_from_homotopy_equivalence(const ChainMap& h, const ChainMap& g,
                                                                const Structure& x, const Structure& y);

// Over Z[z,z^-1] (or Q[z,z^-1]): the augmented complex is acyclic.
bool p_acyclic_test(const ChainComplex& C);

}  // namespace dlt
