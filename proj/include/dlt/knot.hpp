#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlt/forms.hpp"
#include "dlt/linking.hpp"

namespace dlt {

// Seifert matrix of a (2k+1)-knot; eps = (-1)^(k+1), so classical knots have k = 0.
struct KnotRecord {
    std::string name;
    Matrix seifert;  // over Z, square
    int k = 0;
    std::string provenance;

    int eps() const { return k % 2 == 0 ? -1 : 1; }
};

// Throws NotNonsingular unless det(V + eps V^T) = +-1.
void validate_record(const KnotRecord& rec);

// det(V + eps z V^T) shifted to lowest degree 0 with positive leading coefficient. With the
// classical eps = -1 this is det(V - z V^T). Throws NormalizationFailure unless p(1) = +-1.
Laurent alexander_polynomial(const Matrix& V, int eps = -1);

// omega = exp(2 pi i num/den).
struct Angle {
    long num = 1, den = 2;
    std::string str() const;
    static Angle parse(const std::string& text);  // "k/m"; throws ParseError
};

// Signature of (1 - omega) V + (1 - conj omega) V^T, exact. Throws OmegaIsOne.
int levine_tristram(const Matrix& V, Angle omega);

// Presentation V + eps z V^T over (Z[z,z^-1], P), numerator (1 - z) I; (-eps)-hermitian.
LinkingForm blanchfield_from_seifert(const Matrix& V, int eps = -1);

enum class HyperbolicVerdict { Hyperbolic, NotHyperbolic, BudgetExceeded };

struct ObstructionReport {
    std::string name;
    Laurent alexander;
    bool alexander_is_unit_at_1 = true;
    std::vector<std::pair<Angle, int>> signature_samples;
    DWInvariantVector seifert_dw;
    HyperbolicVerdict hyperbolic_verdict = HyperbolicVerdict::NotHyperbolic;
    std::vector<Lagrangian> hyperbolic_witness;  // when Hyperbolic: over Z if refined, else over Q
    bool hyperbolic_over_z = false;
    LinkingForm blanchfield;
    bool witt_slice_obstructed = false;
    std::string witt_slice_reason;
};

// Default sample angles.
std::vector<Angle> default_angles();

ObstructionReport knot_report(const KnotRecord& rec, long budget = 20000,
                              const std::vector<Angle>& angles = default_angles());

// Fox-Milnor: p = f(z) f(z^-1) up to units, checked on the factorization over Q[z].
bool fox_milnor_holds(const Laurent& alexander);

std::string verdict_name(HyperbolicVerdict v);

}  // namespace dlt
