#pragma once

#include "dlt/forms.hpp"
#include "dlt/linking.hpp"
#include "dlt/structure.hpp"

namespace dlt {

// (K, psi) as a 0-dimensional ultraquadratic complex: C_0 = K^*, psi_0 = psi.
Structure seifert_to_complex(const SeifertForm& F);
// Inverse; throws WrongDimension unless n = 0 and C lives in degree 0.
SeifertForm complex_to_seifert(const Structure& x);

// 1-dimensional pair f = j^*: C -> D = L^* with zero relative term over the base
// (C, psi) + (0, 0). Throws InvalidLagrangian.
StructuredPair nullcobordism_from_lagrangian(const SeifertForm& F, const Matrix& L);
// Both pairs of a hyperbolic splitting; the other boundary is the zero complex.
DoubleCobordismCertificate certificate_from_lagrangians(const SeifertForm& F, const Matrix& plus,
                                                       const Matrix& minus);

// Middle-dimensional linking form of a (2k+1)-dimensional complex living in degrees k and
// k+1: T = coker(d^*) on C^{k+1}, lambda(x, y) = s^-1 conj(y~(phi_0 x)) with d^* y~ = s y.
// The form is (-1)^(k+1) eps-symmetric. Symmetric kinds are used as given, ultraquadratic
// ones are symmetrised first.
// Throws EvenDimension, NotSAcyclic, WrongDimension, SymmetryViolation.
LinkingForm linking_form_of_complex(const Structure& x, LocPair pair);
// The 1-dimensional (-eps)-symmetric complex A^n --M--> A^n with M = P^*, phi_0 = Q^* in degree 0.
Structure complex_of_linking_form(const LinkingForm& T);

}  // namespace dlt
