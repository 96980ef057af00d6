#include "dlt/correspondence.hpp"

#include "dlt/errors.hpp"

namespace dlt {

Structure seifert_to_complex(const SeifertForm& F) {
    ChainComplex C = ChainComplex::concentrated(F.ring(), 0, F.rank());
    ChainMap psi(dualize(C, 0), C, 0);
    psi.set(0, F.psi);
    return Structure(0, F.eps, StructureKind::Ultraquadratic, psi);
}

SeifertForm complex_to_seifert(const Structure& x) {
    if (x.n != 0) throw WrongDimension("expected a 0-dimensional structure, got n = " + std::to_string(x.n));
    const ChainComplex& C = x.complex();
    for (int r = C.lo(); r <= C.hi(); ++r)
        if (r != 0 && C.dim(r) != 0) throw WrongDimension("complex is not concentrated in degree 0");
    if (x.kind != StructureKind::Ultraquadratic) throw WrongDimension("expected an ultraquadratic structure");
    return seifert_new(x.psi[0], x.eps);
}

StructuredPair nullcobordism_from_lagrangian(const SeifertForm& F, const Matrix& L) {
    if (!is_lagrangian(F, L)) throw InvalidLagrangian("submodule is not a lagrangian of the form");
    const RingSpec& R = F.ring();
    Structure x = seifert_to_complex(F);
    Structure base = direct_sum(x, -Structure::zero(ChainComplex::concentrated(R, 0, 0), 0, F.eps));
    ChainComplex D = ChainComplex::concentrated(R, 0, L.cols());
    ChainMap f(base.complex(), D, 0);
    f.set(0, L.adjoint());
    ChainMap delta = ChainMap::zero(dualize(D, 0), D, 1);
    return StructuredPair(f, delta, base);
}

DoubleCobordismCertificate certificate_from_lagrangians(const SeifertForm& F, const Matrix& plus,
                                                       const Matrix& minus) {
    DoubleCobordismCertificate cert;
    cert.left = seifert_to_complex(F);
    cert.right = Structure::zero(ChainComplex::concentrated(F.ring(), 0, 0), 0, F.eps);
    cert.plus = nullcobordism_from_lagrangian(F, plus);
    cert.minus = nullcobordism_from_lagrangian(F, minus);
    return cert;
}

LinkingForm linking_form_of_complex(const Structure& x, LocPair pair) {
    if (x.n % 2 == 0) throw EvenDimension("linking forms live on odd-dimensional complexes");
    int k = (x.n - 1) / 2;
    const ChainComplex& C = x.complex();
    for (int r = C.lo(); r <= C.hi(); ++r)
        if (r != k && r != k + 1 && C.dim(r) != 0)
            throw WrongDimension("complex must live in degrees " + std::to_string(k) + " and " + std::to_string(k + 1));
    const RingSpec R = pair.ring();
    if (!(C.ring() == R)) throw UnsupportedRing("complex is over " + C.ring().name() + ", pair needs " + R.name());
    Matrix M = C.d(k + 1);
    if (C.dim(k) != C.dim(k + 1)) throw NotSAcyclic("degrees k and k+1 have different ranks");
    if (C.dim(k) == 0) return linking_new(Matrix(R, 0, 0), pair, (k % 2 ? 1 : -1) * x.eps);
    Laurent s = det(M);
    if (s.is_zero() || !pair.in_S(s)) throw NotSAcyclic("det d = " + s.str() + " is not in S");
    Structure phi = symmetrise(x);
    // phi_0 in degree k sends C^{k+1} to C_k.
    Matrix Q = phi.psi[k].adjoint();
    return linking_new(M.adjoint(), pair, (k % 2 ? 1 : -1) * x.eps, Q);
}

Structure complex_of_linking_form(const LinkingForm& T) {
    const RingSpec& R = T.ring();
    int n = T.generators();
    ChainComplex C(R, 0, {n, n});
    Matrix M = T.presentation.adjoint();
    C.set_d(1, M);
    ChainMap phi(dualize(C, 1), C, 0);
    Matrix Qs = T.numerator.adjoint();
    phi.set(0, Qs);
    // chain condition M phi_1 = -phi_0 M^*; the quotient is exact by symmetry of lambda
    Matrix rhs = -(Qs * T.presentation);
    Laurent s = det(M);
    Matrix num = adjugate(M) * rhs;
    Matrix phi1(R, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto q = R.divide(num(i, j), s);
            if (!q) throw SymmetryViolation("linking form does not lift to a chain map");
            phi1.set(i, j, *q);
        }
    phi.set(1, phi1);
    return Structure(1, -T.eps, StructureKind::SymmetricPhi0, phi);
}

}  // namespace dlt
