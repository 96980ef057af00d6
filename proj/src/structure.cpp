#include "dlt/structure.hpp"

#include "dlt/errors.hpp"

namespace dlt {

namespace {

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

Matrix signed_matrix(int s, const Matrix& m) { return s == 1 ? m : -m; }

// f psi f^* for f: C -> D of degree 0 and psi: C^{n-*} -> C.
ChainMap sandwich(const ChainMap& f, const ChainMap& psi, int n) {
    return compose(f, compose(psi, dual_map(f, n)));
}

bool same_structure(const Structure& a, const Structure& b) { return a == b; }

}  // namespace

bool operator==(const Structure& a, const Structure& b) {
    return a.n == b.n && a.eps == b.eps && a.kind == b.kind && a.complex() == b.complex() && a.psi == b.psi;
}

// ---- structures ----------------------------------------------------------------------

Structure::Structure(int n_, int eps_, StructureKind kind_, ChainMap psi_)
    : n(n_), eps(eps_), kind(kind_), psi(std::move(psi_)) {
    if (eps != 1 && eps != -1) throw CycleViolation("eps must be +1 or -1");
    if (psi.degree() != 0) throw CycleViolation("structure map must have degree 0");
    if (!(psi.src() == dualize(psi.tgt(), n))) throw CycleViolation("structure map must start at C^{n-*}");
    if (!psi.is_chain_map()) throw CycleViolation("structure map is not a cycle");
    if (kind == StructureKind::SymmetricPhi0 && ring().kind != RingKind::IntLaurent) {
        if (!nullhomotopy_solve(psi - transpose_eps(psi, n, eps)))
            throw CycleViolation("phi_0 - T phi_0 is not a boundary");
    }
}

Structure Structure::zero(const ChainComplex& C, int n, int eps, StructureKind kind) {
    return Structure(n, eps, kind, ChainMap::zero(dualize(C, n), C));
}

Structure Structure::operator-() const {
    Structure out = *this;
    out.psi = -psi;
    return out;
}

ChainMap transpose_eps(const ChainMap& psi, int n, int eps) {
    ChainMap out(psi.src(), psi.tgt(), 0);
    for (int r = psi.src().lo(); r <= psi.src().hi(); ++r) {
        if (psi.src().dim(r) == 0 || psi.tgt().dim(r) == 0) continue;
        out.set(r, signed_matrix(eps * sign_pow(r * (n - r)), psi[n - r].adjoint()));
    }
    return out;
}

Structure symmetrise(const Structure& x) {
    if (x.kind == StructureKind::SymmetricPhi0) return x;
    Structure out = x;
    out.kind = StructureKind::SymmetricPhi0;
    out.psi = x.psi + transpose_eps(x.psi, x.n, x.eps);
    return out;
}

ChainMap duality_map(const Structure& x) {
    if (x.kind == StructureKind::SymmetricPhi0) return x.psi;
    return x.psi + transpose_eps(x.psi, x.n, x.eps);
}

bool is_poincare(const Structure& x) { return is_quasi_iso(duality_map(x)); }

Structure direct_sum(const Structure& a, const Structure& b) {
    if (a.n != b.n || a.eps != b.eps || a.kind != b.kind)
        throw DimensionMismatch("direct sum of structures of different type");
    ChainComplex C = direct_sum(a.complex(), b.complex());
    ChainMap psi(dualize(C, a.n), C, 0);
    for (int r = psi.src().lo(); r <= psi.src().hi(); ++r) psi.set(r, Matrix::direct_sum(a.psi[r], b.psi[r]));
    Structure out;
    out.n = a.n;
    out.eps = a.eps;
    out.kind = a.kind;
    out.psi = psi;
    return out;
}

Structure pushforward(const ChainMap& h, const Structure& x) {
    ChainMap psi = sandwich(h, x.psi, x.n);
    ChainMap clean(dualize(h.tgt(), x.n), h.tgt(), 0);
    for (int r = clean.src().lo(); r <= clean.src().hi(); ++r) clean.set(r, psi[r]);
    return Structure(x.n, x.eps, x.kind, clean);
}

Structure skew_suspend(const Structure& x) {
    ChainComplex C = suspend(x.complex());
    ChainMap psi(dualize(C, x.n + 2), C, 0);
    for (int r = psi.src().lo(); r <= psi.src().hi(); ++r)
        psi.set(r, signed_matrix(sign_pow(r - 1), x.psi[r - 1]));
    return Structure(x.n + 2, -x.eps, x.kind, psi);
}

// ---- pairs ---------------------------------------------------------------------------

bool relative_condition_holds(const ChainMap& f, const ChainMap& delta, const Structure& base) {
    if (f.degree() != 0 || delta.degree() != 1) return false;
    if (!f.is_chain_map()) return false;
    if (!(f.src() == base.complex())) return false;
    if (!(delta.src() == dualize(f.tgt(), base.n)) || !(delta.tgt() == f.tgt())) return false;
    return delta.boundary() == sandwich(f, base.psi, base.n);
}

StructuredPair::StructuredPair(ChainMap f_, ChainMap delta_, Structure base_)
    : f(std::move(f_)), delta(std::move(delta_)), base(std::move(base_)) {
    if (!relative_condition_holds(f, delta, base)) throw CycleViolation("relative cycle condition fails");
}

ChainMap pair_delta_map(const StructuredPair& x) {
    const ChainComplex& D = x.target();
    ChainMap out(dualize(D, x.n() + 1), D, 0);
    for (int s = out.src().lo(); s <= out.src().hi(); ++s) out.set(s, x.delta[s - 1]);
    return out;
}

ChainMap pair_duality_map(const StructuredPair& x) {
    int n = x.n();
    ChainMap dpsi = pair_delta_map(x);
    ChainMap dphi = x.base.kind == StructureKind::SymmetricPhi0 ? dpsi : dpsi + transpose_eps(dpsi, n + 1, x.eps());
    ChainMap phi = duality_map(x.base);
    ChainComplex K = mapping_cone(x.f);
    ChainMap out(dpsi.src(), K, 0);
    for (int r = out.src().lo(); r <= out.src().hi(); ++r) {
        Matrix low = signed_matrix(sign_pow(r), phi[r - 1] * x.f[n + 1 - r].adjoint());
        out.set(r, Matrix::vcat(dphi[r], low));
    }
    return out;
}

bool is_poincare_pair(const StructuredPair& x) { return is_quasi_iso(pair_duality_map(x)); }

StructuredPair skew_suspend(const StructuredPair& x) {
    Structure base = skew_suspend(x.base);
    ChainMap f = suspend(x.f);
    ChainMap delta(dualize(f.tgt(), x.n() + 2), f.tgt(), 1);
    for (int s = delta.src().lo(); s <= delta.src().hi(); ++s)
        delta.set(s, signed_matrix(sign_pow(s + 1), x.delta[s - 1]));
    return StructuredPair(f, delta, base);
}

Structure thom_construction(const StructuredPair& x) {
    int n = x.n();
    ChainComplex K = mapping_cone(x.f);
    ChainMap dpsi = pair_delta_map(x);
    const ChainMap& psi = x.base.psi;
    const ChainComplex &C = x.source(), &D = x.target();
    ChainMap X(dualize(K, n + 1), K, 0);
    for (int r = X.src().lo(); r <= X.src().hi(); ++r) {
        // (K^{n+1-*})_r = D^{n+1-r} + C^{n-r}  ->  K_r = D_r + C_{r-1}
        Matrix m(K.ring(), K.dim(r), X.src().dim(r));
        int dcols = D.dim(n + 1 - r);
        m.set_block(0, 0, dpsi[r]);
        if (C.dim(r - 1) && dcols)
            m.set_block(D.dim(r), 0, signed_matrix(sign_pow(r), psi[r - 1] * x.f[n + 1 - r].adjoint()));
        X.set(r, m);
    }
    return Structure(n + 1, x.eps(), x.base.kind, X);
}

// ---- glueing -------------------------------------------------------------------------

StructuredPair glue(const StructuredPair& x, const Structure& left, const Structure& mid, const StructuredPair& y,
                    const Structure& right) {
    int n = x.n();
    if (!same_structure(x.base, direct_sum(left, -mid)))
        throw BoundaryMismatch("first pair does not bound psi + (-psi')");
    if (!same_structure(y.base, direct_sum(mid, -right)))
        throw BoundaryMismatch("second pair does not bound psi' + (-psi'')");
    const ChainComplex &C = left.complex(), &Cm = mid.complex(), &Cr = right.complex();
    const ChainComplex &D = x.target(), &Dp = y.target();
    const RingSpec& R = D.ring();

    ChainMap f1 = compose(x.f, inclusion_first(C, Cm)), f2 = compose(x.f, inclusion_second(C, Cm));
    ChainMap g2 = compose(y.f, inclusion_first(Cm, Cr)), g3 = compose(y.f, inclusion_second(Cm, Cr));
    ChainMap F = vstack(f2, g2);
    ChainComplex U = mapping_cone(F);
    ChainMap iota = cone_inclusion(F);
    ChainMap fU = compose(iota, direct_sum(f1, g3));
    Structure base = direct_sum(left, -right);

    ChainMap H0 = compose(iota, compose(direct_sum(x.delta, y.delta), dual_map(iota, n)));

    // k: C' -> U of degree 1 into the cone coordinate, with dk + kd = iota F, and the
    // matching kappa: U^{n-*} -> C'^{n-*} with d kappa + kappa d = (iota F)^*.
    ChainMap k(Cm, U, 1);
    for (int q = Cm.lo(); q <= Cm.hi(); ++q) {
        if (!Cm.dim(q)) continue;
        Matrix m(R, U.dim(q + 1), Cm.dim(q));
        m.set_block(D.dim(q + 1) + Dp.dim(q + 1), 0, signed_matrix(sign_pow(q), Matrix::identity(R, Cm.dim(q))));
        k.set(q, m);
    }
    ChainComplex Ud = dualize(U, n);
    ChainMap kappa(Ud, dualize(Cm, n), 1);
    for (int r = Ud.lo(); r <= Ud.hi(); ++r)
        if (Ud.dim(r) && Cm.dim(n - r - 1)) kappa.set(r, signed_matrix(sign_pow(r + 1), k[n - r - 1].adjoint()));
    ChainMap a = compose(iota, compose(inclusion_first(D, Dp), f2));
    ChainMap b = compose(iota, compose(inclusion_second(D, Dp), g2));
    const ChainMap& pm = mid.psi;
    ChainMap X = compose(k, compose(pm, dual_map(a, n))) - compose(b, compose(pm, kappa));
    return StructuredPair(fU, H0 + X, base);
}

// ---- double cobordisms ---------------------------------------------------------------

bool p_acyclic_test(const ChainComplex& C) {
    const RingSpec& R = C.ring();
    if (R.kind == RingKind::IntLaurent) return is_acyclic(change_ring(C, RingSpec::integers(), true));
    if (R.kind == RingKind::RatLaurent) return is_acyclic(change_ring(C, RingSpec::rationals(), true));
    return is_acyclic(C);
}

Verdict verify_double_cobordism(const DoubleCobordismCertificate& cert, bool require_p_acyclic) {
    const StructuredPair *pairs[2] = {&cert.plus, &cert.minus};
    const char* names[2] = {"plus", "minus"};
    Structure expected;
    try {
        expected = direct_sum(cert.left, -cert.right);
    } catch (const Error& e) {
        return Verdict::invalid(std::string("boundary structures are incompatible: ") + e.what());
    }
    for (const Structure* s : {&cert.left, &cert.right}) {
        if (s->psi.degree() != 0 || !(s->psi.src() == dualize(s->complex(), s->n)) || !s->psi.is_chain_map())
            return Verdict::invalid("boundary structure is not a cycle");
    }
    for (int k = 0; k < 2; ++k) {
        const StructuredPair& x = *pairs[k];
        std::string who = names[k];
        if (!same_structure(x.base, expected)) return Verdict::invalid(who + ": base is not psi + (-psi')");
        if (!relative_condition_holds(x.f, x.delta, x.base))
            return Verdict::invalid(who + ": relative cycle condition fails");
        ChainMap Phi = pair_duality_map(x);
        if (!Phi.is_chain_map()) return Verdict::invalid(who + ": duality map is not a chain map");
        if (!is_quasi_iso(Phi)) return Verdict::invalid(who + ": pair is not Poincare");
    }
    if (!is_quasi_iso(vstack(cert.plus.f, cert.minus.f)))
        return Verdict::invalid("not complementary: stacked map is not a quasi-isomorphism");
    if (require_p_acyclic) {
        for (const ChainComplex* C : {&cert.left.complex(), &cert.right.complex(), &cert.plus.target(),
                                      &cert.minus.target()})
            if (!p_acyclic_test(*C)) return Verdict::invalid("complex is not P-acyclic");
    }
    return Verdict::ok();
}

DoubleCobordismCertificate cobordisms_from_homotopy_equivalence(const ChainMap& h, const ChainMap& g,
                                                                const Structure& x, const Structure& y) {
    const ChainComplex &C = x.complex(), &Cp = y.complex();
    if (!(h.src() == C) || !(h.tgt() == Cp) || !(g.src() == Cp) || !(g.tgt() == C))
        throw NotEquivalence("maps do not connect the two complexes");
    if (!h.is_chain_map() || !g.is_chain_map()) throw NotEquivalence("h and g must be chain maps");
    if (!nullhomotopy_solve(compose(g, h) - ChainMap::identity(C)) ||
        !nullhomotopy_solve(compose(h, g) - ChainMap::identity(Cp)))
        throw NotEquivalence("g is not a homotopy inverse of h");
    if (x.n != y.n || x.eps != y.eps || x.kind != y.kind) throw NotEquivalence("structures of different type");
    int n = x.n;
    const RingSpec& R = C.ring();
    Structure base = direct_sum(x, -y);
    ChainMap one = ChainMap::identity(Cp);
    ChainMap fp = hstack(h, one), fm;
    ChainMap dp, dm;
    auto delta_for = [&](const ChainMap& f) {
        auto d = nullhomotopy_solve(sandwich(f, base.psi, n));
        if (!d) throw NotEquivalence("h does not carry psi to psi' up to homotopy");
        return *d;
    };
    dp = delta_for(fp);
    if (x.kind == StructureKind::Ultraquadratic) {
        if (!R.is_field()) throw NotAField("ultraquadratic certificates need field coefficients");
        ChainMap e = compose(x.psi, homotopy_inverse(duality_map(x)));
        ChainMap ome = ChainMap::identity(C) - e;
        fm = hstack(compose(h, ome), -compose(h, compose(e, g)));
        dm = delta_for(fm);
    } else {
        if (!R.has_half_unit()) throw NotEquivalence("symmetric certificates need 1/2 in the ring");
        Laurent half(mpq_class(1, 2)), quarter(mpq_class(1, 4));
        fm = hstack(half * h, -(half * one));
        dm = quarter * dp;
    }
    DoubleCobordismCertificate cert;
    cert.left = x;
    cert.right = y;
    cert.plus = StructuredPair(fp, dp, base);
    cert.minus = StructuredPair(fm, dm, base);
    return cert;
}

}  // namespace dlt
