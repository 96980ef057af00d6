#include "dlt/reduction.hpp"

#include <algorithm>
#include <map>

#include "dlt/errors.hpp"
#include "dlt/linear_system.hpp"

namespace dlt {

namespace {

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

Matrix signed_identity(const RingSpec& R, int n, int s) {
    Matrix I = Matrix::identity(R, n);
    return s == 1 ? I : -I;
}

// Copy of g with a different (but equal) source complex.
ChainMap reseat(const ChainMap& g, const ChainComplex& src) {
    ChainMap out(src, g.tgt(), g.degree());
    for (int r = src.lo(); r <= src.hi(); ++r) out.set(r, g[r]);
    return out;
}

// Zero-differential complex keeping the degrees of H selected by keep.
template <class Pred>
ChainComplex part_of(const ChainComplex& H, Pred keep) {
    if (H.hi() < H.lo()) return ChainComplex(H.ring());
    std::vector<int> dims;
    for (int r = H.lo(); r <= H.hi(); ++r) dims.push_back(keep(r) ? H.dim(r) : 0);
    return ChainComplex(H.ring(), H.lo(), dims).trimmed();
}

// H -> part, identity on the kept degrees.
template <class Pred>
ChainMap projection_to(const ChainComplex& H, const ChainComplex& part, Pred keep) {
    ChainMap out(H, part, 0);
    for (int r = H.lo(); r <= H.hi(); ++r)
        if (keep(r) && H.dim(r)) out.set(r, Matrix::identity(H.ring(), H.dim(r)));
    return out;
}

StructuredPair zero_relative(const ChainMap& f, const Structure& base) {
    return StructuredPair(f, ChainMap::zero(dualize(f.tgt(), base.n), f.tgt(), 1), base);
}

// e on the middle homology: psi phi^-1 (ultraquadratic) or 1/2 (symmetric).
Matrix middle_e(const Structure& y, int k) {
    const RingSpec& R = y.ring();
    int m = y.complex().dim(k);
    if (y.kind == StructureKind::SymmetricPhi0) {
        if (R.kind == RingKind::PrimeField && R.p == 2) throw UnsupportedRing("symmetric reduction needs 2 invertible");
        return Matrix::scalar(R, m, Laurent(mpq_class(1, 2)));
    }
    auto inv = inverse(duality_map(y)[k]);
    if (!inv) throw NotPoincare("middle duality map is singular");
    return y.psi[k] * *inv;
}

}  // namespace

// ---- surgery ---------------------------------------------------------------------------

SurgeryObstruction surgery_obstruction(const StructuredPair& x) {
    ChainMap Phi = pair_duality_map(x);
    ChainMap eprime = cone_inclusion(Phi);
    Structure thom = thom_construction(x);
    SurgeryObstruction out;
    out.composite = compose(eprime, thom.psi);
    out.composite_t = compose(eprime, transpose_eps(thom.psi, x.n() + 1, x.eps()));
    out.witness = nullhomotopy_solve(out.composite);
    out.witness_t = nullhomotopy_solve(out.composite_t);
    out.vanishes = out.witness.has_value() && out.witness_t.has_value();
    return out;
}

SurgeryResult do_surgery(const StructuredPair& x) {
    if (!surgery_obstruction(x).vanishes) throw ObstructedSurgery("surgery obstruction does not vanish");
    int n = x.n();
    const ChainComplex &C = x.source(), &D = x.target();
    const RingSpec& R = C.ring();

    // C'_r = D_{r+1} + C_r + D^{n+1-r}
    ChainComplex Cp = suspend(mapping_cone(pair_duality_map(x)), -1);
    ChainComplex A = dualize(Cp, n);
    // trace target W_r = C_r + D^{n+1-r}
    ChainMap pf = compose(duality_map(x.base), dual_map(x.f, n));
    ChainComplex W = mapping_cone(pf);
    ChainComplex WA = dualize(W, n);
    ChainMap inc = cone_inclusion(pf);
    ChainMap g(Cp, W, 0);
    for (int r = Cp.lo(); r <= Cp.hi(); ++r) {
        int d1 = D.dim(r + 1), c0 = C.dim(r), ds = D.dim(n + 1 - r);
        Matrix m(R, W.dim(r), Cp.dim(r));
        if (c0) m.set_block(0, d1, Matrix::identity(R, c0));
        if (ds) m.set_block(c0, d1 + c0, signed_identity(R, ds, sign_pow(r - 1)));
        g.set(r, m);
    }

    // unknowns psi' (a cycle) and the trace's relative term
    LinearSystem L(R);
    std::map<int, int> pv, dv;
    int lo = std::min({Cp.lo(), A.lo(), W.lo(), WA.lo()}) - 1;
    int hi = std::max({Cp.hi(), A.hi(), W.hi(), WA.hi()}) + 1;
    for (int r = lo; r <= hi; ++r) {
        pv[r] = L.add_unknown(Cp.dim(r), A.dim(r));
        dv[r] = L.add_unknown(W.dim(r + 1), WA.dim(r));
    }
    for (int r = lo + 1; r <= hi; ++r) {
        if (Cp.dim(r - 1) && A.dim(r))
            L.add_equation({{pv[r], Cp.d(r), Matrix::identity(R, A.dim(r))},
                            {pv[r - 1], -Matrix::identity(R, Cp.dim(r - 1)), A.d(r)}},
                           Matrix(R, Cp.dim(r - 1), A.dim(r)));
        if (W.dim(r) && WA.dim(r))
            L.add_equation({{dv[r], W.d(r + 1), Matrix::identity(R, WA.dim(r))},
                            {dv[r - 1], Matrix::identity(R, W.dim(r)), WA.d(r)},
                            {pv[r], g[r], g[n - r].adjoint()}},
                           inc[r] * x.base.psi[r] * inc[n - r].adjoint());
    }
    auto sol = L.solve();
    if (!sol) throw ObstructedSurgery("no effect structure admits a trace");

    ChainMap psi(A, Cp, 0);
    for (int r = A.lo(); r <= A.hi(); ++r) psi.set(r, (*sol)[pv[r]]);
    ChainMap delta(WA, W, 1);
    for (int r = WA.lo(); r <= WA.hi(); ++r) delta.set(r, (*sol)[dv[r]]);
    Structure effect(n, x.eps(), x.base.kind, psi);
    Structure base = direct_sum(x.base, -effect);
    StructuredPair trace(reseat(hstack(inc, g), base.complex()), delta, base);
    return {effect, trace};
}

// ---- reduction -------------------------------------------------------------------------

ReductionTrace reduce(const Structure& x, const ReduceOptions& opts) {
    const RingSpec& R = x.ring();
    if (!R.is_field()) throw NotAField("reduce needs field coefficients, got " + R.name());
    if (!is_poincare(x)) throw NotPoincare("input structure is not Poincare");
    int n = x.n;
    ReductionTrace out;
    out.input = x;
    bool even = n % 2 == 0;
    int k = n / 2;

    if (x.complex().total_rank() == 0) {
        if (even) out.output = SeifertForm{Matrix(R, 0, 0), sign_pow(k) * x.eps};
        out.representative = x;
        return out;
    }

    Splitting S = split(x.complex());
    Structure y = pushforward(S.p, x);
    const ChainComplex& H = S.H;
    auto above = [n](int r) { return 2 * r > n; };
    auto below = [n](int r) { return 2 * r < n; };
    ChainComplex Dp = part_of(H, above), Dm = part_of(H, below);
    ChainMap fp = compose(projection_to(H, Dp, above), S.p);
    ChainMap fm = compose(projection_to(H, Dm, below), S.p);

    ReductionStep step{zero_relative(fp, x), zero_relative(fm, x), {}, {}, {}, {}};
    step.obstruction_plus = surgery_obstruction(step.plus);
    step.obstruction_minus = surgery_obstruction(step.minus);
    if (opts.compute_effects) {
        step.effect_plus = do_surgery(step.plus);
        step.effect_minus = do_surgery(step.minus);
    }
    out.steps.push_back(step);

    if (!even) {
        Structure zero = Structure::zero(ChainComplex(R), n, x.eps, x.kind);
        Structure base = direct_sum(x, -zero);
        DoubleCobordismCertificate cert{x, zero, zero_relative(reseat(fp, base.complex()), base),
                                        zero_relative(reseat(fm, base.complex()), base)};
        out.representative = zero;
        out.certificates.push_back(cert);
        return out;
    }

    // Middle piece (H_k, psi_k) and the Seifert form whose k-fold skew-suspension it is.
    int m = H.dim(k);
    Matrix psik = m ? y.psi[k] : Matrix(R, 0, 0);
    int eps_out = sign_pow(k) * x.eps;
    auto suspended = [&](const SeifertForm& F) {
        ChainComplex C0 = ChainComplex::concentrated(R, 0, m);
        ChainMap psi0(dualize(C0, 0), C0, 0);
        psi0.set(0, F.psi);
        Structure s(0, F.eps, x.kind, psi0);
        for (int i = 0; i < k; ++i) s = skew_suspend(s);
        return s;
    };
    SeifertForm F0{psik, eps_out};
    Structure rep = suspended(F0);
    if (m && !(rep.psi[k] == psik)) {
        F0.psi = -psik;
        rep = suspended(F0);
    }
    if (m && x.kind == StructureKind::Ultraquadratic) F0 = seifert_new(F0.psi, eps_out);
    out.output = F0;
    out.representative = rep;

    const ChainComplex& M = rep.complex();
    Structure base = direct_sum(x, -rep);
    const ChainComplex& B = base.complex();
    Matrix e = m ? middle_e(y, k) : Matrix(R, 0, 0);
    ChainComplex Ep = direct_sum(M, Dp), Em = direct_sum(M, Dm);
    ChainMap gp(B, Ep, 0), gm(B, Em, 0);
    for (int r = B.lo(); r <= B.hi(); ++r) {
        Matrix p = S.p[r];
        int c = x.complex().dim(r);
        Matrix a(R, Ep.dim(r), B.dim(r)), b(R, Em.dim(r), B.dim(r));
        if (r == k && m) {
            a.set_block(0, 0, p);
            a.set_block(0, c, Matrix::identity(R, m));
            b.set_block(0, 0, (Matrix::identity(R, m) - e) * p);
            b.set_block(0, c, -e);
        } else if (above(r) && Dp.dim(r)) {
            a.set_block(0, 0, p);
        } else if (below(r) && Dm.dim(r)) {
            b.set_block(0, 0, p);
        }
        gp.set(r, a);
        gm.set(r, b);
    }
    out.certificates.push_back({x, rep, zero_relative(gp, base), zero_relative(gm, base)});
    return out;
}

DWInvariantVector dl_invariants(const Structure& x) {
    if (x.ring().kind != RingKind::Rationals) throw UnsupportedRing("dl_invariants needs rational coefficients");
    ReductionTrace t = reduce(x, {false});
    if (!t.output) {
        DWInvariantVector z;
        z.eps = x.eps;
        return z;
    }
    return dw_invariants(*t.output).with_eps(x.eps);
}

}  // namespace dlt
