#include "dlt/random.hpp"

#include "dlt/errors.hpp"

namespace dlt {

namespace {

// Standard contractible complex with pairs[r] copies of R --1--> R in degrees (r, r-1),
// laid out over degrees lo..lo+pairs.size()-1.
ChainComplex contractible(const RingSpec& R, int lo, const std::vector<int>& pairs) {
    int m = static_cast<int>(pairs.size());
    std::vector<int> dims(m, 0);
    for (int i = 1; i < m; ++i) dims[i] += pairs[i], dims[i - 1] += pairs[i];
    ChainComplex E(R, lo, dims);
    for (int i = 1; i < m; ++i) {
        Matrix d(R, dims[i - 1], dims[i]);
        int t0 = dims[i - 1] - pairs[i];
        for (int k = 0; k < pairs[i]; ++k) d.set(t0 + k, k, 1);
        E.set_d(lo + i, d);
    }
    return E;
}

// Degreewise change of basis alpha: returns the iso C -> C' and its inverse.
std::pair<ChainMap, ChainMap> conjugate(Rng& g, const ChainComplex& C) {
    const RingSpec& R = C.ring();
    std::vector<Matrix> a, ainv;
    for (int r = C.lo(); r <= C.hi(); ++r) {
        a.push_back(random_unimodular(g, R, C.dim(r)));
        ainv.push_back(*inverse(a.back()));
    }
    ChainComplex Cp(R, C.lo(), [&] {
        std::vector<int> d;
        for (int r = C.lo(); r <= C.hi(); ++r) d.push_back(C.dim(r));
        return d;
    }());
    for (int r = C.lo() + 1; r <= C.hi(); ++r)
        Cp.set_d(r, a[r - C.lo() - 1] * C.d(r) * ainv[r - C.lo()]);
    ChainMap h(C, Cp, 0), hi(Cp, C, 0);
    for (int r = C.lo(); r <= C.hi(); ++r) {
        h.set(r, a[r - C.lo()]);
        hi.set(r, ainv[r - C.lo()]);
    }
    return {h, hi};
}

Structure with_noise(Rng& g, const Structure& x) {
    ChainMap K = random_graded_map(g, dualize(x.complex(), x.n), x.complex(), 1);
    ChainMap psi = x.psi + K.boundary();
    if (x.kind == StructureKind::SymmetricPhi0) {
        ChainMap b = K.boundary();
        psi = x.psi + b + transpose_eps(b, x.n, x.eps);
    }
    return Structure(x.n, x.eps, x.kind, psi);
}

}  // namespace

Matrix random_matrix(Rng& g, const RingSpec& R, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Matrix m(R, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, Laurent(d(g)));
    return m;
}

Matrix random_unimodular(Rng& g, const RingSpec& R, int n) {
    Matrix m = Matrix::identity(R, n);
    if (n < 2) return m;
    std::uniform_int_distribution<int> idx(0, n - 1), c(-2, 2);
    for (int k = 0; k < 3 * n; ++k) {
        int i = idx(g), j = idx(g);
        if (i == j) continue;
        Matrix e = Matrix::identity(R, n);
        e.set(i, j, Laurent(c(g)));
        m = e * m;
    }
    return m;
}

ChainMap random_graded_map(Rng& g, const ChainComplex& C, const ChainComplex& D, int degree) {
    ChainMap f(C, D, degree);
    for (int r = C.lo(); r <= C.hi(); ++r)
        if (C.dim(r) && D.dim(r + degree)) f.set(r, random_matrix(g, C.ring(), D.dim(r + degree), C.dim(r)));
    return f;
}

Structure random_poincare(Rng& g, const RingSpec& R, int n, int eps, std::vector<int> h, std::vector<int> pairs,
                          StructureKind kind) {
    if (!R.is_field()) throw NotAField("random Poincare complexes are generated over fields");
    h.resize(n + 1, 0);
    pairs.resize(n + 1, 0);
    for (int r = 0; r <= n; ++r) h[n - r] = h[r] = std::max(h[r], h[n - r]);
    // A skew middle form needs even rank.
    if (n % 2 == 0 && eps * ((n / 2) % 2 ? -1 : 1) == -1 && h[n / 2] % 2) ++h[n / 2];
    pairs[0] = 0;

    ChainComplex H(R, 0, h);
    ChainMap psi(dualize(H, n), H, 0);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 200) throw NotPoincare("could not draw a nonsingular structure");
        for (int r = 0; r <= n; ++r)
            if (h[r]) psi.set(r, random_matrix(g, R, h[r], h[n - r]));
        Structure s(n, eps, StructureKind::Ultraquadratic, psi);
        ChainMap phi = duality_map(s);
        bool ok = true;
        for (int r = 0; r <= n && ok; ++r)
            if (h[r] && !inverse(phi[r])) ok = false;
        if (ok) break;
    }
    if (kind == StructureKind::SymmetricPhi0) psi = psi + transpose_eps(psi, n, eps);

    ChainComplex E = contractible(R, 0, pairs);
    ChainComplex C = direct_sum(H, E);
    ChainMap incl = inclusion_first(H, E);
    Structure base(n, eps, kind, psi);
    Structure x = pushforward(incl, base);
    auto [a, ainv] = conjugate(g, C);
    (void)ainv;
    return with_noise(g, pushforward(a, x));
}

Structure random_poincare(Rng& g, const RingSpec& R, int n, int eps, int max_rank, StructureKind kind) {
    std::uniform_int_distribution<int> u(0, 2);
    for (;;) {
        std::vector<int> h(n + 1), pairs(n + 1, 0);
        for (int r = 0; 2 * r <= n; ++r) h[r] = h[n - r] = u(g);
        for (int r = 1; r <= n; ++r) pairs[r] = u(g) % 2 + (u(g) == 2);
        int total = 0;
        for (int r = 0; r <= n; ++r) total += h[r] + 2 * pairs[r];
        if (total == 0 || total > max_rank) continue;
        return random_poincare(g, R, n, eps, h, pairs, kind);
    }
}

RandomEquivalence random_equivalence(Rng& g, const Structure& x, int extra_pairs) {
    const ChainComplex& C = x.complex();
    std::vector<int> pairs(C.hi() - C.lo() + 1, 0);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pairs.size()) - 1);
    for (int k = 0; k < extra_pairs && pairs.size() > 1; ++k) {
        int i = pick(g);
        pairs[i == 0 ? 1 : i] += 1;
    }
    ChainComplex E = contractible(C.ring(), C.lo(), pairs);
    auto [a, ainv] = conjugate(g, direct_sum(C, E));
    ChainMap h = compose(a, inclusion_first(C, E));
    ChainMap back = compose(projection_first(C, E), ainv);
    Structure y = with_noise(g, pushforward(h, x));
    return {h, back, y};
}

}  // namespace dlt
