#include "dlt/linking.hpp"

#include <map>
#include <set>

#include "dlt/errors.hpp"
#include "dlt/poly.hpp"

namespace dlt {

namespace {

Matrix unit_vector(const RingSpec& R, int n, int i) {
    Matrix v(R, n, 1);
    v.set(i, 0, Laurent(1));
    return v;
}

// Invariant factors computed over a Euclidean ring; Z[z,z^-1] is read over Q[z,z^-1].
SmithForm euclidean_smith(const Matrix& M) {
    if (M.ring().kind == RingKind::IntLaurent) return smith_normal_form(M.map(RingSpec::rat_laurent()));
    return smith_normal_form(M);
}

bool spans_everything(const Matrix& A) {
    int n = A.rows();
    if (n == 0) return true;
    SmithForm s = euclidean_smith(A);
    if (s.rank < n) return false;
    const RingSpec& R = s.D.ring();
    for (auto& d : s.diagonal)
        if (!R.is_unit(d)) return false;
    if (A.ring().kind == RingKind::IntLaurent) return spans_everything(augment(A));
    return true;
}

}  // namespace

TorsionValue linking_value(const LinkingForm& T, const Matrix& x, const Matrix& y) {
    Matrix num = x.adjoint() * T.numerator * adjugate(T.presentation) * y;
    return torsion_normalize(num(0, 0), det(T.presentation), T.pair);
}

TorsionValue linking_value(const LinkingForm& T, int i, int j) {
    int n = T.generators();
    return linking_value(T, unit_vector(T.ring(), n, i), unit_vector(T.ring(), n, j));
}

bool linking_symmetric(const LinkingForm& T) {
    int n = T.generators();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            TorsionValue a = linking_value(T, i, j), b = linking_value(T, j, i).conj();
            if (T.eps == -1) b = -b;
            if (a != b) return false;
        }
    return true;
}

LinkingForm linking_new(const Matrix& M, LocPair pair, int eps, std::optional<Matrix> Q) {
    const RingSpec R = pair.ring();
    if (!M.is_square()) throw DimensionMismatch("presentation must be square");
    if (eps != 1 && eps != -1) throw DimensionMismatch("eps must be +1 or -1");
    LinkingForm T;
    T.pair = pair;
    T.presentation = M.map(R);
    T.numerator = Q ? Q->map(R) : Matrix::identity(R, M.rows());
    T.eps = eps;
    if (T.numerator.rows() != M.rows() || !T.numerator.is_square())
        throw DimensionMismatch("numerator must match the presentation");
    Laurent d = det(T.presentation);
    if (d.is_zero()) throw SingularPresentation("det(M) = 0");
    if (!pair.in_S(d)) throw DenominatorNotInS("det(M) = " + d.str() + " is not in S");
    if (!linking_symmetric(T)) throw SymmetryViolation("lambda != eps lambda^ on generators");
    // Adjoint T -> T^: x -> conj(x)^T Q M^-1 lands onto coker(M^T) iff Q^T and M^T span.
    if (!spans_everything(Matrix::hcat(T.numerator.transpose(), T.presentation.transpose())))
        throw SingularPresentation("adjoint of the pairing is not onto");
    return T;
}

std::vector<Laurent> presentation_invariants(const LinkingForm& T) {
    std::vector<Laurent> out;
    if (T.generators() == 0) return out;
    SmithForm s = euclidean_smith(T.presentation);
    const RingSpec& R = s.D.ring();
    for (auto& d : s.diagonal)
        if (!R.is_unit(d)) out.push_back(R.mul(d, R.normalizing_unit(d)));
    return out;
}

LinkingForm direct_sum(const LinkingForm& a, const LinkingForm& b) {
    if (a.pair != b.pair || a.eps != b.eps) throw DimensionMismatch("direct sum of unlike linking forms");
    LinkingForm T = a;
    T.presentation = Matrix::direct_sum(a.presentation, b.presentation);
    T.numerator = Matrix::direct_sum(a.numerator, b.numerator);
    return T;
}

namespace {

using Lagrangians = std::optional<std::vector<LinkingLagrangian>>;

Lagrangians pack(SearchMode mode, std::vector<Matrix> gens) {
    std::vector<LinkingLagrangian> out;
    if (mode == SearchMode::Metabolic) {
        out.push_back({gens[0], LagrangianKind::MetabolicHalf});
    } else {
        out.push_back({gens[0], LagrangianKind::HyperbolicPlus});
        out.push_back({gens[1], LagrangianKind::HyperbolicMinus});
    }
    return out;
}

// Finite abelian group prod Z/d_i with the pairing on its basis.
struct FiniteGroup {
    std::vector<long> d;
    std::vector<std::vector<mpq_class>> lam;  // lam[i][j] = lambda(b_i, b_j) mod 1
    long order = 1;

    std::vector<long> coords(long x) const {
        std::vector<long> c(d.size());
        for (size_t i = 0; i < d.size(); ++i) {
            c[i] = x % d[i];
            x /= d[i];
        }
        return c;
    }
    long index(const std::vector<long>& c) const {
        long x = 0;
        for (size_t i = d.size(); i-- > 0;) x = x * d[i] + ((c[i] % d[i]) + d[i]) % d[i];
        return x;
    }
    long add(long a, long b) const {
        auto ca = coords(a), cb = coords(b);
        for (size_t i = 0; i < d.size(); ++i) ca[i] += cb[i];
        return index(ca);
    }
    bool pairs_to_zero(long a, long b) const {
        auto ca = coords(a), cb = coords(b);
        mpq_class s = 0;
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = 0; j < d.size(); ++j) s += ca[i] * cb[j] * lam[i][j];
        mpz_class f = s.get_num() / s.get_den();
        return s == mpq_class(f);
    }
};

using Subgroup = std::vector<bool>;

Lagrangians search_integers(const LinkingForm& T, SearchMode mode, const LinkingSearchOptions& opts) {
    int n = T.generators();
    const RingSpec& R = T.ring();
    SmithForm s = smith_normal_form(T.presentation);
    FiniteGroup G;
    std::vector<Matrix> basis;
    for (int i = 0; i < n; ++i) {
        mpz_class di = abs(s.D(i, i).constant().get_num());
        if (di == 1) continue;
        if (G.order > opts.max_order / di) throw SearchBudgetExceeded("group order above the enumeration bound");
        G.d.push_back(di.get_si());
        G.order *= di.get_si();
        basis.push_back(s.Uinv.cols_of({i}));
    }
    int k = static_cast<int>(basis.size());
    G.lam.assign(k, std::vector<mpq_class>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            TorsionValue v = linking_value(T, basis[i], basis[j]);
            G.lam[i][j] = mpq_class(v.num.constant() / v.den.constant());
        }
    if (G.order == 1) return pack(mode, {Matrix(R, n, 0), Matrix(R, n, 0)});
    long root = 1;
    while (root * root < G.order) ++root;
    if (root * root != G.order) return std::nullopt;

    auto to_vector = [&](long x) {
        auto c = G.coords(x);
        Matrix v(R, n, 1);
        for (int i = 0; i < k; ++i) v = v + Laurent(c[i]) * basis[i];
        return v;
    };
    auto generators = [&](const Subgroup& S) {
        Subgroup span(G.order, false);
        span[0] = true;
        Matrix out(R, n, 0);
        for (long x = 0; x < G.order; ++x) {
            if (!S[x] || span[x]) continue;
            std::vector<long> members;
            for (long y = 0; y < G.order; ++y)
                if (span[y]) members.push_back(y);
            for (long y : members) {
                long z = y;
                do {
                    z = G.add(z, x);
                    span[z] = true;
                } while (z != y);
            }
            out = Matrix::hcat(out, to_vector(x));
        }
        return out;
    };

    // Isotropic subgroups grow one element at a time through isotropic subgroups.
    std::set<Subgroup> seen;
    std::vector<Subgroup> frontier, lagrangians;
    Subgroup zero(G.order, false);
    zero[0] = true;
    frontier.push_back(zero);
    seen.insert(zero);
    long visited = 0;
    while (!frontier.empty()) {
        Subgroup S = frontier.back();
        frontier.pop_back();
        if (++visited > opts.budget) throw SearchBudgetExceeded("linking lagrangian search budget exhausted");
        long size = std::count(S.begin(), S.end(), true);
        if (size == root) {
            lagrangians.push_back(S);
            if (mode == SearchMode::Metabolic) return pack(mode, {generators(S)});
            for (auto& L : lagrangians) {
                bool meet = false;
                for (long x = 1; x < G.order && !meet; ++x) meet = L[x] && S[x];
                if (!meet && &L != &lagrangians.back()) return pack(mode, {generators(L), generators(S)});
            }
            continue;
        }
        for (long g = 1; g < G.order; ++g) {
            if (S[g] || !G.pairs_to_zero(g, g)) continue;
            bool ok = true;
            for (long x = 1; x < G.order && ok; ++x)
                if (S[x]) ok = G.pairs_to_zero(g, x) && G.pairs_to_zero(x, g);
            if (!ok) continue;
            Subgroup S2 = S;
            for (long x = 0; x < G.order; ++x) {
                if (!S[x]) continue;
                long z = x;
                do {
                    z = G.add(z, g);
                    S2[z] = true;
                } while (z != x);
            }
            if (seen.insert(S2).second) frontier.push_back(S2);
        }
    }
    return std::nullopt;
}

Lagrangians search_laurent(const LinkingForm& T, SearchMode mode, const LinkingSearchOptions& opts) {
    int n = T.generators();
    const RingSpec& R = T.ring();
    SmithForm s = smith_normal_form(T.presentation);
    std::vector<Laurent> d;
    std::vector<Matrix> basis;
    for (int i = 0; i < n; ++i) {
        Laurent di = s.D(i, i);
        if (R.is_unit(di)) continue;
        d.push_back(poly::monic(di.shifted(-di.lo())));
        basis.push_back(s.Uinv.cols_of({i}));
    }
    int total = 0;
    std::vector<std::vector<Laurent>> divisors;
    for (auto& di : d) {
        total += di.hi();
        std::vector<Laurent> ds{Laurent(1)};
        for (auto& [p, m] : poly::factor(di)) {
            std::vector<Laurent> next;
            for (auto& x : ds) {
                Laurent acc = x;
                for (int e = 0; e <= m; ++e) {
                    next.push_back(acc);
                    acc = acc * p;
                }
            }
            ds = next;
        }
        divisors.push_back(ds);
    }
    if (total % 2) return std::nullopt;
    int k = static_cast<int>(d.size());
    if (k == 0) return pack(mode, {Matrix(R, n, 0), Matrix(R, n, 0)});
    std::vector<std::vector<Laurent>> lagrangians;
    std::vector<size_t> pick(k, 0);
    long visited = 0;
    for (;;) {
        if (++visited > opts.budget) throw SearchBudgetExceeded("linking lagrangian search budget exhausted");
        std::vector<Laurent> g(k);
        int dim = 0;
        for (int i = 0; i < k; ++i) {
            g[i] = divisors[i][pick[i]];
            dim += d[i].hi() - g[i].hi();
        }
        bool iso = 2 * dim == total;
        for (int i = 0; i < k && iso; ++i)
            for (int j = 0; j < k && iso; ++j)
                iso = linking_value(T, Laurent(g[i]) * basis[i], Laurent(g[j]) * basis[j]).is_zero();
        if (iso) {
            auto gens = [&](const std::vector<Laurent>& gs) {
                Matrix out(R, n, 0);
                for (int i = 0; i < k; ++i)
                    if (gs[i].hi() < d[i].hi()) out = Matrix::hcat(out, Laurent(gs[i]) * basis[i]);
                return out;
            };
            if (mode == SearchMode::Metabolic) return pack(mode, {gens(g)});
            for (auto& h : lagrangians) {
                bool complementary = true;
                for (int i = 0; i < k && complementary; ++i) {
                    Laurent l = poly::monic(poly::quo(g[i] * h[i], poly::gcd(g[i], h[i])));
                    complementary = l == d[i];
                }
                if (complementary) return pack(mode, {gens(h), gens(g)});
            }
            lagrangians.push_back(g);
        }
        int i = 0;
        while (i < k && ++pick[i] == divisors[i].size()) pick[i++] = 0;
        if (i == k) break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<LinkingLagrangian>> linking_lagrangian_search(const LinkingForm& T, SearchMode mode,
                                                                       const LinkingSearchOptions& opts) {
    switch (T.pair.kind) {
        case LocKind::IntegersNonzero: return search_integers(T, mode, opts);
        case LocKind::RationalP: return search_laurent(T, mode, opts);
        case LocKind::AlexanderP: break;
    }
    throw UnsupportedRing("linking lagrangian search over (Z[z,z^-1], P); use the rational pair");
}

}  // namespace dlt
