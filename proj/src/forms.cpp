#include "dlt/forms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "dlt/errors.hpp"
#include "dlt/linear_system.hpp"
#include "dlt/poly.hpp"

namespace dlt {

namespace {

const RingSpec QQ = RingSpec::rationals();

Matrix gram(const Matrix& A, const Matrix& Phi, const Matrix& B) { return A.adjoint() * Phi * B; }

// Greedy choice of independent columns.
Matrix column_basis(const Matrix& M) {
    std::vector<int> keep;
    int r = 0;
    for (int j = 0; j < M.cols(); ++j) {
        keep.push_back(j);
        int rr = rank(M.cols_of(keep));
        if (rr == r) keep.pop_back();
        else r = rr;
    }
    return M.cols_of(keep);
}

// Columns of `extra` that extend span(base), added greedily.
Matrix extend_basis(const Matrix& base, const Matrix& extra) {
    Matrix cur = base;
    std::vector<int> keep;
    int r = rank(base);
    for (int j = 0; j < extra.cols(); ++j) {
        Matrix t = Matrix::hcat(cur, extra.cols_of({j}));
        int rr = rank(t);
        if (rr > r) {
            cur = t;
            r = rr;
            keep.push_back(j);
        }
    }
    return extra.cols_of(keep);
}

Matrix intersect(const Matrix& A, const Matrix& B) {
    const RingSpec& R = A.ring();
    if (A.cols() == 0 || B.cols() == 0) return Matrix(R, A.rows(), 0);
    Matrix K = kernel(Matrix::hcat(A, -B));
    return column_basis(A * K.block(0, 0, A.cols(), K.cols()));
}

Matrix krylov(const Matrix& E, const Matrix& x) {
    Matrix K = x;
    Matrix v = x;
    int r = rank(K);
    if (r == 0) return Matrix(E.ring(), E.rows(), 0);
    for (;;) {
        v = E * v;
        Matrix t = Matrix::hcat(K, v);
        int rr = rank(t);
        if (rr == r) return K;
        K = t;
        r = rr;
    }
}

Laurent t_poly(const char* s) { return Laurent::parse(s, 't'); }

// p(t) = q(t(1-t)) for a polynomial p with p(1-t) = +-p(t) of even degree.
Laurent in_w(const Laurent& p) {
    Laurent w = t_poly("t-t^2");
    Laurent r = p;
    int m = p.hi() / 2;
    std::vector<mpq_class> c(m + 1);
    for (int j = m; j >= 0; --j) {
        Laurent wj(1);
        for (int k = 0; k < j; ++k) wj = wj * w;
        mpq_class cj = r.coeff(2 * j) * (j % 2 ? -1 : 1);
        c[j] = cj;
        r = r - Laurent(cj) * wj;
    }
    if (!r.is_zero()) throw NormalizationFailure("factor is not self-dual");
    return Laurent::from_coeffs(0, c);
}

struct Component {
    Laurent p;
    int mult = 0;
    Laurent dual;
    bool self_dual = false;
    Matrix basis;  // ambient columns spanning ker p(e)^mult
};

Laurent dual_factor(const Laurent& p) { return poly::monic(poly::compose(p, t_poly("1-t"))); }

std::vector<Component> primary_components(const Matrix& e) {
    std::vector<Component> out;
    if (e.rows() == 0) return out;
    for (auto& [p, m] : poly::factor(poly::charpoly(e))) {
        Component c;
        c.p = p;
        c.mult = m;
        c.dual = dual_factor(p);
        c.self_dual = c.dual == p;
        Laurent pm(1);
        for (int k = 0; k < m; ++k) pm = pm * p;
        c.basis = kernel(poly::eval_at(pm, e));
        out.push_back(c);
    }
    return out;
}

struct LevelData {
    int level;
    int eps_l;
    Matrix X, U;  // preimages and level vectors (ambient columns), U = N^{l-1} X
};

std::vector<LevelData> level_forms(const Component& c, const Matrix& e, int eps) {
    std::vector<LevelData> out;
    Matrix N = poly::eval_at(c.p, e);
    Matrix kerN = kernel(N);
    int d = c.p.hi();
    Matrix Nl = Matrix::identity(QQ, e.rows());  // N^{l-1}
    for (int l = 1; l <= c.mult; ++l) {
        Matrix S = intersect(Nl * c.basis, kerN);
        Matrix Rl = intersect(N * Nl * c.basis, kerN);
        if (S.cols() > Rl.cols()) {
            Matrix Uc = extend_basis(Rl, S);
            Matrix pre = *solve(Nl * c.basis, Uc);
            LevelData ld{l, eps * (((d * (l - 1)) % 2) ? -1 : 1), c.basis * pre, Uc};
            out.push_back(ld);
        }
        Nl = N * Nl;
    }
    return out;
}

std::string root_desc(const poly::RealRoot& r) {
    std::ostringstream os;
    if (r.exact()) os << "u=" << r.lo.get_str();
    else os << "u in (" << r.lo.get_str() << "," << r.hi.get_str() << ")";
    return os.str();
}

void add_entry(std::vector<DWEntry>& v, DWEntry e) {
    if (e.modulus) e.value = ((e.value % e.modulus) + e.modulus) % e.modulus;
    if (e.value != 0) v.push_back(std::move(e));
}

// Diagonal of a congruent diagonal form of a nonsingular symmetric rational matrix.
std::vector<mpq_class> diagonal_entries(const Matrix& G) {
    int n = G.rows();
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = G(i, j).constant();
    std::vector<mpq_class> out;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n && piv < 0; ++i)
            if (A[i][i] != 0) piv = i;
        if (piv < 0) {
            int j = -1;
            for (int c = k + 1; c < n && j < 0; ++c)
                if (A[k][c] != 0) j = c;
            if (j < 0) throw NotNonsingular("degenerate level form");
            int sgn = A[j][j] + 2 * A[k][j] != 0 ? 1 : -1;
            for (int c = 0; c < n; ++c) A[k][c] += sgn * A[j][c];
            for (int r = 0; r < n; ++r) A[r][k] += sgn * A[r][j];
            piv = k;
        }
        std::swap(A[k], A[piv]);
        for (auto& row : A) std::swap(row[k], row[piv]);
        mpq_class d = A[k][k];
        out.push_back(d);
        for (int i = k + 1; i < n; ++i) {
            mpq_class f = A[i][k] / d;
            if (f == 0) continue;
            for (int c = k; c < n; ++c) A[i][c] -= f * A[k][c];
        }
        for (int i = k + 1; i < n; ++i) A[k][i] = 0;
        for (int i = k + 1; i < n; ++i) A[i][k] = 0;
    }
    return out;
}

mpz_class rho_factor(const mpz_class& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            mpz_class diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void prime_factors(mpz_class n, std::map<mpz_class, int>& out) {
    for (unsigned long p = 2; p < 2000 && n > 1; ++p) {
        while (n % p == 0) {
            ++out[mpz_class(p)];
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        ++out[n];
        return;
    }
    mpz_class d = rho_factor(n);
    prime_factors(d, out);
    prime_factors(n / d, out);
}

// Second residues of the rational form G at every prime, as Witt classes over F_p:
// Z/2 at p = 2, (Z/2)^2 (squares, nonsquares) at p = 1 mod 4, Z/4 at p = 3 mod 4.
void residue_entries(const Laurent& comp, int level, const Matrix& G, std::vector<DWEntry>& out) {
    std::map<mpz_class, std::pair<long, long>> count;  // p -> (square units, nonsquare units)
    for (const mpq_class& a : diagonal_entries(G)) {
        mpz_class s = a.get_num() * a.get_den();
        std::map<mpz_class, int> fac;
        prime_factors(abs(s), fac);
        for (auto& [p, v] : fac) {
            if (v % 2 == 0) continue;
            mpz_class u = s;
            for (int i = 0; i < v; ++i) u /= p;
            auto& c = count[p];
            if (p == 2) {
                ++c.first;
                continue;
            }
            mpz_class r = u % p;
            if (r < 0) r += p;
            if (mpz_legendre(r.get_mpz_t(), p.get_mpz_t()) == 1) ++c.first;
            else ++c.second;
        }
    }
    for (auto& [p, c] : count) {
        int pi = static_cast<int>(p.get_si());
        std::string ps = "p=" + p.get_str();
        if (p == 2) {
            add_entry(out, {comp, level, pi, 2, c.first, ps});
        } else if (p % 4 == 1) {
            add_entry(out, {comp, level, pi, 2, c.first, ps + " square"});
            add_entry(out, {comp, level, pi, 2, c.second, ps + " nonsquare"});
        } else {
            add_entry(out, {comp, level, pi, 4, c.first - c.second, ps});
        }
    }
}

// Entries of one level form.
void level_entries(const Component& c, const LevelData& ld, const Matrix& Phi, const Matrix& e, Closure closure,
                   std::vector<DWEntry>& out, std::vector<DWEntry>& residues) {
    int d = c.p.hi();
    int n = e.rows();
    Matrix one = Matrix::identity(QQ, n);
    Matrix theta = ld.eps_l == -1 ? Laurent(2) * e - one : one;
    auto level_gram = [&](const Matrix& cmat) {
        Matrix G = gram(ld.X, Phi, cmat * theta * ld.U);
        if (G != G.transpose()) throw NormalizationFailure("level form is not symmetric");
        return G;
    };
    int krank = ld.U.cols() / d;
    // Residue fields of degree <= 2 have rational trace forms that determine the class.
    bool rational = d == 2 || (d == 1 && ld.eps_l == 1);
    if (closure == Closure::Real && rational) residue_entries(c.p, ld.level, level_gram(one), residues);
    if (d == 1) {
        // s = 1/2: trivial involution on the residue field.
        if (ld.eps_l == 1) add_entry(out, {c.p, ld.level, 0, 0, signature(level_gram(one)), "s=1/2"});
        return;
    }
    Laurent q = in_w(c.p);
    auto roots = poly::real_roots(q);
    std::vector<poly::RealRoot> places;
    for (auto& r : roots)
        if (poly::compare(r, mpq_class(1, 4)) > 0) places.push_back(r);
    if (places.empty()) {
        if (closure == Closure::Real) add_entry(out, {c.p, ld.level, -1, 2, krank, "parity"});
        return;
    }
    Matrix U = e * (one - e);
    int s1 = signature(level_gram(one));
    for (size_t j = 0; j < places.size(); ++j) {
        const auto& r = places[j];
        long v = s1;
        if (places.size() > 1) {
            Laurent sel = -(t_poly("t") - Laurent(r.lo)) * (t_poly("t") - Laurent(r.hi));
            v = (s1 + signature(level_gram(poly::eval_at(sel, U)))) / 2;
        }
        if (closure == Closure::Real) {
            add_entry(out, {c.p, ld.level, static_cast<int>(j), 0, v, root_desc(r)});
        } else {
            add_entry(out, {c.p, ld.level, static_cast<int>(2 * j), 0, v / 2, root_desc(r) + ", Im s>0"});
            add_entry(out, {c.p, ld.level, static_cast<int>(2 * j + 1), 0, v / 2, root_desc(r) + ", Im s<0"});
        }
    }
}

auto entry_key(const DWEntry& a) {
    return std::make_tuple(a.component.hi(), a.component.coeffs(), a.level, a.modulus, a.place, a.place_desc);
}

bool entry_less(const DWEntry& a, const DWEntry& b) { return entry_key(a) < entry_key(b); }
bool same_key(const DWEntry& a, const DWEntry& b) { return entry_key(a) == entry_key(b); }

std::vector<DWEntry> merged(std::vector<DWEntry> v) {
    std::sort(v.begin(), v.end(), entry_less);
    std::vector<DWEntry> sum;
    for (auto& e : v) {
        if (!sum.empty() && same_key(sum.back(), e)) sum.back().value += e.value;
        else sum.push_back(e);
    }
    std::vector<DWEntry> keep;
    for (auto& e : sum) add_entry(keep, e);
    return keep;
}

DWInvariantVector normalized(int eps, std::vector<DWEntry> v, std::vector<DWEntry> r) {
    DWInvariantVector out;
    out.eps = eps;
    out.entries = merged(std::move(v));
    out.residues = merged(std::move(r));
    return out;
}

Matrix require_rational(const SeifertForm& F) {
    if (F.ring().kind == RingKind::Rationals) return F.psi;
    if (F.ring().kind == RingKind::Integers) return F.psi.map(QQ);
    throw UnsupportedRing("invariants are computed over Q, got " + F.ring().name());
}

}  // namespace

// ---- Seifert forms -------------------------------------------------------------------

Matrix SeifertForm::symmetrised() const { return psi + Laurent(eps) * psi.adjoint(); }

SeifertForm seifert_new(const Matrix& M, int eps) {
    if (!M.is_square()) throw DimensionMismatch("Seifert matrix must be square");
    if (eps != 1 && eps != -1) throw DimensionMismatch("eps must be +1 or -1");
    SeifertForm F{M, eps};
    if (M.rows() > 0 && !M.ring().is_unit(det(F.symmetrised())))
        throw NotNonsingular("psi + eps psi^* is not invertible over " + M.ring().name());
    return F;
}

Matrix e_endomorphism(const SeifertForm& F) {
    if (F.rank() == 0) return Matrix(F.ring(), 0, 0);
    auto inv = inverse(F.symmetrised());
    if (!inv) throw NotNonsingular("psi + eps psi^* is not invertible");
    return *inv * F.psi;
}

SeifertForm hyperbolic_standard(int n, int eps, const Matrix& block) {
    const RingSpec& R = block.ring();
    if (block.rows() != n || block.cols() != n) throw DimensionMismatch("block must be n x n");
    Matrix psi(R, 2 * n, 2 * n);
    psi.set_block(0, n, block);
    return seifert_new(psi, eps);
}

SeifertForm direct_sum(const SeifertForm& a, const SeifertForm& b) {
    if (a.eps != b.eps) throw DimensionMismatch("direct sum of forms with different eps");
    return SeifertForm{Matrix::direct_sum(a.psi, b.psi), a.eps};
}

SeifertForm negate(const SeifertForm& F) { return SeifertForm{-F.psi, F.eps}; }

SeifertForm change_basis(const SeifertForm& F, const Matrix& P) {
    return seifert_new(P.adjoint() * F.psi * P, F.eps);
}

// ---- lagrangians ---------------------------------------------------------------------

bool is_lagrangian(const SeifertForm& F, const Matrix& L) {
    int n = F.rank();
    if (L.rows() != n || 2 * L.cols() != n) return false;
    if (L.cols() && rank(L) != L.cols()) return false;
    if (!gram(L, F.psi, L).is_zero()) return false;
    const RingSpec& R = F.ring();
    if (n == 0) return true;
    // e-invariance: psi vanishes on L and L is its own annihilator under phi.
    Matrix e = e_endomorphism(SeifertForm{R.is_field() ? F.psi : F.psi.map(QQ), F.eps});
    Matrix Lq = R.is_field() ? L : L.map(QQ);
    if (rank(Matrix::hcat(Lq, e * Lq)) != L.cols()) return false;
    if (!R.is_field()) {
        // Direct summand over Z: the gcd of maximal minors is 1.
        SmithForm s = smith_normal_form(L);
        for (auto& dv : s.diagonal)
            if (!R.is_unit(dv)) return false;
    }
    return true;
}

bool are_complementary(const SeifertForm& F, const Matrix& plus, const Matrix& minus) {
    if (!is_lagrangian(F, plus) || !is_lagrangian(F, minus)) return false;
    if (F.rank() == 0) return true;
    return F.ring().is_unit(det(Matrix::hcat(plus, minus)));
}

DWInvariantVector dw_invariants(const SeifertForm& F, Closure closure) {
    Matrix psi = require_rational(F);
    SeifertForm Fq{psi, F.eps};
    std::vector<DWEntry> entries, residues;
    if (F.rank() > 0) {
        Matrix Phi = Fq.symmetrised();
        Matrix e = e_endomorphism(Fq);
        for (auto& c : primary_components(e)) {
            if (!c.self_dual) continue;
            for (auto& ld : level_forms(c, e, F.eps)) level_entries(c, ld, Phi, e, closure, entries, residues);
        }
    }
    return normalized(F.eps, entries, residues);
}

DWInvariantVector witt_invariants(const SeifertForm& F) {
    DWInvariantVector v = dw_invariants(F);
    auto odd = [](std::vector<DWEntry> in) {
        std::vector<DWEntry> out;
        for (auto& e : in) {
            if (e.level % 2 == 0) continue;
            e.level = 1;
            out.push_back(e);
        }
        return out;
    };
    return normalized(F.eps, odd(v.entries), odd(v.residues));
}

DWInvariantVector DWInvariantVector::negated() const {
    auto neg = [](std::vector<DWEntry> v) {
        for (auto& e : v) e.value = -e.value;
        return v;
    };
    return normalized(eps, neg(entries), neg(residues));
}

DWInvariantVector DWInvariantVector::with_eps(int e) const {
    DWInvariantVector out = *this;
    out.eps = e;
    return out;
}

DWInvariantVector operator+(const DWInvariantVector& a, const DWInvariantVector& b) {
    if (a.eps != b.eps) throw DimensionMismatch("adding invariant vectors with different eps");
    auto cat = [](std::vector<DWEntry> x, const std::vector<DWEntry>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    return normalized(a.eps, cat(a.entries, b.entries), cat(a.residues, b.residues));
}

namespace {
bool same_entries(const std::vector<DWEntry>& a, const std::vector<DWEntry>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!same_key(a[i], b[i]) || a[i].value != b[i].value) return false;
    return true;
}
}  // namespace

bool operator==(const DWInvariantVector& a, const DWInvariantVector& b) {
    return a.eps == b.eps && same_entries(a.entries, b.entries) && same_entries(a.residues, b.residues);
}

std::string DWInvariantVector::str() const {
    std::ostringstream os;
    os << "eps=" << eps << " [";
    bool first = true;
    for (const auto* list : {&entries, &residues}) {
        for (const auto& e : *list) {
            if (!first) os << "; ";
            first = false;
            os << e.component.str('t') << " l=" << e.level << " " << e.place_desc << ": " << e.value;
            if (e.modulus) os << " mod " << e.modulus;
        }
    }
    os << "]";
    return os.str();
}

bool witt_classes_equal(const SeifertForm& a, const SeifertForm& b, WittGroup group) {
    if (a.ring().kind != RingKind::Rationals || b.ring().kind != RingKind::Rationals)
        throw UnsupportedRing("Witt class comparison is implemented over Q only");
    if (group == WittGroup::DW) return dw_invariants(a) == dw_invariants(b);
    return witt_invariants(a) == witt_invariants(b);
}

// ---- lagrangian search ---------------------------------------------------------------

namespace {

struct Budget {
    long left;
    void spend() {
        if (--left < 0) throw SearchBudgetExceeded("lagrangian search exhausted its candidate budget");
    }
};

// Integer vectors of length m by increasing height, then support size; first nonzero
// entry positive. Stops when visit returns true.
bool enumerate_vectors(int m, int max_height, const std::function<bool(const std::vector<long>&)>& visit) {
    std::vector<long> v(m, 0);
    for (int h = 1; h <= max_height; ++h) {
        for (int s = 1; s <= m; ++s) {
            // support positions via combinations, values in [-h, h] \ {0} with some |v| = h
            std::vector<int> pos(s);
            for (int i = 0; i < s; ++i) pos[i] = i;
            for (;;) {
                std::vector<long> val(s, -h);
                for (;;) {
                    bool hit = false, lead_ok = val[0] > 0, nonzero = true;
                    for (long x : val) {
                        if (x == 0) nonzero = false;
                        if (x == h || x == -h) hit = true;
                    }
                    if (hit && lead_ok && nonzero) {
                        std::fill(v.begin(), v.end(), 0);
                        for (int i = 0; i < s; ++i) v[pos[i]] = val[i];
                        if (visit(v)) return true;
                    }
                    int i = s - 1;
                    while (i >= 0 && val[i] == h) val[i--] = -h;
                    if (i < 0) break;
                    ++val[i];
                }
                int i = s - 1;
                while (i >= 0 && pos[i] == m - s + i) --i;
                if (i < 0) break;
                ++pos[i];
                for (int j = i + 1; j < s; ++j) pos[j] = pos[j - 1] + 1;
            }
        }
    }
    return false;
}

using Accept = std::function<bool(const Matrix&)>;

std::optional<mpq_class> rational_sqrt(const mpq_class& x) {
    if (x < 0) return std::nullopt;
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
}

mpq_class value(const Matrix& m) { return m.rows() ? m(0, 0).constant() : mpq_class(0); }

// Zeros of q(u + t v) for the quadratic form q = x^T S x, over Q.
std::vector<Matrix> line_zeros(const Matrix& S, const Matrix& u, const Matrix& v) {
    std::vector<Matrix> out;
    mpq_class qu = value(u.transpose() * S * u), qv = value(v.transpose() * S * v), b = value(u.transpose() * S * v);
    if (qv == 0) {
        out.push_back(v);
        if (b != 0) out.push_back(u + Laurent(mpq_class(-qu / (2 * b))) * v);
        return out;
    }
    auto r = rational_sqrt(b * b - qu * qv);
    if (!r) return out;
    out.push_back(u + Laurent(mpq_class((-b + *r) / qv)) * v);
    if (*r != 0) out.push_back(u + Laurent(mpq_class((-b - *r) / qv)) * v);
    return out;
}

// e-invariant phi-isotropic half-rank subspace of (Phi, e), passed to accept.
bool search_half(const Matrix& Phi, const Matrix& e, const Accept& accept, Budget& budget, int max_height) {
    const RingSpec& K = Phi.ring();
    int m = Phi.rows();
    if (m == 0) return accept(Matrix(K, 0, 0));
    if (m % 2) return false;
    auto try_candidate = [&](const Matrix& x) {
        budget.spend();
        Matrix X = krylov(e, x);
        if (X.cols() == 0 || 2 * X.cols() > m || !gram(X, Phi, X).is_zero()) return false;
        // Quotient X^perp / X with the induced form and endomorphism.
        Matrix perp = kernel(X.adjoint() * Phi);
        Matrix Q = extend_basis(X, perp);
        Matrix XQ = Matrix::hcat(X, Q);
        Matrix coords = *solve(XQ, e * Q);
        Matrix eQ = coords.block(X.cols(), 0, Q.cols(), Q.cols());
        Matrix PhiQ = gram(Q, Phi, Q);
        return search_half(PhiQ, eQ,
                           [&](const Matrix& Lq) { return accept(Matrix::hcat(X, Q * Lq)); }, budget,
                           max_height);
    };
    // Isotropy of the cyclic span needs at least q(x) = 0 for this form; its zeros on
    // lines through small vectors are exact candidates.
    std::optional<Matrix> S;
    if (K.kind == RingKind::Rationals) {
        Matrix theta = Phi == Phi.transpose() ? Matrix::identity(K, m) : Laurent(2) * e - Matrix::identity(K, m);
        Matrix P = Phi * theta;
        S = P + P.transpose();
    }
    return enumerate_vectors(m, max_height, [&](const std::vector<long>& v) {
        Matrix x(K, m, 1);
        for (int i = 0; i < m; ++i) x.set(i, 0, Laurent(v[i]));
        if (try_candidate(x)) return true;
        if (!S) return false;
        for (int j = 0; j < m; ++j) {
            if (v[j] != 0) continue;
            Matrix ej(K, m, 1);
            ej.set(j, 0, Laurent(1));
            for (auto& y : line_zeros(*S, x, ej))
                if (try_candidate(y)) return true;
        }
        return false;
    });
}

// e-invariant isotropic complement of the lagrangian L, or nullopt.
std::optional<Matrix> invariant_complement(const Matrix& Phi, const Matrix& e, const Matrix& L) {
    const RingSpec& K = Phi.ring();
    int m = Phi.rows(), k = L.cols();
    if (m == 0) return Matrix(K, 0, 0);
    Matrix A = *solve(L, e * L);
    // e-linear retraction P = L Q onto L: Q e = A Q, Q L = 1.
    LinearSystem sys(K);
    int q = sys.add_unknown(k, m);
    sys.add_equation({{q, Matrix::identity(K, k), e}, {q, -A, Matrix::identity(K, m)}}, Matrix(K, k, m));
    sys.add_equation({{q, Matrix::identity(K, k), L}}, Matrix::identity(K, k));
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    Matrix M = kernel((*sol)[0]);
    if (!K.has_half_unit()) return gram(M, Phi, M).is_zero() ? std::optional<Matrix>(M) : std::nullopt;
    // Shear M by a map into L so that it becomes isotropic.
    Matrix G = gram(L, Phi, M);
    Matrix S = gram(M, Phi, M);
    auto Ginv = inverse(G.transpose());
    if (!Ginv) return std::nullopt;
    Matrix shear = Laurent(mpq_class(-1, 2)) * (*Ginv * S.transpose());
    Matrix out = M + L * shear;
    if (!gram(out, Phi, out).is_zero()) return std::nullopt;
    return out;
}

Matrix saturate(const Matrix& L) {
    if (L.cols() == 0) return L;
    Matrix Lz = L;
    // clear denominators column by column
    for (int j = 0; j < L.cols(); ++j) {
        mpz_class den = 1;
        for (int i = 0; i < L.rows(); ++i) {
            mpq_class c = L(i, j).constant();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
        for (int i = 0; i < L.rows(); ++i) Lz.set(i, j, Laurent(L(i, j).constant() * den));
    }
    const RingSpec ZZ = RingSpec::integers();
    Matrix Li = Lz.map(ZZ);
    Matrix ann = kernel(Li.transpose());
    if (ann.cols() == 0) return Matrix::identity(ZZ, L.rows());
    return kernel(ann.transpose());
}

// Of a dual pair p, pbar, the plus side has root sum below deg/2.
bool plus_side(const Laurent& p, const Laurent& pbar) {
    mpq_class sp = -p.coeff(p.hi() - 1), sq = -pbar.coeff(pbar.hi() - 1);
    if (sp != sq) return sp < sq;
    return p.coeffs() < pbar.coeffs();
}

}  // namespace

std::optional<std::vector<Lagrangian>> lagrangian_search(const SeifertForm& F, SearchMode mode,
                                                         const SearchOptions& opts) {
    const RingSpec R = F.ring();
    if (R.is_laurent()) throw UnsupportedRing("lagrangian search over " + R.name());
    int n = F.rank();
    if (n % 2) return std::nullopt;
    bool integral = R.kind == RingKind::Integers;
    RingSpec K = integral ? QQ : R;
    SeifertForm Fk{integral ? F.psi.map(QQ) : F.psi, F.eps};
    if (K.kind == RingKind::Rationals) {
        DWInvariantVector obs = mode == SearchMode::Metabolic ? witt_invariants(Fk) : dw_invariants(Fk);
        if (!obs.is_zero()) return std::nullopt;
    }
    Matrix plus(K, n, 0), minus(K, n, 0);
    Budget budget{opts.budget};
    if (n > 0) {
        Matrix Phi = Fk.symmetrised();
        Matrix e = e_endomorphism(Fk);
        std::vector<Component> comps;
        if (K.kind == RingKind::Rationals) {
            comps = primary_components(e);
        } else {
            Component all;
            all.self_dual = true;
            all.basis = Matrix::identity(K, n);
            comps.push_back(all);
        }
        std::vector<Laurent> used;
        for (auto& c : comps) {
            if (!c.self_dual) {
                // K_p and K_pbar are isotropic and dual to each other.
                if (std::find(used.begin(), used.end(), c.dual) != used.end()) continue;
                if (!plus_side(c.p, c.dual)) continue;
                used.push_back(c.p);
                plus = Matrix::hcat(plus, c.basis);
                for (auto& d : comps)
                    if (d.p == c.dual) minus = Matrix::hcat(minus, d.basis);
                continue;
            }
            const Matrix& B = c.basis;
            Matrix PhiB = gram(B, Phi, B);
            Matrix eB = *solve(B, e * B);
            Matrix Lp, Lm;
            bool ok = search_half(
                PhiB, eB,
                [&](const Matrix& L) {
                    Lp = L;
                    if (mode == SearchMode::Metabolic) return true;
                    auto M = invariant_complement(PhiB, eB, L);
                    if (!M) return false;
                    Lm = *M;
                    return true;
                },
                budget, opts.max_height);
            if (!ok) {
                if (B.cols() % 2) return std::nullopt;
                throw SearchBudgetExceeded("no lagrangian found within height " + std::to_string(opts.max_height));
            }
            plus = Matrix::hcat(plus, B * Lp);
            if (mode == SearchMode::Hyperbolic) minus = Matrix::hcat(minus, B * Lm);
        }
    }
    std::vector<Lagrangian> out;
    if (integral) {
        Matrix Lp = saturate(plus);
        if (mode == SearchMode::Metabolic) {
            out.push_back({Lp, LagrangianKind::MetabolicHalf});
            return out;
        }
        Matrix Lm = saturate(minus);
        if (n > 0 && !R.is_unit(det(Matrix::hcat(Lp, Lm))))
            throw SearchBudgetExceeded("lagrangians over Q do not form a basis over Z");
        out.push_back({Lp, LagrangianKind::HyperbolicPlus});
        out.push_back({Lm, LagrangianKind::HyperbolicMinus});
        return out;
    }
    if (mode == SearchMode::Metabolic) {
        out.push_back({plus, LagrangianKind::MetabolicHalf});
    } else {
        out.push_back({plus, LagrangianKind::HyperbolicPlus});
        out.push_back({minus, LagrangianKind::HyperbolicMinus});
    }
    return out;
}

}  // namespace dlt
