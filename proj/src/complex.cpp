#include "dlt/complex.hpp"

#include "dlt/errors.hpp"
#include "dlt/linear_system.hpp"
#include "field_ops.hpp"

namespace dlt {

namespace {

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

Matrix signed_matrix(int s, const Matrix& m) { return s == 1 ? m : -m; }

// Columns of `extra` (indices) that extend the column space of `base`.
std::vector<int> extending_columns(const Matrix& base, const Matrix& extra) {
    const RingSpec& R = base.ring();
    return detail::with_field(R, [&](auto ops) {
        auto D = detail::to_dense(ops, Matrix::hcat(base, extra));
        auto piv = detail::rref(D);
        std::vector<int> out;
        for (int p : piv)
            if (p >= base.cols()) out.push_back(p - base.cols());
        return out;
    });
}

Matrix range_cols(const Matrix& m, int from, int count) { return m.block(0, from, m.rows(), count); }
Matrix range_rows(const Matrix& m, int from, int count) { return m.block(from, 0, count, m.cols()); }

std::optional<ChainMap> nullhomotopy_linear(const ChainMap& g) {
    const ChainComplex &C = g.src(), &D = g.tgt();
    const RingSpec& R = C.ring();
    int lo = C.lo(), hi = C.hi();
    LinearSystem sys(R);
    for (int r = lo; r <= hi; ++r) sys.add_unknown(D.dim(r + 1), C.dim(r));
    for (int r = lo; r <= hi; ++r) {
        std::vector<LinearSystem::Term> terms{{r - lo, D.d(r + 1), Matrix::identity(R, C.dim(r))}};
        if (r - 1 >= lo) terms.push_back({r - 1 - lo, Matrix::identity(R, D.dim(r)), C.d(r)});
        sys.add_equation(terms, g[r]);
    }
    auto x = sys.solve();
    if (!x) return std::nullopt;
    ChainMap h(C, D, 1);
    for (int r = lo; r <= hi; ++r) h.set(r, (*x)[r - lo]);
    return h;
}

}  // namespace

// ---- ChainComplex --------------------------------------------------------------------

ChainComplex::ChainComplex(RingSpec R, int lo, std::vector<int> dims) : R_(R), lo_(lo), dims_(std::move(dims)) {}

ChainComplex ChainComplex::concentrated(RingSpec R, int degree, int rank) { return ChainComplex(R, degree, {rank}); }

bool ChainComplex::is_zero() const {
    for (int x : dims_)
        if (x != 0) return false;
    return true;
}

int ChainComplex::dim(int r) const {
    if (r < lo_ || r > hi()) return 0;
    return dims_[r - lo_];
}

int ChainComplex::total_rank() const {
    int t = 0;
    for (int x : dims_) t += x;
    return t;
}

Matrix ChainComplex::d(int r) const {
    auto it = d_.find(r);
    if (it != d_.end()) return it->second;
    return Matrix(R_, dim(r - 1), dim(r));
}

void ChainComplex::set_d(int r, const Matrix& m) {
    if (m.rows() != dim(r - 1) || m.cols() != dim(r))
        throw DimensionMismatch("differential d_" + std::to_string(r) + " has the wrong shape");
    if (m.is_zero())
        d_.erase(r);
    else
        d_[r] = m.ring() == R_ ? m : m.map(R_);
}

void ChainComplex::extend_to(int r) {
    if (dims_.empty()) {
        lo_ = r;
        dims_ = {0};
        return;
    }
    while (r < lo_) {
        dims_.insert(dims_.begin(), 0);
        --lo_;
    }
    while (r > hi()) dims_.push_back(0);
}

bool ChainComplex::is_chain() const {
    for (auto& [r, m] : d_)
        if (m.rows() != dim(r - 1) || m.cols() != dim(r)) return false;
    for (int r = lo_ + 2; r <= hi(); ++r)
        if (!(d(r - 1) * d(r)).is_zero()) return false;
    return true;
}

ChainComplex ChainComplex::trimmed() const {
    int a = lo_, b = hi();
    while (a <= b && dim(a) == 0) ++a;
    while (b >= a && dim(b) == 0) --b;
    if (a > b) return ChainComplex(R_);
    std::vector<int> dims;
    for (int r = a; r <= b; ++r) dims.push_back(dim(r));
    ChainComplex out(R_, a, dims);
    for (int r = a + 1; r <= b; ++r) out.set_d(r, d(r));
    return out;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    for (int r = lo; r <= hi; ++r)
        if (a.dim(r) != b.dim(r)) return false;
    for (int r = lo; r <= hi; ++r)
        if (a.dim(r) && a.dim(r - 1) && a.d(r) != b.d(r)) return false;
    return true;
}

// ---- ChainMap ------------------------------------------------------------------------

ChainMap::ChainMap(ChainComplex src, ChainComplex tgt, int degree)
    : src_(std::move(src)), tgt_(std::move(tgt)), deg_(degree) {}

ChainMap ChainMap::identity(const ChainComplex& C) {
    ChainMap f(C, C, 0);
    for (int r = C.lo(); r <= C.hi(); ++r) f.set(r, Matrix::identity(C.ring(), C.dim(r)));
    return f;
}

ChainMap ChainMap::zero(const ChainComplex& C, const ChainComplex& D, int degree) { return ChainMap(C, D, degree); }

Matrix ChainMap::operator[](int r) const {
    auto it = c_.find(r);
    if (it != c_.end()) return it->second;
    return Matrix(src_.ring(), tgt_.dim(r + deg_), src_.dim(r));
}

void ChainMap::set(int r, const Matrix& m) {
    if (m.rows() != tgt_.dim(r + deg_) || m.cols() != src_.dim(r))
        throw DimensionMismatch("map component " + std::to_string(r) + " has the wrong shape");
    if (m.is_zero())
        c_.erase(r);
    else
        c_[r] = m;
}

bool ChainMap::is_zero() const {
    for (auto& [r, m] : c_)
        if (!m.is_zero()) return false;
    return true;
}

bool ChainMap::is_chain_map() const { return boundary().is_zero(); }

ChainMap ChainMap::boundary() const {
    ChainMap out(src_, tgt_, deg_ - 1);
    int s = sign_pow(deg_);
    for (int r = src_.lo(); r <= src_.hi(); ++r) {
        if (src_.dim(r) == 0 || tgt_.dim(r + deg_ - 1) == 0) continue;
        Matrix m = tgt_.d(r + deg_) * (*this)[r];
        Matrix n = (*this)[r - 1] * src_.d(r);
        out.set(r, s == 1 ? m - n : m + n);
    }
    return out;
}

ChainMap ChainMap::operator-() const {
    ChainMap out(src_, tgt_, deg_);
    for (auto& [r, m] : c_) out.c_[r] = -m;
    return out;
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    if (a.deg_ != b.deg_) throw DimensionMismatch("adding maps of different degree");
    ChainMap out = a;
    for (auto& [r, m] : b.c_) out.set(r, out[r] + m);
    return out;
}

ChainMap operator*(const Laurent& s, const ChainMap& f) {
    ChainMap out(f.src_, f.tgt_, f.deg_);
    for (auto& [r, m] : f.c_) out.set(r, s * m);
    return out;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    if (a.deg_ != b.deg_) return false;
    return (a - b).is_zero();
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    ChainMap out(f.src(), g.tgt(), f.degree() + g.degree());
    for (int r = f.src().lo(); r <= f.src().hi(); ++r) {
        if (f.src().dim(r) == 0) continue;
        int mid = r + f.degree();
        if (f.tgt().dim(mid) == 0 || g.tgt().dim(mid + g.degree()) == 0) continue;
        out.set(r, g[mid] * f[r]);
    }
    return out;
}

// ---- constructions -------------------------------------------------------------------

ChainComplex dualize(const ChainComplex& C, int n) {
    if (C.hi() < C.lo()) return ChainComplex(C.ring());
    int lo = n - C.hi(), hi = n - C.lo();
    std::vector<int> dims;
    for (int r = lo; r <= hi; ++r) dims.push_back(C.dim(n - r));
    ChainComplex out(C.ring(), lo, dims);
    for (int r = lo + 1; r <= hi; ++r) out.set_d(r, signed_matrix(sign_pow(r), C.d(n - r + 1).adjoint()));
    return out;
}

ChainMap dual_map(const ChainMap& f, int n) {
    if (f.degree() != 0) throw DimensionMismatch("dual_map expects a degree-0 map");
    ChainMap out(dualize(f.tgt(), n), dualize(f.src(), n), 0);
    for (int r = out.src().lo(); r <= out.src().hi(); ++r)
        if (out.src().dim(r) && out.tgt().dim(r)) out.set(r, f[n - r].adjoint());
    return out;
}

ChainComplex suspend(const ChainComplex& C, int times) {
    if (C.hi() < C.lo()) return C;
    std::vector<int> dims;
    for (int r = C.lo(); r <= C.hi(); ++r) dims.push_back(C.dim(r));
    ChainComplex out(C.ring(), C.lo() + times, dims);
    for (int r = C.lo() + 1; r <= C.hi(); ++r) out.set_d(r + times, C.d(r));
    return out;
}

ChainMap suspend(const ChainMap& f, int times) {
    ChainMap out(suspend(f.src(), times), suspend(f.tgt(), times), f.degree());
    for (int r = f.src().lo(); r <= f.src().hi(); ++r) out.set(r + times, f[r]);
    return out;
}

ChainComplex mapping_cone(const ChainMap& f) {
    if (f.degree() != 0) throw DimensionMismatch("mapping cone of a map of nonzero degree");
    const ChainComplex &C = f.src(), &D = f.tgt();
    const RingSpec& R = C.ring();
    bool ce = C.hi() < C.lo(), de = D.hi() < D.lo();
    if (ce && de) return ChainComplex(R);
    int lo = ce ? D.lo() : (de ? C.lo() + 1 : std::min(D.lo(), C.lo() + 1));
    int hi = ce ? D.hi() : (de ? C.hi() + 1 : std::max(D.hi(), C.hi() + 1));
    std::vector<int> dims;
    for (int r = lo; r <= hi; ++r) dims.push_back(D.dim(r) + C.dim(r - 1));
    ChainComplex out(R, lo, dims);
    for (int r = lo + 1; r <= hi; ++r) {
        Matrix m(R, out.dim(r - 1), out.dim(r));
        m.set_block(0, 0, D.d(r));
        m.set_block(0, D.dim(r), signed_matrix(sign_pow(r - 1), f[r - 1]));
        m.set_block(D.dim(r - 1), D.dim(r), C.d(r - 1));
        out.set_d(r, m);
    }
    return out;
}

ChainComplex direct_sum(const ChainComplex& A, const ChainComplex& B) {
    bool ae = A.hi() < A.lo(), be = B.hi() < B.lo();
    if (ae) return B;
    if (be) return A;
    int lo = std::min(A.lo(), B.lo()), hi = std::max(A.hi(), B.hi());
    std::vector<int> dims;
    for (int r = lo; r <= hi; ++r) dims.push_back(A.dim(r) + B.dim(r));
    ChainComplex out(A.ring(), lo, dims);
    for (int r = lo + 1; r <= hi; ++r) out.set_d(r, Matrix::direct_sum(A.d(r), B.d(r)));
    return out;
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    if (f.degree() != g.degree()) throw DimensionMismatch("direct sum of maps of different degree");
    ChainMap out(direct_sum(f.src(), g.src()), direct_sum(f.tgt(), g.tgt()), f.degree());
    for (int r = out.src().lo(); r <= out.src().hi(); ++r) out.set(r, Matrix::direct_sum(f[r], g[r]));
    return out;
}

ChainMap hstack(const ChainMap& f, const ChainMap& g) {
    if (f.degree() != g.degree()) throw DimensionMismatch("hstack of maps of different degree");
    ChainMap out(direct_sum(f.src(), g.src()), f.tgt(), f.degree());
    for (int r = out.src().lo(); r <= out.src().hi(); ++r) out.set(r, Matrix::hcat(f[r], g[r]));
    return out;
}

ChainMap vstack(const ChainMap& f, const ChainMap& g) {
    if (f.degree() != g.degree()) throw DimensionMismatch("vstack of maps of different degree");
    ChainMap out(f.src(), direct_sum(f.tgt(), g.tgt()), f.degree());
    for (int r = out.src().lo(); r <= out.src().hi(); ++r) out.set(r, Matrix::vcat(f[r], g[r]));
    return out;
}

ChainMap inclusion_first(const ChainComplex& A, const ChainComplex& B) {
    return vstack(ChainMap::identity(A), ChainMap::zero(A, B));
}

ChainMap inclusion_second(const ChainComplex& A, const ChainComplex& B) {
    return vstack(ChainMap::zero(B, A), ChainMap::identity(B));
}

ChainMap projection_first(const ChainComplex& A, const ChainComplex& B) {
    return hstack(ChainMap::identity(A), ChainMap::zero(B, A));
}

ChainMap projection_second(const ChainComplex& A, const ChainComplex& B) {
    return hstack(ChainMap::zero(A, B), ChainMap::identity(B));
}

ChainMap cone_projection(const ChainMap& f) {
    ChainComplex cone = mapping_cone(f);
    ChainMap out(cone, suspend(f.src()), 0);
    const RingSpec& R = cone.ring();
    for (int r = cone.lo(); r <= cone.hi(); ++r) {
        Matrix m(R, f.src().dim(r - 1), cone.dim(r));
        m.set_block(0, f.tgt().dim(r), Matrix::identity(R, f.src().dim(r - 1)));
        out.set(r, m);
    }
    return out;
}

ChainMap cone_inclusion(const ChainMap& f) {
    ChainComplex cone = mapping_cone(f);
    ChainMap out(f.tgt(), cone, 0);
    const RingSpec& R = cone.ring();
    for (int r = f.tgt().lo(); r <= f.tgt().hi(); ++r) {
        Matrix m(R, cone.dim(r), f.tgt().dim(r));
        m.set_block(0, 0, Matrix::identity(R, f.tgt().dim(r)));
        out.set(r, m);
    }
    return out;
}

ChainComplex change_ring(const ChainComplex& C, RingSpec target, bool aug) {
    if (C.hi() < C.lo()) return ChainComplex(target);
    std::vector<int> dims;
    for (int r = C.lo(); r <= C.hi(); ++r) dims.push_back(C.dim(r));
    ChainComplex out(target, C.lo(), dims);
    for (int r = C.lo() + 1; r <= C.hi(); ++r) out.set_d(r, aug ? augment(C.d(r)).map(target) : C.d(r).map(target));
    return out;
}

// ---- homology ------------------------------------------------------------------------

ModulePresentation homology(const ChainComplex& C, int k) {
    const RingSpec& R = C.ring();
    ModulePresentation out;
    out.ring = R;
    out.relations = Matrix(R, 0, 0);
    if (C.dim(k) == 0) return out;
    if (R.kind == RingKind::IntLaurent)
        throw UnsupportedRing("homology over Z[z,z^-1] needs a PID; use the Q[z,z^-1] and augmentation tests");
    if (R.is_field()) {
        int fr = C.dim(k) - rank(C.d(k)) - rank(C.d(k + 1));
        out.generators = fr;
        out.free_rank = fr;
        out.relations = Matrix(R, fr, 0);
        return out;
    }
    Matrix K = kernel(C.d(k));
    out.generators = K.cols();
    if (K.cols() == 0) return out;
    Matrix X(R, K.cols(), 0);
    if (C.dim(k + 1) > 0) {
        auto sol = solve(K, C.d(k + 1));
        if (!sol) throw CycleViolation("image of d_" + std::to_string(k + 1) + " is not inside the kernel");
        X = *sol;
    }
    SmithForm snf = smith_normal_form(X);
    out.relations = snf.D;
    out.free_rank = K.cols() - snf.rank;
    for (auto& dv : snf.diagonal)
        if (!R.is_unit(dv)) out.torsion.push_back(dv);
    return out;
}

bool is_acyclic(const ChainComplex& C) {
    const RingSpec& R = C.ring();
    if (R.kind == RingKind::IntLaurent) {
        RingSpec Q = RingSpec::rat_laurent(R.involution);
        return is_acyclic(change_ring(C, Q, false)) && is_acyclic(change_ring(C, RingSpec::integers(), true));
    }
    for (int r = C.lo(); r <= C.hi(); ++r) {
        if (C.dim(r) == 0) continue;
        if (rank(C.d(r)) + rank(C.d(r + 1)) != C.dim(r)) return false;
    }
    if (R.is_field()) return true;
    for (int r = C.lo(); r <= C.hi(); ++r) {
        if (C.dim(r) == 0 || C.dim(r + 1) == 0) continue;
        for (auto& dv : smith_normal_form(C.d(r + 1)).diagonal)
            if (!R.is_unit(dv)) return false;
    }
    return true;
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(mapping_cone(f)); }

// ---- splitting and homotopies ----------------------------------------------------------

Splitting split(const ChainComplex& C) {
    const RingSpec& R = C.ring();
    if (!R.is_field()) throw NotAField("splitting needs field coefficients, got " + R.name());
    int lo = C.lo(), hi = C.hi();
    if (hi < lo) {
        Splitting s{C, ChainMap::identity(C), ChainMap::identity(C), ChainMap::zero(C, C, 1)};
        return s;
    }
    int n = hi - lo + 1;
    std::vector<Matrix> B(n + 1), K(n + 1), H(n);
    for (int r = lo; r <= hi; ++r) B[r - lo] = Matrix(R, C.dim(r), 0);
    for (int r = hi; r >= lo; --r) {
        int i = r - lo;
        Matrix Z = kernel(C.d(r));
        auto kidx = complement_indices(Z);
        K[i] = Matrix::identity(R, C.dim(r)).cols_of(kidx);
        if (r - 1 >= lo) B[i - 1] = C.d(r) * K[i];
    }
    std::vector<Matrix> P(n), Pinv(n);
    std::vector<int> hd(n);
    for (int r = lo; r <= hi; ++r) {
        int i = r - lo;
        Matrix Z = kernel(C.d(r));
        auto hidx = extending_columns(B[i], Z);
        H[i] = Z.cols_of(hidx);
        hd[i] = H[i].cols();
        P[i] = Matrix::hcat(Matrix::hcat(B[i], H[i]), K[i]);
        auto inv = inverse(P[i]);
        if (!inv) throw NotAField("splitting basis is singular");
        Pinv[i] = *inv;
    }
    ChainComplex Hc(R, lo, hd);
    Splitting s{Hc, ChainMap(Hc, C, 0), ChainMap(C, Hc, 0), ChainMap(C, C, 1)};
    for (int r = lo; r <= hi; ++r) {
        int i = r - lo;
        int b = B[i].cols();
        s.i.set(r, H[i]);
        s.p.set(r, range_rows(Pinv[i], b, hd[i]));
        if (r + 1 <= hi && b > 0) {
            int bn = B[i + 1].cols(), hn = hd[i + 1];
            Matrix Kn = range_cols(P[i + 1], bn + hn, K[i + 1].cols());
            s.s.set(r, Kn * range_rows(Pinv[i], 0, b));
        }
    }
    return s;
}

std::optional<ChainMap> nullhomotopy_solve(const ChainMap& g) {
    if (g.degree() != 0) throw DimensionMismatch("nullhomotopy_solve expects a degree-0 map");
    if (!g.is_chain_map()) return std::nullopt;
    if (g.is_zero()) return ChainMap::zero(g.src(), g.tgt(), 1);
    const RingSpec& R = g.src().ring();
    if (!R.is_field()) return nullhomotopy_linear(g);
    Splitting sc = split(g.src()), sd = split(g.tgt());
    ChainMap gi = compose(g, sc.i);
    if (!compose(sd.p, gi).is_zero()) return std::nullopt;
    ChainMap t = compose(sd.s, gi);
    ChainMap h = compose(g, sc.s) + compose(t, sc.p);
    return h;
}

ChainMap homotopy_inverse(const ChainMap& f) {
    if (f.degree() != 0) throw DimensionMismatch("homotopy_inverse expects a degree-0 map");
    Splitting sa = split(f.src()), sb = split(f.tgt());
    ChainMap m = compose(sb.p, compose(f, sa.i));
    ChainMap minv(sb.H, sa.H, 0);
    for (int r = sb.H.lo(); r <= sb.H.hi(); ++r) {
        if (sa.H.dim(r) != sb.H.dim(r)) throw NotEquivalence("homology ranks differ in degree " + std::to_string(r));
        if (sa.H.dim(r) == 0) continue;
        auto inv = inverse(m[r]);
        if (!inv) throw NotEquivalence("map is not a quasi-isomorphism in degree " + std::to_string(r));
        minv.set(r, *inv);
    }
    for (int r = sa.H.lo(); r <= sa.H.hi(); ++r)
        if (sa.H.dim(r) != sb.H.dim(r)) throw NotEquivalence("homology ranks differ in degree " + std::to_string(r));
    return compose(sa.i, compose(minv, sb.p));
}

}  // namespace dlt
