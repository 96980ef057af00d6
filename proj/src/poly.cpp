#include "dlt/poly.hpp"

#include <algorithm>
#include <numeric>

#include "dlt/errors.hpp"

namespace dlt::poly {

namespace {

using Vec = std::vector<mpq_class>;

Vec to_vec(const Laurent& p) {
    if (p.is_zero()) return {};
    if (p.lo() < 0) throw DimensionMismatch("polynomial expected, got " + p.str('t'));
    Vec v(p.hi() + 1);
    for (int k = p.lo(); k <= p.hi(); ++k) v[k] = p.coeff(k);
    return v;
}

Laurent from_vec(Vec v) { return Laurent::from_coeffs(0, std::move(v)); }

std::pair<Laurent, Laurent> divmod(const Laurent& a, const Laurent& b) {
    Vec r = to_vec(a), d = to_vec(b);
    if (d.empty()) throw DimensionMismatch("polynomial division by zero");
    int n = static_cast<int>(d.size()) - 1;
    if (static_cast<int>(r.size()) <= n) return {Laurent(), a};
    Vec q(r.size() - n);
    mpq_class inv = 1 / d.back();
    for (int k = static_cast<int>(r.size()) - 1; k >= n; --k) {
        if (r[k] == 0) continue;
        mpq_class c = r[k] * inv;
        q[k - n] = c;
        for (int j = 0; j <= n; ++j) r[k - n + j] -= c * d[j];
    }
    r.resize(n);
    return {from_vec(std::move(q)), from_vec(std::move(r))};
}

std::vector<Laurent> sturm_chain(const Laurent& p) {
    std::vector<Laurent> s{p, derivative(p)};
    while (!s.back().is_zero() && s.back().hi() > 0) {
        Laurent r = rem(s[s.size() - 2], s.back());
        if (r.is_zero()) break;
        s.push_back(-r);
    }
    return s;
}

int variations(const std::vector<Laurent>& chain, const mpq_class& x) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sgn(q.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

Laurent squarefree_part(const Laurent& p) {
    Laurent g = gcd(p, derivative(p));
    return monic(divmod(p, g).first);
}

mpq_class root_bound(const Laurent& p) {
    mpq_class m = 0;
    for (int k = p.lo(); k < p.hi(); ++k) m = std::max<mpq_class>(m, abs(p.coeff(k) / p.leading()));
    return m + 1;
}

void isolate(const std::vector<Laurent>& chain, const Laurent& p, mpq_class a, mpq_class b,
             std::vector<RealRoot>& out) {
    int n = variations(chain, a) - variations(chain, b);
    if (n == 0) return;
    if (n == 1) {
        if (p.eval(b) == 0) {
            out.push_back({p, b, b});
            return;
        }
        if (p.eval(a) != 0) {
            out.push_back({p, a, b});
            return;
        }
    }
    mpq_class mid = (a + b) / 2;
    isolate(chain, p, a, mid, out);
    isolate(chain, p, mid, b, out);
}

}  // namespace

Laurent derivative(const Laurent& p) {
    if (p.is_zero()) return p;
    if (p.lo() < 0) throw DimensionMismatch("derivative of a Laurent polynomial");
    Vec v(p.hi());
    for (int k = std::max(p.lo(), 1); k <= p.hi(); ++k) v[k - 1] = p.coeff(k) * k;
    return from_vec(std::move(v));
}

Laurent monic(const Laurent& p) {
    if (p.is_zero()) return p;
    Laurent r = p;
    r *= mpq_class(1 / p.leading());
    return r;
}

Laurent rem(const Laurent& p, const Laurent& m) {
    if (p.lo() >= 0) return divmod(p, m).second;
    // t is invertible modulo m when m(0) != 0: m = m0 + t*H gives t^-1 = -H/m0.
    if (m.lo() != 0) throw DimensionMismatch("t is not invertible modulo " + m.str('t'));
    Laurent h = Laurent::from_coeffs(0, Vec(m.coeffs().begin() + 1, m.coeffs().end()));
    h *= mpq_class(-1 / m.trailing());
    Laurent acc = rem(p.shifted(-p.lo()), m);
    for (int i = 0; i < -p.lo(); ++i) acc = rem(acc * h, m);
    return acc;
}

Laurent quo(const Laurent& a, const Laurent& b) { return divmod(a, b).first; }

Laurent gcd(const Laurent& a, const Laurent& b) {
    Laurent x = a, y = b;
    while (!y.is_zero()) {
        Laurent r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

Bezout ext_gcd(const Laurent& a, const Laurent& b) {
    Laurent r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Laurent s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    mpq_class c = 1 / r0.leading();
    r0 *= c;
    s0 *= c;
    t0 *= c;
    return {r0, s0, t0};
}

Matrix eval_at(const Laurent& p, const Matrix& m) {
    int n = m.rows();
    Matrix acc(m.ring(), n, n);
    if (p.is_zero()) return acc;
    if (p.lo() < 0) throw DimensionMismatch("polynomial expected");
    for (int k = p.hi(); k >= 0; --k) acc = acc * m + Matrix::scalar(m.ring(), n, Laurent(p.coeff(k)));
    return acc;
}

Laurent compose(const Laurent& p, const Laurent& q) {
    Laurent acc;
    if (p.is_zero()) return acc;
    for (int k = p.hi(); k >= 0; --k) acc = acc * q + Laurent(p.coeff(k));
    return acc;
}

Laurent charpoly(const Matrix& m) {
    RingSpec QQ = RingSpec::rationals();
    int n = m.rows();
    Matrix A = m.map(QQ), M(QQ, n, n);
    Vec c(n + 1);
    c[n] = 1;
    for (int k = 1; k <= n; ++k) {
        M = A * M + Matrix::scalar(QQ, n, Laurent(c[n - k + 1]));
        Matrix AM = A * M;
        mpq_class tr = 0;
        for (int i = 0; i < n; ++i) tr += AM(i, i).is_zero() ? mpq_class(0) : AM(i, i).constant();
        c[n - k] = -tr / k;
    }
    return from_vec(std::move(c));
}

int count_roots(const Laurent& p, const mpq_class& a, const mpq_class& b) {
    auto chain = sturm_chain(squarefree_part(p));
    return variations(chain, a) - variations(chain, b);
}

std::vector<RealRoot> real_roots(const Laurent& p) {
    std::vector<RealRoot> out;
    if (p.is_zero() || p.hi() == 0) return out;
    Laurent q = squarefree_part(p.shifted(-std::min(p.lo(), 0)));
    if (q.hi() == 0) return out;
    mpq_class B = root_bound(q);
    isolate(sturm_chain(q), q, -B, B, out);
    return out;
}

void refine(RealRoot& r, const mpq_class& width) {
    while (!r.exact() && r.hi - r.lo > width) {
        mpq_class mid = (r.lo + r.hi) / 2;
        int sm = sgn(r.p.eval(mid));
        if (sm == 0) {
            r.lo = r.hi = mid;
        } else if (sm == sgn(r.p.eval(r.lo))) {
            r.lo = mid;
        } else {
            r.hi = mid;
        }
    }
}

int sign_at(const Laurent& g, RealRoot r) {
    if (g.is_zero()) return 0;
    if (r.exact()) return sgn(g.eval(r.lo));
    Laurent h = gcd(g, r.p);
    if (h.hi() > 0 && count_roots(h, r.lo, r.hi) > 0) return 0;
    Laurent gs = squarefree_part(g);
    auto chain = sturm_chain(gs);
    while (variations(chain, r.lo) - variations(chain, r.hi) != 0 && !r.exact())
        refine(r, (r.hi - r.lo) / 2);
    return sgn(g.eval(r.hi));
}

int compare(const RealRoot& r, const mpq_class& x) {
    if (r.exact()) return r.lo < x ? -1 : (r.lo > x ? 1 : 0);
    if (x <= r.lo) return 1;
    if (x >= r.hi) return -1;
    int s = sgn(r.p.eval(x));
    if (s == 0) return 0;
    return s == sgn(r.p.eval(r.lo)) ? 1 : -1;
}

Laurent cyclotomic(int m) {
    if (m < 1) throw DimensionMismatch("cyclotomic index must be positive");
    Laurent p = Laurent::z(m) - Laurent(1);
    for (int d = 1; d < m; ++d)
        if (m % d == 0) p = divmod(p, cyclotomic(d)).first;
    return p;
}

RealRoot cos_root(long k, long m) {
    if (m <= 0) throw DimensionMismatch("angle denominator must be positive");
    k %= m;
    if (k < 0) k += m;
    long g = std::gcd(k, m);
    k /= g;
    m /= g;
    if (m == 1) return {Laurent::parse("t - 1", 't'), 1, 1};
    if (m == 2) return {Laurent::parse("t + 1", 't'), -1, -1};
    long j = std::min(k, m - k);
    // Phi_m(x) = x^h Q(x + 1/x); cos(2 pi j/m) is a root of Q(2c).
    Laurent P = cyclotomic(static_cast<int>(m));
    int h = P.hi() / 2;
    P = P.shifted(-h);
    Vec qc(h + 1);
    Laurent y = Laurent::parse("z^-1 + z");
    for (int e = h; e >= 0; --e) {
        mpq_class a = P.coeff(e);
        qc[e] = a;
        Laurent pw = 1;
        for (int i = 0; i < e; ++i) pw = pw * y;
        pw *= a;
        P -= pw;
    }
    for (int e = 0; e <= h; ++e) qc[e] *= mpq_class(mpz_class(1) << e);
    Laurent minpoly = monic(from_vec(std::move(qc)));
    auto roots = real_roots(minpoly);
    std::vector<long> js;
    for (long i = 1; 2 * i < m; ++i)
        if (std::gcd(i, m) == 1) js.push_back(i);
    if (roots.size() != js.size()) throw NormalizationFailure("cosine minimal polynomial has unexpected roots");
    long pos = std::find(js.begin(), js.end(), j) - js.begin();
    return roots[roots.size() - 1 - pos];
}

RealNumberField::RealNumberField(RealRoot alpha) : alpha_(std::move(alpha)) {}

Laurent RealNumberField::reduce(const Laurent& x) const { return rem(x, alpha_.p); }

Laurent RealNumberField::mul(const Laurent& a, const Laurent& b) const { return reduce(a * b); }

Laurent RealNumberField::inv(const Laurent& a) const {
    Laurent r = reduce(a);
    if (r.is_zero()) throw DimensionMismatch("inverse of zero in a number field");
    auto b = ext_gcd(r, alpha_.p);
    if (b.g != Laurent(1)) throw NormalizationFailure("defining polynomial is reducible");
    return reduce(b.s);
}

int RealNumberField::sign(const Laurent& a) const { return sign_at(reduce(a), alpha_); }

int signature_over(const RealNumberField& K, std::vector<std::vector<Laurent>> m) {
    int n = static_cast<int>(m.size());
    for (auto& row : m)
        for (auto& x : row) x = K.reduce(x);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m[i][j] != m[j][i]) throw NotSymmetric("matrix is not symmetric");
    std::vector<bool> alive(n, true);
    int sig = 0;
    for (;;) {
        int piv = -1, oi = -1, oj = -1;
        for (int i = 0; i < n && piv < 0; ++i)
            if (alive[i] && !m[i][i].is_zero()) piv = i;
        if (piv < 0) {
            for (int i = 0; i < n && oi < 0; ++i)
                for (int j = i + 1; j < n && oi < 0; ++j)
                    if (alive[i] && alive[j] && !m[i][j].is_zero()) {
                        oi = i;
                        oj = j;
                    }
            if (oi < 0) break;
            // Congruence e_i -> e_i + e_j makes the diagonal entry 2*m_ij.
            for (int k = 0; k < n; ++k) m[oi][k] = m[oi][k] + m[oj][k];
            for (int k = 0; k < n; ++k) m[k][oi] = m[k][oi] + m[k][oj];
            for (auto& row : m) row[oi] = K.reduce(row[oi]);
            for (auto& x : m[oi]) x = K.reduce(x);
            piv = oi;
        }
        sig += K.sign(m[piv][piv]);
        Laurent inv = K.inv(m[piv][piv]);
        alive[piv] = false;
        for (int i = 0; i < n; ++i) {
            if (!alive[i] || m[i][piv].is_zero()) continue;
            Laurent f = K.mul(m[i][piv], inv);
            for (int j = 0; j < n; ++j)
                if (alive[j] && !m[piv][j].is_zero()) m[i][j] = K.reduce(m[i][j] - f * m[piv][j]);
        }
    }
    return sig;
}

}  // namespace dlt::poly
