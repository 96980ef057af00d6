// Factorization over Q: squarefree decomposition, Cantor-Zassenhaus modulo a small prime,
// linear Hensel lifting and subset recombination.

#include <algorithm>
#include <cstdint>
#include <random>

#include "dlt/errors.hpp"
#include "dlt/poly.hpp"

namespace dlt::poly {

namespace {

using i64 = std::int64_t;
using ZPoly = std::vector<mpz_class>;  // low to high
using FPoly = std::vector<i64>;

// ---- arithmetic mod p ---------------------------------------------------------------

struct Fp {
    i64 p;
    i64 md(i64 x) const { return ((x % p) + p) % p; }
    i64 mul(i64 a, i64 b) const { return static_cast<i64>((static_cast<__int128>(a) * b) % p); }
    i64 inv(i64 a) const {
        i64 r = 1, e = p - 2, b = md(a);
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    void trim(FPoly& a) const {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    FPoly sub(FPoly a, const FPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i) a[i] = md(a[i] - b[i]);
        trim(a);
        return a;
    }
    FPoly mulp(const FPoly& a, const FPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FPoly r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = md(r[i + j] + mul(a[i], b[j]));
        trim(r);
        return r;
    }
    // (q, r)
    std::pair<FPoly, FPoly> divmod(FPoly a, const FPoly& b) const {
        int n = static_cast<int>(b.size()) - 1;
        if (static_cast<int>(a.size()) <= n) return {{}, a};
        FPoly q(a.size() - n, 0);
        i64 li = inv(b.back());
        for (int k = static_cast<int>(a.size()) - 1; k >= n; --k) {
            if (a[k] == 0) continue;
            i64 c = mul(a[k], li);
            q[k - n] = c;
            for (int j = 0; j <= n; ++j) a[k - n + j] = md(a[k - n + j] - mul(c, b[j]));
        }
        a.resize(n);
        trim(a);
        trim(q);
        return {q, a};
    }
    FPoly monic(FPoly a) const {
        if (a.empty()) return a;
        i64 li = inv(a.back());
        for (auto& x : a) x = mul(x, li);
        return a;
    }
    FPoly gcd(FPoly a, FPoly b) const {
        while (!b.empty()) {
            FPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // s*a + t*b = 1 for coprime a, b.
    std::pair<FPoly, FPoly> bezout(const FPoly& a, const FPoly& b) const {
        FPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            FPoly s2 = sub(s0, mulp(q, s1)), t2 = sub(t0, mulp(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        i64 c = inv(r0.at(0));
        for (auto& x : s0) x = mul(x, c);
        for (auto& x : t0) x = mul(x, c);
        return {s0, t0};
    }
    FPoly powmod(FPoly base, mpz_class e, const FPoly& m) const {
        FPoly r{1};
        base = divmod(base, m).second;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = divmod(mulp(r, base), m).second;
            base = divmod(mulp(base, base), m).second;
            e >>= 1;
        }
        return r;
    }
};

FPoly reduce(const ZPoly& f, i64 p) {
    FPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        mpz_class m;
        mpz_fdiv_r_ui(m.get_mpz_t(), f[i].get_mpz_t(), static_cast<unsigned long>(p));
        r[i] = m.get_si();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

FPoly derivative(const Fp& F, const FPoly& a) {
    FPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(F.md(static_cast<i64>(i)), a[i]));
    F.trim(d);
    return d;
}

// Monic squarefree f over F_p -> its monic irreducible factors.
std::vector<FPoly> factor_mod_p(const Fp& F, const FPoly& f, std::mt19937_64& rng) {
    std::vector<FPoly> out;
    // distinct-degree
    std::vector<std::pair<FPoly, int>> dd;
    FPoly rest = f, h{0, 1};
    const FPoly x{0, 1};
    for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
        h = F.powmod(h, F.p, rest);
        FPoly g = F.gcd(F.sub(h, x), rest);
        if (g.size() > 1) {
            dd.push_back({g, d});
            rest = F.divmod(rest, g).first;
            h = F.divmod(h, rest).second;
        }
    }
    if (rest.size() > 1) dd.push_back({F.monic(rest), static_cast<int>(rest.size()) - 1});
    // equal-degree (p odd)
    for (auto& [g, d] : dd) {
        std::vector<FPoly> todo{g};
        while (!todo.empty()) {
            FPoly u = todo.back();
            todo.pop_back();
            if (static_cast<int>(u.size()) - 1 == d) {
                out.push_back(u);
                continue;
            }
            for (;;) {
                FPoly a(u.size() - 1);
                for (auto& c : a) c = static_cast<i64>(rng() % static_cast<std::uint64_t>(F.p));
                F.trim(a);
                if (a.size() < 2) continue;
                mpz_class e;
                mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
                e = (e - 1) / 2;
                FPoly b = F.sub(F.powmod(a, e, u), FPoly{1});
                FPoly g2 = F.gcd(b, u);
                if (g2.size() > 1 && g2.size() < u.size()) {
                    todo.push_back(g2);
                    todo.push_back(F.monic(F.divmod(u, g2).first));
                    break;
                }
            }
        }
    }
    return out;
}

// ---- integer polynomials ------------------------------------------------------------

void trimz(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly mulz(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZPoly modz(ZPoly a, const mpz_class& m, bool symmetric) {
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (symmetric && 2 * c > m) c -= m;
    }
    trimz(a);
    return a;
}

ZPoly lift(const FPoly& a) { return ZPoly(a.begin(), a.end()); }

FPoly reduce_mod(const ZPoly& a, i64 p) { return reduce(a, p); }

// Exact division in Z[t]; nullopt if not exact.
std::optional<ZPoly> divz(ZPoly a, const ZPoly& b) {
    int n = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) <= n) {
        trimz(a);
        if (a.empty()) return ZPoly{};
        return std::nullopt;
    }
    ZPoly q(a.size() - n, 0);
    for (int k = static_cast<int>(a.size()) - 1; k >= n; --k) {
        if (a[k] == 0) continue;
        if (!mpz_divisible_p(a[k].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        mpz_class c = a[k] / b.back();
        q[k - n] = c;
        for (int j = 0; j <= n; ++j) a[k - n + j] -= c * b[j];
    }
    for (auto& c : a)
        if (c != 0) return std::nullopt;
    trimz(q);
    return q;
}

mpz_class contentz(const ZPoly& a) {
    mpz_class g = 0;
    for (auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive(ZPoly a) {
    mpz_class g = contentz(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

// Lift f = lc * g * h (mod p), g monic, to modulus p^k. Returns the lifted (g, h) mod p^k.
std::pair<ZPoly, ZPoly> hensel(const ZPoly& f, const FPoly& g0, const FPoly& h0, i64 p, int k) {
    Fp F{p};
    auto [s, t] = F.bezout(g0, h0);
    ZPoly g = lift(g0), h = lift(h0);
    mpz_class pk = p;
    for (int j = 1; j < k; ++j) {
        ZPoly e = f;
        ZPoly gh = mulz(g, h);
        if (e.size() < gh.size()) e.resize(gh.size(), 0);
        for (size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
        for (auto& c : e) c /= pk;  // exact
        trimz(e);
        FPoly ep = reduce_mod(e, p);
        // tau = t*e mod g, sigma = (e - tau*h)/g
        FPoly tau = F.divmod(F.mulp(t, ep), g0).second;
        FPoly sigma = F.divmod(F.sub(ep, F.mulp(tau, h0)), g0).first;
        ZPoly dt = lift(tau), ds = lift(sigma);
        if (g.size() < dt.size()) g.resize(dt.size(), 0);
        for (size_t i = 0; i < dt.size(); ++i) g[i] += pk * dt[i];
        if (h.size() < ds.size()) h.resize(ds.size(), 0);
        for (size_t i = 0; i < ds.size(); ++i) h[i] += pk * ds[i];
        pk *= p;
        trimz(g);
        trimz(h);
    }
    return {modz(g, pk, false), modz(h, pk, false)};
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducible factors in Z[t] of a primitive squarefree f with positive leading coefficient.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {f};
    i64 p = 3;
    for (;; p += 2) {
        if (!is_prime(p)) continue;
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        Fp F{p};
        FPoly fp = reduce(f, p);
        if (F.gcd(fp, derivative(F, fp)).size() == 1) break;
    }
    Fp F{p};
    std::mt19937_64 rng(0x5eed + static_cast<unsigned>(p));
    FPoly fp = F.monic(reduce(f, p));
    std::vector<FPoly> mods = factor_mod_p(F, fp, rng);
    if (mods.size() == 1) return {f};
    std::sort(mods.begin(), mods.end());
    // Mignotte-style bound on factor coefficients: 2^n * ||f||_2 * lc.
    mpz_class norm2 = 0;
    for (auto& c : f) norm2 += c * c;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    mpz_class bound = (root + 1) * (mpz_class(1) << n) * abs(f.back()) * 2;
    int k = 1;
    mpz_class pk = p;
    while (pk <= bound) {
        pk *= p;
        ++k;
    }
    // Lift the factorization factor by factor: f = lc * m_0 * rest, then recurse on rest.
    std::vector<ZPoly> lifted;
    ZPoly cur = f;
    std::vector<FPoly> remaining = mods;
    while (remaining.size() > 1) {
        FPoly g0 = remaining.front();
        FPoly h0{1};
        for (size_t i = 1; i < remaining.size(); ++i) h0 = F.mulp(h0, remaining[i]);
        i64 lcp = reduce(ZPoly{cur.back()}, p).at(0);
        for (auto& c : h0) c = F.mul(c, lcp);
        auto [g, h] = hensel(cur, g0, h0, p, k);
        lifted.push_back(g);
        cur = h;
        remaining.erase(remaining.begin());
    }
    {
        // Last factor: make it monic mod p^k.
        ZPoly last = cur;
        mpz_class li;
        mpz_invert(li.get_mpz_t(), mpz_class(last.back()).get_mpz_t(), pk.get_mpz_t());
        for (auto& c : last) c *= li;
        lifted.push_back(modz(last, pk, false));
    }
    // Recombination over subsets of increasing size.
    std::vector<ZPoly> result;
    ZPoly g = f;
    std::vector<int> idx(lifted.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    int s = 1;
    while (2 * s <= static_cast<int>(idx.size())) {
        bool found = false;
        int r = static_cast<int>(idx.size());
        std::vector<int> sel(s);
        for (int i = 0; i < s; ++i) sel[i] = i;
        for (;;) {
            ZPoly prod{g.back()};
            for (int i : sel) prod = modz(mulz(prod, lifted[idx[i]]), pk, true);
            ZPoly cand = primitive(prod);
            auto q = divz(g, cand);
            if (q) {
                result.push_back(cand);
                g = *q;
                std::vector<int> keep;
                for (int i = 0; i < r; ++i)
                    if (std::find(sel.begin(), sel.end(), i) == sel.end()) keep.push_back(idx[i]);
                idx = keep;
                found = true;
                break;
            }
            int i = s - 1;
            while (i >= 0 && sel[i] == r - s + i) --i;
            if (i < 0) break;
            ++sel[i];
            for (int j = i + 1; j < s; ++j) sel[j] = sel[j - 1] + 1;
        }
        if (!found) ++s;
    }
    result.push_back(primitive(g));
    return result;
}

Laurent to_laurent(const ZPoly& a) {
    std::vector<mpq_class> c(a.begin(), a.end());
    return Laurent::from_coeffs(0, std::move(c));
}

}  // namespace

std::vector<std::pair<Laurent, int>> factor(const Laurent& p) {
    std::vector<std::pair<Laurent, int>> out;
    if (p.is_zero()) throw DimensionMismatch("cannot factor the zero polynomial");
    Laurent f = monic(p);
    if (f.lo() > 0) {
        out.push_back({Laurent::z(1), f.lo()});
        f = f.shifted(-f.lo());
    }
    if (f.lo() < 0) throw DimensionMismatch("polynomial expected");
    // Yun's squarefree decomposition.
    std::vector<std::pair<Laurent, int>> sqf;
    Laurent fd = derivative(f);
    Laurent c = gcd(f, fd);
    Laurent w = quo(f, c), z = quo(fd, c) - derivative(w);
    for (int i = 1; w.hi() > 0; ++i) {
        Laurent g = gcd(w, z);
        if (g.hi() > 0) sqf.push_back({g, i});
        w = quo(w, g);
        z = quo(z, g) - derivative(w);
    }
    for (auto& [sq, m] : sqf) {
        // primitive integer version
        mpz_class den = 1;
        for (auto& x : sq.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
        ZPoly zp;
        for (int k = 0; k <= sq.hi(); ++k) zp.push_back(mpq_class(sq.coeff(k) * den).get_num());
        zp = primitive(zp);
        for (auto& fz : zassenhaus(zp)) out.push_back({monic(to_laurent(fz)), m});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.hi() != y.first.hi()) return x.first.hi() < y.first.hi();
        if (x.first.coeffs() != y.first.coeffs()) return x.first.coeffs() < y.first.coeffs();
        return x.second < y.second;
    });
    return out;
}

}  // namespace dlt::poly
