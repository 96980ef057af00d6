#include "dlt/torsion.hpp"

#include "dlt/errors.hpp"

namespace dlt {

LocPair LocPair::parse(const std::string& n) {
    if (n == "Z" || n == "integers") return integers();
    if (n == "P" || n == "alexander" || n == "Z[z,z^-1]") return alexander();
    if (n == "QP" || n == "rational" || n == "Q[z,z^-1]") return rational();
    throw ParseError("unknown localisation '" + n + "'");
}

RingSpec LocPair::ring() const {
    switch (kind) {
        case LocKind::IntegersNonzero: return RingSpec::integers();
        case LocKind::AlexanderP: return RingSpec::int_laurent();
        case LocKind::RationalP: return RingSpec::rat_laurent();
    }
    return RingSpec::integers();
}

bool LocPair::in_S(const Laurent& s) const {
    switch (kind) {
        case LocKind::IntegersNonzero: return s.is_constant() && !s.is_zero() && s.constant().get_den() == 1;
        case LocKind::AlexanderP: return s.has_integer_coeffs() && abs(s.eval(1)) == 1;
        case LocKind::RationalP: return s.eval(1) != 0;
    }
    return false;
}

std::string LocPair::name() const {
    switch (kind) {
        case LocKind::IntegersNonzero: return "Z";
        case LocKind::AlexanderP: return "P";
        case LocKind::RationalP: return "QP";
    }
    return "?";
}

namespace {

// Remainder of a polynomial (all exponents >= 0) modulo d (lo = 0), in Q[z].
Laurent poly_rem(Laurent a, const Laurent& d) {
    int n = d.hi();
    if (a.is_zero() || n == 0) return n == 0 ? Laurent() : a;
    std::vector<mpq_class> c(a.hi() + 1);
    for (int k = a.lo(); k <= a.hi(); ++k) c[k] = a.coeff(k);
    const auto& dc = d.coeffs();
    mpq_class inv = 1 / dc.back();
    for (int k = static_cast<int>(c.size()) - 1; k >= n; --k) {
        if (c[k] == 0) continue;
        mpq_class q = c[k] * inv;
        for (int j = 0; j <= n; ++j) c[k - n + j] -= q * dc[j];
    }
    c.resize(std::min<size_t>(c.size(), n));
    return Laurent::from_coeffs(0, std::move(c));
}

Laurent laurent_rem(const Laurent& a, const Laurent& d) {
    if (a.is_zero()) return a;
    if (a.lo() >= 0) return poly_rem(a, d);
    // z is invertible modulo d since d(0) != 0: d = d0 + z*H gives z^-1 = -H/d0.
    Laurent h = Laurent::from_coeffs(0, std::vector<mpq_class>(d.coeffs().begin() + 1, d.coeffs().end()));
    Laurent zinv = h;
    zinv *= mpq_class(-1 / d.trailing());
    Laurent acc = poly_rem(a.shifted(-a.lo()), d);
    for (int i = 0; i < -a.lo(); ++i) acc = poly_rem(acc * zinv, d);
    return acc;
}

// Stored numerators may carry rational coefficients (see the normal form), so internal
// arithmetic skips the membership check that the public entry point performs.
TorsionValue normalize_unchecked(const Laurent& num, const Laurent& den, LocPair pair) {
    if (!pair.in_S(den)) throw DenominatorNotInS(den.str() + " is not in S for " + pair.name());
    TorsionValue v;
    v.pair = pair;
    if (pair.kind == LocKind::IntegersNonzero) {
        mpz_class n = num.constant().get_num(), d = den.constant().get_num();
        if (d < 0) {
            n = -n;
            d = -d;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (g != 0) {
            n /= g;
            d /= g;
        }
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (r == 0) return v;
        v.num = Laurent(r);
        v.den = Laurent(d);
        return v;
    }
    if (num.is_zero()) return v;
    // Shift the denominator to an ordinary polynomial with nonzero constant term.
    Laurent d = den.shifted(-den.lo());
    Laurent n = num.shifted(-den.lo());
    Laurent g = laurent_gcd(n, d);
    d = *laurent_exact_div(d, g);
    n = *laurent_exact_div(n, g);
    d = d.shifted(-d.lo());
    mpq_class scale;
    if (pair.kind == LocKind::AlexanderP) {
        scale = 1 / d.content();
        if (d.leading() < 0) scale = -scale;
    } else {
        scale = 1 / d.leading();
    }
    d *= scale;
    n *= scale;
    if (d.span() == 0) return v;  // denominator is a unit
    Laurent r = laurent_rem(n, d);
    if (r.is_zero()) return v;
    v.num = r;
    v.den = d;
    return v;
}
}  // namespace

TorsionValue torsion_normalize(const Laurent& num, const Laurent& den, LocPair pair) {
    RingSpec R = pair.ring();
    if (!R.contains(num)) throw DimensionMismatch("numerator " + num.str() + " not in " + R.name());
    if (!R.contains(den)) throw DenominatorNotInS(den.str() + " not in " + R.name());
    return normalize_unchecked(num, den, pair);
}

std::string TorsionValue::str() const {
    if (num.is_zero()) return "0";
    if (pair.kind == LocKind::IntegersNonzero) return num.str() + "/" + den.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

TorsionValue TorsionValue::conj() const {
    if (pair.kind == LocKind::IntegersNonzero || num.is_zero()) return *this;
    return normalize_unchecked(num.involute(), den.involute(), pair);
}

TorsionValue operator+(const TorsionValue& a, const TorsionValue& b) {
    if (a.pair != b.pair) throw DimensionMismatch("torsion values over different localisations");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return normalize_unchecked(a.num * b.den + b.num * a.den, a.den * b.den, a.pair);
}

TorsionValue operator-(const TorsionValue& a) {
    if (a.is_zero()) return a;
    return normalize_unchecked(-a.num, a.den, a.pair);
}

TorsionValue TorsionValue::scaled(const Laurent& s) const {
    if (is_zero()) return *this;
    return normalize_unchecked(num * s, den, pair);
}

}  // namespace dlt
