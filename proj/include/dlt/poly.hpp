#pragma once

#include <utility>
#include <vector>

#include "dlt/matrix.hpp"
#include "dlt/ring.hpp"

// Univariate polynomials over Q, stored as Laurent values with lowest exponent >= 0.
namespace dlt::poly {

Laurent derivative(const Laurent& p);
Laurent monic(const Laurent& p);
// Remainder of p modulo m in Q[t] (p may contain negative exponents only if m(0) != 0).
Laurent rem(const Laurent& p, const Laurent& m);
// Quotient of polynomial division in Q[t].
Laurent quo(const Laurent& a, const Laurent& b);
Laurent gcd(const Laurent& a, const Laurent& b);
// s*a + t*b = gcd(a, b) (monic).
struct Bezout {
    Laurent g, s, t;
};
Bezout ext_gcd(const Laurent& a, const Laurent& b);
// Evaluate a polynomial at a square matrix.
Matrix eval_at(const Laurent& p, const Matrix& m);
Laurent compose(const Laurent& p, const Laurent& q);  // p(q(t))

// Monic irreducible factors over Q with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<Laurent, int>> factor(const Laurent& p);
// Characteristic polynomial det(t - M) of a rational matrix.
Laurent charpoly(const Matrix& m);

// A real root of a squarefree polynomial: either exact (lo == hi) or the unique root of
// `p` in the open interval (lo, hi), with p(lo)*p(hi) < 0.
struct RealRoot {
    Laurent p;
    mpq_class lo, hi;
    bool exact() const { return lo == hi; }
};
// Number of distinct real roots in (a, b].
int count_roots(const Laurent& p, const mpq_class& a, const mpq_class& b);
// Real roots of p in increasing order (p is reduced to its squarefree part).
std::vector<RealRoot> real_roots(const Laurent& p);
void refine(RealRoot& r, const mpq_class& width);
// Sign of g at the root (0 if it vanishes there).
int sign_at(const Laurent& g, RealRoot r);
// -1, 0, 1 comparison of the root with a rational number.
int compare(const RealRoot& r, const mpq_class& x);

// Cyclotomic polynomial Phi_m.
Laurent cyclotomic(int m);
// Minimal polynomial of cos(2 pi k/m) together with the isolated root.
RealRoot cos_root(long k, long m);

// The real field Q(alpha) = Q[t]/(minpoly), with alpha pinned by an isolated root.
class RealNumberField {
public:
    explicit RealNumberField(RealRoot alpha);
    const RealRoot& generator() const { return alpha_; }
    Laurent reduce(const Laurent& x) const;
    Laurent mul(const Laurent& a, const Laurent& b) const;
    Laurent inv(const Laurent& a) const;
    int sign(const Laurent& a) const;

private:
    RealRoot alpha_;
};

// Signature of a symmetric matrix with entries in a real number field (entries are
// polynomials in the generator).
int signature_over(const RealNumberField& K, std::vector<std::vector<Laurent>> m);

}  // namespace dlt::poly
