#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dlt {

// Laurent polynomial in z with rational coefficients. Stored densely from the lowest
// exponent; no leading or trailing zeros, the zero polynomial has no coefficients.
// Plain integers and field elements are degree-0 polynomials.
class Laurent {
public:
    Laurent() = default;
    Laurent(long v);  // NOLINT: implicit by design, integers embed everywhere
    Laurent(const mpz_class& v);
    Laurent(const mpq_class& v);

    static Laurent monomial(const mpq_class& c, int k);
    static Laurent from_coeffs(int lo, std::vector<mpq_class> c);
    static Laurent z(int k = 1) { return monomial(1, k); }

    bool is_zero() const { return c_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    int span() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int k) const;
    const mpq_class& leading() const { return c_.back(); }
    const mpq_class& trailing() const { return c_.front(); }

    bool is_constant() const { return c_.empty() || (lo_ == 0 && c_.size() == 1); }
    mpq_class constant() const;
    bool is_monomial() const { return c_.size() == 1; }
    bool has_integer_coeffs() const;

    Laurent involute() const;
    Laurent shifted(int k) const;
    mpq_class eval(const mpq_class& x) const;
    mpq_class content() const;  // positive gcd of numerators over lcm of denominators

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const mpq_class& s);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    std::string str(char var = 'z') const;
    static Laurent parse(std::string_view text, char var = 'z');

private:
    void trim();
    int lo_ = 0;
    std::vector<mpq_class> c_;
};

// Polynomial long division in Q[z] of two Laurent polynomials after shifting both to
// ordinary polynomials with nonzero constant term. Returns (q, r) with a = q*b + r and
// span(r) < span(b).
std::pair<Laurent, Laurent> laurent_divmod(const Laurent& a, const Laurent& b);
// Exact quotient in Q[z,z^-1], or nullopt if b does not divide a.
std::optional<Laurent> laurent_exact_div(const Laurent& a, const Laurent& b);
// Monic-normalized gcd in Q[z,z^-1] (lowest exponent 0, leading coefficient 1).
Laurent laurent_gcd(const Laurent& a, const Laurent& b);

enum class RingKind { Integers, Rationals, PrimeField, IntLaurent, RatLaurent };
enum class Involution { Identity, InvertVariable };

struct RingSpec {
    RingKind kind = RingKind::Rationals;
    long p = 0;
    Involution involution = Involution::Identity;

    static RingSpec integers() { return {RingKind::Integers, 0, Involution::Identity}; }
    static RingSpec rationals() { return {RingKind::Rationals, 0, Involution::Identity}; }
    static RingSpec prime_field(long p);
    static RingSpec int_laurent(Involution inv = Involution::InvertVariable);
    static RingSpec rat_laurent(Involution inv = Involution::InvertVariable);
    static RingSpec parse(std::string_view name);

    bool is_field() const { return kind == RingKind::Rationals || kind == RingKind::PrimeField; }
    bool is_laurent() const { return kind == RingKind::IntLaurent || kind == RingKind::RatLaurent; }
    bool is_euclidean() const { return kind != RingKind::IntLaurent; }
    bool has_half_unit() const { return kind == RingKind::Rationals || kind == RingKind::RatLaurent || (kind == RingKind::PrimeField && p != 2); }

    bool contains(const Laurent& x) const;
    // Canonical representative: coefficients reduced mod p for prime fields.
    Laurent normalize(const Laurent& x) const;
    Laurent conj(const Laurent& x) const;

    Laurent add(const Laurent& a, const Laurent& b) const { return normalize(a + b); }
    Laurent sub(const Laurent& a, const Laurent& b) const { return normalize(a - b); }
    Laurent mul(const Laurent& a, const Laurent& b) const { return normalize(a * b); }
    Laurent neg(const Laurent& a) const { return normalize(-a); }

    bool is_unit(const Laurent& x) const;
    Laurent inverse(const Laurent& unit) const;
    // Exact division inside the ring; nullopt when b does not divide a.
    std::optional<Laurent> divide(const Laurent& a, const Laurent& b) const;
    // Euclidean division: a = q*b + r with norm(r) < norm(b). Not for IntLaurent.
    std::pair<Laurent, Laurent> divmod(const Laurent& a, const Laurent& b) const;
    // Euclidean size used for pivoting; smaller is better. Zero has no size.
    std::pair<long, mpz_class> norm(const Laurent& x) const;
    // Unit u such that u*x is the chosen associate (positive, monic, ...).
    Laurent normalizing_unit(const Laurent& x) const;

    std::string name() const;
    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.kind == b.kind && a.p == b.p && a.involution == b.involution;
    }
    friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }
};

// Evaluation at z = 1 is +-1. Integer coefficients required.
bool is_alexander(const Laurent& p);
Laurent involute(const Laurent& p);

mpq_class mod_p(const mpq_class& x, long p);

}  // namespace dlt
