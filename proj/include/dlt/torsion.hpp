#pragma once

#include <string>

#include "dlt/ring.hpp"

namespace dlt {

// Supported localisations (A, S).
enum class LocKind {
    IntegersNonzero,  // (Z, Z \ 0)
    AlexanderP,       // (Z[z,z^-1], P): p(1) = +-1
    RationalP,        // (Q[z,z^-1], p(1) != 0)
};

struct LocPair {
    LocKind kind = LocKind::IntegersNonzero;

    static LocPair integers() { return {LocKind::IntegersNonzero}; }
    static LocPair alexander() { return {LocKind::AlexanderP}; }
    static LocPair rational() { return {LocKind::RationalP}; }
    static LocPair parse(const std::string& name);

    RingSpec ring() const;
    bool in_S(const Laurent& s) const;
    std::string name() const;
    friend bool operator==(LocPair a, LocPair b) { return a.kind == b.kind; }
    friend bool operator!=(LocPair a, LocPair b) { return a.kind != b.kind; }
};

// Element of S^-1 A / A in normal form:
//   (Z, Z\0): den > 0, gcd(num, den) = 1, 0 <= num < den; zero is 0/1.
//   Laurent pairs: num/den in lowest terms, den a polynomial with nonzero constant term
//   (primitive with positive leading coefficient over Z, monic over Q), and num replaced by
//   its remainder modulo den in Q[z], so 0 <= exponents < deg den. Because denominators
//   from P are primitive, Gauss's lemma makes this a complete invariant of the coset even
//   though the stored remainder may have rational coefficients. Zero is 0/1.
struct TorsionValue {
    LocPair pair;
    Laurent num;
    Laurent den = Laurent(1);

    bool is_zero() const { return num.is_zero(); }
    std::string str() const;
    TorsionValue conj() const;
    friend bool operator==(const TorsionValue& a, const TorsionValue& b) {
        return a.pair == b.pair && a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const TorsionValue& a, const TorsionValue& b) { return !(a == b); }
    friend TorsionValue operator+(const TorsionValue& a, const TorsionValue& b);
    friend TorsionValue operator-(const TorsionValue& a);
    friend TorsionValue operator-(const TorsionValue& a, const TorsionValue& b) { return a + (-b); }
    TorsionValue scaled(const Laurent& a) const;
};

TorsionValue torsion_normalize(const Laurent& num, const Laurent& den, LocPair pair);

}  // namespace dlt
