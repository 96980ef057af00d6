#include "dlt/ring.hpp"

#include <cctype>

#include "dlt/errors.hpp"

namespace dlt {

Laurent::Laurent(long v) {
    if (v != 0) c_.emplace_back(v);
}
Laurent::Laurent(const mpz_class& v) {
    if (v != 0) c_.emplace_back(v);
}
Laurent::Laurent(const mpq_class& v) {
    if (v != 0) c_.push_back(v);
}

Laurent Laurent::monomial(const mpq_class& c, int k) {
    Laurent r;
    if (c != 0) {
        r.lo_ = k;
        r.c_.push_back(c);
    }
    return r;
}

Laurent Laurent::from_coeffs(int lo, std::vector<mpq_class> c) {
    Laurent r;
    r.lo_ = lo;
    r.c_ = std::move(c);
    r.trim();
    return r;
}

void Laurent::trim() {
    size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    size_t e = c_.size();
    while (c_[e - 1] == 0) --e;
    if (b > 0 || e < c_.size()) c_ = std::vector<mpq_class>(c_.begin() + b, c_.begin() + e);
    lo_ += static_cast<int>(b);
}

mpq_class Laurent::coeff(int k) const {
    if (c_.empty() || k < lo_ || k > hi()) return 0;
    return c_[k - lo_];
}

mpq_class Laurent::constant() const { return c_.empty() ? mpq_class(0) : coeff(0); }

bool Laurent::has_integer_coeffs() const {
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

Laurent Laurent::involute() const {
    Laurent r;
    if (c_.empty()) return r;
    r.lo_ = -hi();
    r.c_.assign(c_.rbegin(), c_.rend());
    return r;
}

Laurent Laurent::shifted(int k) const {
    Laurent r = *this;
    if (!r.c_.empty()) r.lo_ += k;
    return r;
}

mpq_class Laurent::eval(const mpq_class& x) const {
    if (c_.empty()) return 0;
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    if (lo_ == 0) return acc;
    mpq_class pw = 1;
    mpq_class base = lo_ > 0 ? x : mpq_class(1 / x);
    for (int i = 0; i < std::abs(lo_); ++i) pw *= base;
    return acc * pw;
}

mpq_class Laurent::content() const {
    mpz_class num = 0, den = 1;
    for (const auto& x : c_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    if (nlo != lo_ || nhi != hi()) {
        std::vector<mpq_class> c(nhi - nlo + 1);
        for (size_t i = 0; i < c_.size(); ++i) c[lo_ - nlo + i] = c_[i];
        c_ = std::move(c);
        lo_ = nlo;
    }
    for (size_t i = 0; i < o.c_.size(); ++i) c_[o.lo_ - lo_ + i] += o.c_[i];
    trim();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent& Laurent::operator*=(const mpq_class& s) {
    if (s == 0) {
        c_.clear();
        lo_ = 0;
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
}

std::string Laurent::str(char var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        const mpq_class& c = c_[i];
        if (c == 0) continue;
        int k = lo_ + static_cast<int>(i);
        bool neg = c < 0;
        mpq_class a = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (k == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + "*";
        out += var;
        if (k != 1) out += "^" + std::to_string(k);
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        ws();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    mpz_class digits() {
        ws();
        size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (b == i) throw ParseError("expected digits at offset " + std::to_string(b) + " in '" + std::string(s) + "'");
        return mpz_class(std::string(s.substr(b, i - b)));
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(i) + " in '" + std::string(s) + "'");
    }
};

}  // namespace

Laurent Laurent::parse(std::string_view text, char var) {
    Cursor cur{text};
    Laurent acc;
    bool first = true;
    for (;;) {
        cur.ws();
        if (cur.i >= text.size()) {
            if (first) cur.fail("empty polynomial");
            break;
        }
        bool neg = false;
        if (cur.eat('+')) {
        } else if (cur.eat('-')) {
            neg = true;
        } else if (!first) {
            cur.fail("expected '+' or '-'");
        }
        first = false;
        mpq_class coef = 1;
        bool have_coef = false;
        if (cur.peek_digit()) {
            mpz_class n = cur.digits();
            mpz_class d = 1;
            if (cur.eat('/')) d = cur.digits();
            if (d == 0) cur.fail("zero denominator");
            coef = mpq_class(n, d);
            coef.canonicalize();
            have_coef = true;
        }
        int k = 0;
        bool star = cur.eat('*');
        cur.ws();
        if (cur.i < text.size() && text[cur.i] == var) {
            ++cur.i;
            k = 1;
            if (cur.eat('^')) {
                bool paren = cur.eat('(');
                bool eneg = cur.eat('-');
                if (!eneg) cur.eat('+');
                mpz_class e = cur.digits();
                if (paren && !cur.eat(')')) cur.fail("expected ')'");
                if (!e.fits_sint_p()) cur.fail("exponent too large");
                k = static_cast<int>(e.get_si());
                if (eneg) k = -k;
            }
        } else if (star || !have_coef) {
            cur.fail("expected term");
        }
        acc += monomial(neg ? mpq_class(-coef) : coef, k);
    }
    return acc;
}

std::pair<Laurent, Laurent> laurent_divmod(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {Laurent(), Laurent()};
    // Work with A = z^-lo(a) a and B = z^-lo(b) b as ordinary polynomials.
    std::vector<mpq_class> r = a.coeffs();
    const auto& bc = b.coeffs();
    size_t db = bc.size() - 1;
    if (r.size() <= db) return {Laurent(), a};
    std::vector<mpq_class> q(r.size() - db);
    mpq_class inv = 1 / bc.back();
    for (size_t k = r.size(); k-- > db;) {
        if (r[k] == 0) continue;
        mpq_class c = r[k] * inv;
        q[k - db] = c;
        for (size_t j = 0; j <= db; ++j) r[k - db + j] -= c * bc[j];
    }
    r.resize(db);
    return {Laurent::from_coeffs(a.lo() - b.lo(), std::move(q)), Laurent::from_coeffs(a.lo(), std::move(r))};
}

std::optional<Laurent> laurent_exact_div(const Laurent& a, const Laurent& b) {
    auto [q, r] = laurent_divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

Laurent laurent_gcd(const Laurent& a, const Laurent& b) {
    Laurent x = a, y = b;
    while (!y.is_zero()) {
        auto r = laurent_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    x = x.shifted(-x.lo());
    x *= 1 / x.leading();
    return x;
}

mpq_class mod_p(const mpq_class& x, long p) {
    mpz_class n = x.get_num() % p;
    if (n < 0) n += p;
    if (x.get_den() == 1) return n;
    mpz_class d = x.get_den() % p, inv;
    if (d == 0 || mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t()) == 0)
        throw std::domain_error("denominator divisible by p");
    mpz_class r = (n * inv) % p;
    return r;
}

RingSpec RingSpec::prime_field(long p) {
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25) == 0)
        throw UnsupportedRing("prime field needs a prime, got " + std::to_string(p));
    return {RingKind::PrimeField, p, Involution::Identity};
}
RingSpec RingSpec::int_laurent(Involution inv) { return {RingKind::IntLaurent, 0, inv}; }
RingSpec RingSpec::rat_laurent(Involution inv) { return {RingKind::RatLaurent, 0, inv}; }

RingSpec RingSpec::parse(std::string_view n) {
    if (n == "Z" || n == "ZZ" || n == "integers") return integers();
    if (n == "Q" || n == "QQ" || n == "rationals") return rationals();
    if (n == "Z[z,z^-1]" || n == "Zz" || n == "int-laurent") return int_laurent();
    if (n == "Q[z,z^-1]" || n == "Qz" || n == "rat-laurent") return rat_laurent();
    std::string s(n);
    for (const char* pre : {"F", "GF", "F_"}) {
        std::string ps(pre);
        if (s.rfind(ps, 0) == 0 && s.size() > ps.size() &&
            s.find_first_not_of("0123456789", ps.size()) == std::string::npos)
            return prime_field(std::stol(s.substr(ps.size())));
    }
    throw ParseError("unknown ring '" + s + "'");
}

std::string RingSpec::name() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "F" + std::to_string(p);
        case RingKind::IntLaurent: return involution == Involution::InvertVariable ? "Z[z,z^-1]" : "Z[z,z^-1]/id";
        case RingKind::RatLaurent: return involution == Involution::InvertVariable ? "Q[z,z^-1]" : "Q[z,z^-1]/id";
    }
    return "?";
}

bool RingSpec::contains(const Laurent& x) const {
    switch (kind) {
        case RingKind::Integers: return x.is_constant() && x.constant().get_den() == 1;
        case RingKind::Rationals: return x.is_constant();
        case RingKind::PrimeField:
            if (!x.is_constant()) return false;
            return x.constant().get_den() % p != 0;
        case RingKind::IntLaurent: return x.has_integer_coeffs();
        case RingKind::RatLaurent: return true;
    }
    return false;
}

Laurent RingSpec::normalize(const Laurent& x) const {
    if (!contains(x)) throw DimensionMismatch("element " + x.str() + " is not in " + name());
    if (kind == RingKind::PrimeField) {
        if (x.is_zero()) return x;
        mpq_class c = x.constant();
        if (c.get_den() == 1 && c >= 0 && c < p) return x;
        return Laurent(mod_p(c, p));
    }
    return x;
}

Laurent RingSpec::conj(const Laurent& x) const {
    return involution == Involution::InvertVariable ? x.involute() : x;
}

bool RingSpec::is_unit(const Laurent& x) const {
    if (x.is_zero()) return false;
    switch (kind) {
        case RingKind::Integers: return abs(x.constant()) == 1;
        case RingKind::Rationals:
        case RingKind::PrimeField: return true;
        case RingKind::IntLaurent: return x.is_monomial() && abs(x.leading()) == 1;
        case RingKind::RatLaurent: return x.is_monomial();
    }
    return false;
}

Laurent RingSpec::inverse(const Laurent& u) const {
    if (!is_unit(u)) throw std::domain_error("not a unit in " + name() + ": " + u.str());
    if (kind == RingKind::PrimeField) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), u.constant().get_num_mpz_t(), mpz_class(p).get_mpz_t());
        return Laurent(inv);
    }
    return Laurent::monomial(1 / u.leading(), -u.lo());
}

std::optional<Laurent> RingSpec::divide(const Laurent& a, const Laurent& b) const {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Laurent();
    switch (kind) {
        case RingKind::Integers: {
            mpq_class q = a.constant() / b.constant();
            if (q.get_den() != 1) return std::nullopt;
            return Laurent(q);
        }
        case RingKind::Rationals: return Laurent(mpq_class(a.constant() / b.constant()));
        case RingKind::PrimeField: return mul(a, inverse(b));
        case RingKind::IntLaurent: {
            auto q = laurent_exact_div(a, b);
            if (!q || !q->has_integer_coeffs()) return std::nullopt;
            return q;
        }
        case RingKind::RatLaurent: return laurent_exact_div(a, b);
    }
    return std::nullopt;
}

std::pair<Laurent, Laurent> RingSpec::divmod(const Laurent& a, const Laurent& b) const {
    if (b.is_zero()) throw std::domain_error("division by zero");
    switch (kind) {
        case RingKind::Integers: {
            mpz_class an = a.constant().get_num(), bn = b.constant().get_num();
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
            // Least absolute remainder keeps the Euclidean norm strictly decreasing.
            if (2 * abs(r) > abs(bn)) {
                if ((r > 0) == (bn > 0)) {
                    r -= bn;
                    q += 1;
                } else {
                    r += bn;
                    q -= 1;
                }
            }
            return {Laurent(q), Laurent(r)};
        }
        case RingKind::Rationals:
        case RingKind::PrimeField: return {*divide(a, b), Laurent()};
        case RingKind::RatLaurent: return laurent_divmod(a, b);
        case RingKind::IntLaurent: break;
    }
    throw UnsupportedRing("Euclidean division is not available over " + name());
}

std::pair<long, mpz_class> RingSpec::norm(const Laurent& x) const {
    switch (kind) {
        case RingKind::Integers: return {0, abs(x.constant().get_num())};
        case RingKind::Rationals:
        case RingKind::PrimeField: return {0, 0};
        case RingKind::IntLaurent:
        case RingKind::RatLaurent: {
            // Span first; among equal spans prefer small integer coefficients.
            mpz_class h = 0;
            for (const auto& c : x.coeffs()) h += abs(c.get_num()) + c.get_den();
            return {x.span(), h};
        }
    }
    return {0, 0};
}

Laurent RingSpec::normalizing_unit(const Laurent& x) const {
    if (x.is_zero()) return Laurent(1);
    switch (kind) {
        case RingKind::Integers: return Laurent(x.constant() < 0 ? -1 : 1);
        case RingKind::Rationals:
        case RingKind::PrimeField: return inverse(x);
        case RingKind::IntLaurent: return Laurent::monomial(x.leading() < 0 ? -1 : 1, -x.lo());
        case RingKind::RatLaurent: return Laurent::monomial(1 / x.leading(), -x.lo());
    }
    return Laurent(1);
}

bool is_alexander(const Laurent& p) {
    if (!p.has_integer_coeffs()) throw DimensionMismatch("is_alexander needs integer coefficients");
    return abs(p.eval(1)) == 1;
}

Laurent involute(const Laurent& p) { return p.involute(); }

}  // namespace dlt
