#include "doctest.h"
#include "dlt/errors.hpp"
#include "dlt/poly.hpp"

using namespace dlt;

namespace {
Laurent P(const char* s) { return Laurent::parse(s, 't'); }

Laurent product(const std::vector<std::pair<Laurent, int>>& fs) {
    Laurent r = 1;
    for (auto& [f, m] : fs)
        for (int i = 0; i < m; ++i) r = r * f;
    return r;
}
}  // namespace

TEST_CASE("factorization over Q") {
    auto f = poly::factor(P("t^4 - 1"));
    REQUIRE(f.size() == 3);
    CHECK(f[0].first == P("t - 1"));
    CHECK(f[1].first == P("t + 1"));
    CHECK(f[2].first == P("t^2 + 1"));
    CHECK(poly::factor(P("t^2 - t + 1")).size() == 1);
    CHECK(poly::factor(P("t^2 - 3*t + 1")).size() == 1);
    // x^4 + 1 is irreducible over Q but splits modulo every prime.
    CHECK(poly::factor(P("t^4 + 1")).size() == 1);
    auto g = poly::factor(P("t^2 - 2") * P("t^2 - 2") * P("t^3 - t - 1") * P("2*t + 3"));
    REQUIRE(g.size() == 3);
    CHECK(g[0] == std::make_pair(P("t + 3/2"), 1));
    CHECK(g[1] == std::make_pair(P("t^2 - 2"), 2));
    CHECK(g[2] == std::make_pair(P("t^3 - t - 1"), 1));
    Laurent big = P("t^6 - 1") * P("t^5 + 7*t - 3") * P("t");
    auto h = poly::factor(big);
    CHECK(product(h) == poly::monic(big));
    for (auto& [q, m] : h) CHECK(poly::factor(q).size() == 1);
    // Swinnerton-Dyer style: product of many linear factors mod p needs recombination.
    Laurent sd = P("t^4 - 10*t^2 + 1");
    CHECK(poly::factor(sd).size() == 1);
    CHECK(poly::factor(P("t^8 - 40*t^6 + 352*t^4 - 960*t^2 + 576")).size() == 1);
}

TEST_CASE("cyclotomic and cosine roots") {
    CHECK(poly::cyclotomic(1) == P("t - 1"));
    CHECK(poly::cyclotomic(6) == P("t^2 - t + 1"));
    CHECK(poly::cyclotomic(12) == P("t^4 - t^2 + 1"));
    auto r = poly::cos_root(1, 6);  // cos(pi/3) = 1/2
    CHECK(poly::compare(r, mpq_class(1, 2)) == 0);
    auto r5a = poly::cos_root(1, 5), r5b = poly::cos_root(2, 5);
    CHECK(r5a.p == P("t^2 + 1/2*t - 1/4"));
    CHECK(poly::compare(r5a, mpq_class(3, 10)) > 0);  // cos 72 deg ~ 0.309
    CHECK(poly::compare(r5a, mpq_class(31, 100)) < 0);
    CHECK(poly::compare(r5b, mpq_class(-81, 100)) > 0);  // cos 144 deg ~ -0.809
    CHECK(poly::compare(r5b, mpq_class(-80, 100)) < 0);
    CHECK(poly::compare(poly::cos_root(4, 5), mpq_class(3, 10)) > 0);
    auto r7 = poly::cos_root(3, 7);  // cos(6 pi/7) ~ -0.901
    CHECK(poly::compare(r7, mpq_class(-9, 10)) < 0);
    CHECK(poly::compare(r7, mpq_class(-902, 1000)) > 0);
}

TEST_CASE("real roots and signs at roots") {
    auto rs = poly::real_roots(P("t^3 - 2*t"));
    REQUIRE(rs.size() == 3);
    CHECK(rs[1].exact());
    CHECK(poly::sign_at(P("t^2 - 2"), rs[0]) == 0);
    CHECK(poly::sign_at(P("t - 1"), rs[2]) == 1);
    CHECK(poly::sign_at(P("t - 3/2"), rs[2]) == -1);
    CHECK(poly::count_roots(P("t^2 - t + 1"), -10, 10) == 0);
    CHECK(poly::count_roots(P("t - 1") * P("t - 1"), 0, 2) == 1);
}

TEST_CASE("signature over a real number field") {
    // sqrt(2) field: [[1, a], [a, 1]] with a = sqrt 2 has eigenvalues 1 +- sqrt2 -> 0.
    auto rs = poly::real_roots(P("t^2 - 2"));
    poly::RealNumberField K(rs[1]);
    CHECK(poly::signature_over(K, {{1, P("t")}, {P("t"), 1}}) == 0);
    CHECK(poly::signature_over(K, {{2, P("t")}, {P("t"), 2}}) == 2);
    CHECK(poly::signature_over(K, {{0, P("t")}, {P("t"), 0}}) == 0);
    poly::RealNumberField Kneg(rs[0]);
    CHECK(poly::signature_over(Kneg, {{P("t")}}) == -1);
    CHECK(K.mul(K.inv(P("t + 1")), P("t + 1")) == Laurent(1));
    CHECK_THROWS_AS(poly::signature_over(K, {{0, 1}, {2, 0}}), NotSymmetric);
}

TEST_CASE("charpoly") {
    RingSpec QQ = RingSpec::rationals();
    CHECK(poly::charpoly(Matrix::from_ints(QQ, {{-2, 1}, {1, -2}})) == P("t^2 + 4*t + 3"));
    Matrix m = Matrix::from_ints(QQ, {{0, 1}, {-1, 1}});
    CHECK(poly::charpoly(m) == P("t^2 - t + 1"));
    CHECK(poly::eval_at(poly::charpoly(m), m).is_zero());
}
