#include <functional>
#include <random>

#include "doctest.h"
#include "dlt/errors.hpp"
#include "dlt/matrix.hpp"

using namespace dlt;

namespace {

const RingSpec ZZ = RingSpec::integers();
const RingSpec QQ = RingSpec::rationals();

Matrix random_matrix(std::mt19937& g, RingSpec R, int r, int c, int bound = 4) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Matrix m(R, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, Laurent(d(g)));
    return m;
}

Matrix random_unimodular(std::mt19937& g, RingSpec R, int n) {
    Matrix m = Matrix::identity(R, n);
    std::uniform_int_distribution<int> idx(0, n - 1), c(-2, 2);
    for (int k = 0; k < 3 * n; ++k) {
        int i = idx(g), j = idx(g);
        if (i == j) continue;
        Matrix e = Matrix::identity(R, n);
        e.set(i, j, Laurent(c(g)));
        m = e * m;
    }
    return m;
}

// Determinantal divisors: gcd of all k x k minors. Independent of the elimination code.
mpz_class gcd_of_minors(const Matrix& m, int k) {
    int r = m.rows(), c = m.cols();
    mpz_class g = 0;
    std::vector<int> rs(k), cs(k);
    std::function<void(int, int, std::vector<int>&, int, std::function<void()>)> choose =
        [&](int start, int n, std::vector<int>& v, int pos, std::function<void()> f) {
            if (pos == static_cast<int>(v.size())) return f();
            for (int i = start; i < n; ++i) {
                v[pos] = i;
                choose(i + 1, n, v, pos + 1, f);
            }
        };
    choose(0, r, rs, 0, [&] {
        choose(0, c, cs, 0, [&] {
            mpz_class d = det(m.rows_of(rs).cols_of(cs)).constant().get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        });
    });
    return g;
}

// Signature from the characteristic polynomial (Faddeev-LeVerrier) by Descartes' rule,
// which is exact because symmetric matrices have only real eigenvalues.
int signature_oracle(const Matrix& m) {
    int n = m.rows();
    std::vector<mpq_class> c(n + 1);
    c[n] = 1;
    Matrix M = Matrix::zero(QQ, n, n), A = m.map(QQ);
    for (int k = 1; k <= n; ++k) {
        M = A * M + Matrix::scalar(QQ, n, Laurent(c[n - k + 1]));
        Matrix AM = A * M;
        mpq_class tr = 0;
        for (int i = 0; i < n; ++i) tr += AM(i, i).constant();
        c[n - k] = -tr / k;
    }
    auto variations = [](std::vector<mpq_class> v) {
        int s = 0, prev = 0;
        for (auto& x : v) {
            int sg = sgn(x);
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++s;
            prev = sg;
        }
        return s;
    };
    int pos = variations(c);
    std::vector<mpq_class> neg = c;
    for (int i = 0; i <= n; ++i)
        if (i % 2) neg[i] = -neg[i];
    return pos - variations(neg);
}

}  // namespace

TEST_CASE("smith normal form golden and oracle") {
    auto s = smith_normal_form(Matrix::from_ints(ZZ, {{2, 4}, {6, 8}}));
    CHECK(s.D == Matrix::from_ints(ZZ, {{2, 0}, {0, 4}}));
    CHECK(smith_normal_form(Matrix::identity(ZZ, 3)).D == Matrix::identity(ZZ, 3));
    CHECK(smith_normal_form(Matrix::from_ints(ZZ, {{0}})).D == Matrix::from_ints(ZZ, {{0}}));
    std::mt19937 g(42);
    for (int t = 0; t < 30; ++t) {
        int r = 1 + t % 4, c = 1 + (t / 2) % 4;
        Matrix m = random_matrix(g, ZZ, r, c, 6);
        auto f = smith_normal_form(m);
        CHECK(f.U * m * f.V == f.D);
        CHECK(f.U * f.Uinv == Matrix::identity(ZZ, r));
        CHECK(f.V * f.Vinv == Matrix::identity(ZZ, c));
        CHECK(ZZ.is_unit(det(f.U)));
        mpz_class prod = 1;
        for (int k = 0; k < f.rank; ++k) {
            if (k > 0) CHECK(f.diagonal[k].constant().get_num() % f.diagonal[k - 1].constant().get_num() == 0);
            prod *= f.diagonal[k].constant().get_num();
            CHECK(prod == gcd_of_minors(m, k + 1));
        }
    }
}

TEST_CASE("smith normal form over Q[z,z^-1] and fields") {
    RingSpec Qz = RingSpec::rat_laurent();
    Matrix m = Matrix::from_rows(Qz, {{Laurent::parse("1 - z"), Laurent::parse("z^2 - 1")},
                                      {Laurent::parse("z^-1"), Laurent(2)}});
    auto f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.D);
    CHECK(f.V * f.Vinv == Matrix::identity(Qz, 2));
    CHECK(f.diagonal[0] == Laurent(1));
    Matrix over_int = Matrix::from_rows(RingSpec::int_laurent(), {{Laurent(1)}});
    CHECK_THROWS_AS(smith_normal_form(over_int), UnsupportedRing);
    RingSpec F5 = RingSpec::prime_field(5);
    auto f5 = smith_normal_form(Matrix::from_ints(F5, {{2, 4}, {1, 2}}));
    CHECK(f5.rank == 1);
}

TEST_CASE("det, inverse, solve, kernel") {
    std::mt19937 g(9);
    for (int t = 0; t < 20; ++t) {
        Matrix u = random_unimodular(g, ZZ, 4);
        CHECK(abs(det(u).constant()) == 1);
        auto inv = inverse(u);
        REQUIRE(inv);
        CHECK(u * *inv == Matrix::identity(ZZ, 4));
        Matrix a = random_matrix(g, ZZ, 3, 5);
        Matrix x = random_matrix(g, ZZ, 5, 2);
        auto sol = solve(a, a * x);
        REQUIRE(sol);
        CHECK(a * *sol == a * x);
        Matrix k = kernel(a);
        CHECK((a * k).is_zero());
        CHECK(k.cols() == 5 - rank(a));
        Matrix q = random_matrix(g, QQ, 4, 4);
        CHECK(det(q) == det(q.map(ZZ)).constant());
    }
    CHECK_FALSE(solve(Matrix::from_ints(ZZ, {{2}}), Matrix::from_ints(ZZ, {{1}})));
    CHECK(solve(Matrix::from_ints(QQ, {{2}}), Matrix::from_ints(QQ, {{1}})));
    RingSpec Zz = RingSpec::int_laurent();
    Matrix v = Matrix::from_ints(Zz, {{-1, 1}, {0, -1}});
    Matrix pres = v - Laurent::z() * v.transpose();
    CHECK(det(pres) == Laurent::parse("z^2 - z + 1"));
    CHECK(adjugate(pres) * pres == Matrix::scalar(Zz, 2, det(pres)));
    CHECK_THROWS_AS(solve(pres, pres), UnsupportedRing);
}

TEST_CASE("signature") {
    CHECK(signature(Matrix::from_ints(QQ, {{2, 0}, {0, -3}})) == 0);
    CHECK(signature(Matrix::from_ints(QQ, {{-2, 1}, {1, -2}})) == -2);
    CHECK(signature(Matrix(QQ, 0, 0)) == 0);
    CHECK(signature(Matrix::from_ints(QQ, {{0, 1}, {1, 0}})) == 0);
    CHECK_THROWS_AS(signature(Matrix::from_ints(QQ, {{0, 1}, {0, 0}})), NotSymmetric);
    std::mt19937 g(17);
    for (int t = 0; t < 30; ++t) {
        int n = 1 + t % 5;
        Matrix a = random_matrix(g, QQ, n, n, 3);
        Matrix s = a + a.transpose();
        int sig = signature(s);
        CHECK(sig == signature_oracle(s));
        Matrix p = random_unimodular(g, QQ, n);
        CHECK(signature(p.transpose() * s * p) == sig);
        Matrix b = random_matrix(g, QQ, 2, 2, 3);
        Matrix s2 = b + b.transpose();
        CHECK(signature(Matrix::direct_sum(s, s2)) == sig + signature(s2));
    }
}

TEST_CASE("complement indices") {
    RingSpec F5 = RingSpec::prime_field(5);
    Matrix b = Matrix::from_ints(F5, {{1}, {2}, {0}});
    auto idx = complement_indices(b);
    CHECK(idx.size() == 2);
    Matrix full = Matrix::hcat(b, Matrix::identity(F5, 3).cols_of(idx));
    CHECK(rank(full) == 3);
}
