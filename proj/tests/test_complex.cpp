#include "doctest.h"
#include "dlt/complex.hpp"
#include "dlt/errors.hpp"
#include "helpers.hpp"

using namespace dlt;
using testutil::random_complex;

namespace {

const RingSpec ZZ = RingSpec::integers();
const RingSpec QQ = RingSpec::rationals();

ChainComplex two_term(RingSpec R, const Laurent& x) {
    ChainComplex C(R, 0, {1, 1});
    C.set_d(1, Matrix::from_rows(R, {{x}}));
    return C;
}

int euler(const ChainComplex& C) {
    int e = 0;
    for (int r = C.lo(); r <= C.hi(); ++r) e += (r % 2 == 0 ? 1 : -1) * C.dim(r);
    return e;
}

int homology_euler(const ChainComplex& C) {
    int e = 0;
    for (int r = C.lo(); r <= C.hi(); ++r) e += (r % 2 == 0 ? 1 : -1) * homology(C, r).free_rank;
    return e;
}

}  // namespace

TEST_CASE("cone of the identity on a point is acyclic") {
    ChainComplex C = ChainComplex::concentrated(QQ, 0, 1);
    ChainComplex K = mapping_cone(ChainMap::identity(C));
    CHECK(K.dim(0) == 1);
    CHECK(K.dim(1) == 1);
    CHECK(K.d(1) == Matrix::from_ints(QQ, {{1}}));
    CHECK(K.is_chain());
    CHECK(is_acyclic(K));
}

TEST_CASE("dualize and suspend") {
    ChainComplex C = ChainComplex::concentrated(ZZ, 0, 1);
    ChainComplex D = dualize(C, 0);
    CHECK(D.lo() == 0);
    CHECK(D.hi() == 0);
    CHECK(D.dim(0) == 1);

    ChainComplex T = two_term(ZZ, 3);
    ChainComplex S = suspend(T);
    CHECK(S.dim(1) == 1);
    CHECK(S.dim(2) == 1);
    CHECK(S.d(2) == T.d(1));

    // (C^{2-*})_r = C^{2-r}; d_2 = (+1) d_1^*.
    ChainComplex Td = dualize(T, 2);
    CHECK(Td.lo() == 1);
    CHECK(Td.hi() == 2);
    CHECK(Td.d(2) == T.d(1).adjoint());
    ChainComplex Td1 = dualize(T, 1);
    CHECK(Td1.d(1) == -T.d(1).adjoint());
}

TEST_CASE("dual differential uses the involution") {
    RingSpec L = RingSpec::int_laurent();
    ChainComplex C = two_term(L, Laurent::parse("1-z"));
    ChainComplex D = dualize(C, 0);
    CHECK(D.d(0) == Matrix::from_rows(L, {{Laurent::parse("1-z^-1")}}));
}

TEST_CASE("homology over Z detects torsion") {
    ChainComplex C = two_term(ZZ, 2);
    auto H0 = homology(C, 0);
    CHECK(H0.free_rank == 0);
    REQUIRE(H0.torsion.size() == 1);
    CHECK(H0.torsion[0] == Laurent(2));
    CHECK(homology(C, 1).is_zero());
    CHECK_FALSE(is_acyclic(C));
    CHECK(is_acyclic(change_ring(C, QQ, false)));
    CHECK(is_acyclic(two_term(ZZ, -1)));
}

TEST_CASE("acyclicity over the Laurent ring") {
    RingSpec L = RingSpec::int_laurent();
    CHECK_FALSE(is_acyclic(two_term(L, Laurent::parse("1-z"))));
    CHECK_FALSE(is_acyclic(two_term(L, Laurent::parse("z^2-z+1"))));
    CHECK(is_acyclic(two_term(L, Laurent::parse("-z^3"))));
    RingSpec QL = RingSpec::rat_laurent();
    CHECK(is_acyclic(two_term(QL, Laurent::parse("2z"))));
    auto H = homology(two_term(QL, Laurent::parse("z^2-z+1")), 0);
    REQUIRE(H.torsion.size() == 1);
    CHECK(H.torsion[0] == Laurent::parse("z^2-z+1"));
}

TEST_CASE("random complexes: d^2 = 0, Euler characteristic and homology ranks") {
    std::mt19937 g(7);
    for (RingSpec R : {QQ, RingSpec::prime_field(5), ZZ}) {
        for (int trial = 0; trial < 15; ++trial) {
            std::uniform_int_distribution<int> u(0, 2);
            std::vector<int> h(4), b(4);
            for (int i = 0; i < 4; ++i) h[i] = u(g), b[i] = i ? u(g) : 0;
            ChainComplex C = random_complex(g, R, 0, h, b);
            REQUIRE(C.is_chain());
            CHECK(euler(C) == homology_euler(C));
            for (int r = 0; r < 4; ++r) CHECK(homology(C, r).free_rank == h[r]);
            CHECK(is_acyclic(C) == (h[0] + h[1] + h[2] + h[3] == 0));
        }
    }
}

TEST_CASE("cone sequence maps are chain maps") {
    std::mt19937 g(11);
    ChainComplex C = random_complex(g, QQ, 0, {1, 1, 0}, {0, 1, 1});
    ChainMap f = ChainMap::identity(C);
    CHECK(cone_inclusion(f).is_chain_map());
    CHECK(cone_projection(f).is_chain_map());
    CHECK(mapping_cone(f).is_chain());
    CHECK(is_quasi_iso(f));
    CHECK_FALSE(is_quasi_iso(ChainMap::zero(C, C)));
    ChainMap twice = Laurent(2) * f;
    CHECK(is_quasi_iso(twice));
}

TEST_CASE("dual of a map is a chain map between duals") {
    std::mt19937 g(3);
    ChainComplex C = random_complex(g, QQ, 0, {1, 0, 1}, {0, 1, 1});
    ChainMap a = ChainMap::identity(C) + Laurent(3) * ChainMap::identity(C);
    ChainMap ad = dual_map(a, 2);
    CHECK(ad.is_chain_map());
    CHECK(ad.src() == dualize(C, 2));
}

TEST_CASE("splitting identities over fields") {
    std::mt19937 g(5);
    for (RingSpec R : {QQ, RingSpec::prime_field(5)}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<int> u(0, 2);
            std::vector<int> h(4), b(4);
            for (int i = 0; i < 4; ++i) h[i] = u(g), b[i] = i ? u(g) : 0;
            ChainComplex C = random_complex(g, R, -1, h, b);
            Splitting S = split(C);
            CHECK(S.i.is_chain_map());
            CHECK(S.p.is_chain_map());
            CHECK(compose(S.p, S.i) == ChainMap::identity(S.H));
            ChainMap lhs = ChainMap::identity(C) - compose(S.i, S.p);
            CHECK(lhs == S.s.boundary());
            for (int r = -1; r <= 2; ++r) CHECK(S.H.dim(r) == h[r + 1]);
        }
    }
}

TEST_CASE("nullhomotopy_solve") {
    SUBCASE("zero map") {
        std::mt19937 g(1);
        ChainComplex C = random_complex(g, QQ, 0, {1, 1}, {0, 1});
        auto h = nullhomotopy_solve(ChainMap::zero(C, C));
        REQUIRE(h);
        CHECK(h->is_zero());
    }
    SUBCASE("identity on an acyclic complex over Q") {
        ChainComplex C = two_term(QQ, 1);
        auto h = nullhomotopy_solve(ChainMap::identity(C));
        REQUIRE(h);
        CHECK((*h)[0] == Matrix::from_ints(QQ, {{1}}));
        CHECK(h->boundary() == ChainMap::identity(C));
    }
    SUBCASE("identity on Z --2--> Z is not nullhomotopic") {
        CHECK_FALSE(nullhomotopy_solve(ChainMap::identity(two_term(ZZ, 2))));
        CHECK(nullhomotopy_solve(ChainMap::identity(two_term(ZZ, -1))));
    }
    SUBCASE("Q Laurent coefficients") {
        RingSpec QL = RingSpec::rat_laurent();
        CHECK(nullhomotopy_solve(ChainMap::identity(two_term(QL, Laurent::parse("3z^2")))));
        CHECK_FALSE(nullhomotopy_solve(ChainMap::identity(two_term(QL, Laurent::parse("1-z")))));
    }
    SUBCASE("random boundaries are recognised") {
        std::mt19937 g(9);
        for (RingSpec R : {QQ, ZZ, RingSpec::prime_field(7)}) {
            for (int trial = 0; trial < 8; ++trial) {
                ChainComplex C = random_complex(g, R, 0, {1, 1, 1}, {0, 1, 1});
                ChainComplex D = random_complex(g, R, 0, {0, 1, 1}, {0, 2, 1});
                ChainMap k(C, D, 1);
                for (int r = 0; r <= 2; ++r)
                    k.set(r, testutil::random_matrix(g, R, D.dim(r + 1), C.dim(r)));
                ChainMap g0 = k.boundary();
                auto h = nullhomotopy_solve(g0);
                REQUIRE(h);
                CHECK(h->boundary() == g0);
            }
        }
    }
    SUBCASE("a map nonzero on homology has no nullhomotopy") {
        std::mt19937 g(2);
        ChainComplex C = random_complex(g, QQ, 0, {1, 0, 1}, {0, 1, 1});
        CHECK_FALSE(nullhomotopy_solve(ChainMap::identity(C)));
    }
}

TEST_CASE("homotopy_inverse of a quasi-isomorphism") {
    std::mt19937 g(13);
    for (RingSpec R : {QQ, RingSpec::prime_field(5)}) {
        ChainComplex C = random_complex(g, R, 0, {1, 2, 1}, {0, 1, 2});
        Splitting S = split(C);
        ChainMap q = homotopy_inverse(S.i);
        CHECK(q.is_chain_map());
        auto h1 = nullhomotopy_solve(compose(q, S.i) - ChainMap::identity(S.H));
        auto h2 = nullhomotopy_solve(compose(S.i, q) - ChainMap::identity(C));
        CHECK(h1);
        CHECK(h2);
        CHECK_THROWS_AS(homotopy_inverse(ChainMap::zero(C, C)), NotEquivalence);
    }
}
