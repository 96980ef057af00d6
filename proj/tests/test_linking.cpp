#include "doctest.h"
#include "dlt/errors.hpp"
#include "dlt/linking.hpp"

using namespace dlt;

namespace {

const RingSpec ZZ = RingSpec::integers();
const RingSpec ZL = RingSpec::int_laurent();
const RingSpec QL = RingSpec::rat_laurent();

Matrix M(RingSpec R, const std::vector<std::vector<long>>& rows) { return Matrix::from_ints(R, rows); }
Laurent L(const char* s) { return Laurent::parse(s); }

TorsionValue tv(const char* num, const char* den, LocPair p) { return torsion_normalize(L(num), L(den), p); }

// V - z V^T with pairing (1 - z) M^-1.
LinkingForm blanchfield(const Matrix& V, LocPair pair) {
    const RingSpec R = pair.ring();
    Matrix Vr = V.map(R);
    Matrix P = Vr - Laurent::z() * Vr.transpose();
    return linking_new(P, pair, 1, Matrix::scalar(R, V.rows(), L("1-z")));
}

}  // namespace

TEST_CASE("linking_new on Z/5") {
    LinkingForm T = linking_new(M(ZZ, {{5}}), LocPair::integers(), 1, M(ZZ, {{2}}));
    CHECK(linking_value(T, 0, 0) == tv("2", "5", LocPair::integers()));
    CHECK(presentation_invariants(T) == std::vector<Laurent>{Laurent(5)});
    // lambda(x, x) = 1/5 with eps = -1 is not antisymmetric
    CHECK_THROWS_AS(linking_new(M(ZZ, {{5}}), LocPair::integers(), -1), SymmetryViolation);
    // numerator sharing a factor with 5 makes the adjoint degenerate
    CHECK_THROWS_AS(linking_new(M(ZZ, {{5}}), LocPair::integers(), 1, M(ZZ, {{5}})), SingularPresentation);
    CHECK_THROWS_AS(linking_new(M(ZZ, {{0}}), LocPair::integers(), 1), SingularPresentation);
}

TEST_CASE("identity presentation is the trivial form") {
    LinkingForm T = linking_new(Matrix::identity(ZZ, 3), LocPair::integers(), 1);
    CHECK(presentation_invariants(T).empty());
    CHECK(linking_value(T, 0, 1).is_zero());
    auto r = linking_lagrangian_search(T, SearchMode::Hyperbolic);
    REQUIRE(r);
    CHECK((*r)[0].generators.cols() == 0);
}

TEST_CASE("trefoil Blanchfield form") {
    LinkingForm B = blanchfield(M(ZZ, {{-1, 1}, {0, -1}}), LocPair::alexander());
    CHECK(det(B.presentation) == L("1-z+z^2"));
    CHECK(linking_value(B, 0, 0) == tv("-1+2z-z^2", "z^2-z+1", LocPair::alexander()));
    CHECK(linking_symmetric(B));
    CHECK(presentation_invariants(B).size() == 1);

    LinkingForm Bq = blanchfield(M(ZZ, {{-1, 1}, {0, -1}}), LocPair::rational());
    CHECK_FALSE(linking_lagrangian_search(Bq, SearchMode::Metabolic));
    CHECK_THROWS_AS(linking_lagrangian_search(B, SearchMode::Metabolic), UnsupportedRing);
}

TEST_CASE("block sums give orthogonal sums") {
    Matrix V = M(ZZ, {{-1, 1}, {0, -1}}), W = M(ZZ, {{-1, 1}, {0, 1}});
    LinkingForm a = blanchfield(V, LocPair::alexander()), b = blanchfield(W, LocPair::alexander());
    LinkingForm s = blanchfield(Matrix::direct_sum(V, W), LocPair::alexander());
    LinkingForm t = direct_sum(a, b);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(linking_value(s, i, j) == linking_value(t, i, j));
    CHECK(linking_value(s, 0, 2).is_zero());
}

TEST_CASE("hyperbolic Seifert input gives a hyperbolic Blanchfield form") {
    Matrix H = M(ZZ, {{0, 1}, {0, 0}});
    LinkingForm B = blanchfield(H, LocPair::rational());
    auto r = linking_lagrangian_search(B, SearchMode::Hyperbolic);
    REQUIRE(r);
    REQUIRE(r->size() == 2);
    for (auto& l : *r)
        for (int i = 0; i < l.generators.cols(); ++i)
            for (int j = 0; j < l.generators.cols(); ++j)
                CHECK(linking_value(B, l.generators.cols_of({i}), l.generators.cols_of({j})).is_zero());
}

TEST_CASE("linking lagrangian search over Z") {
    LinkingForm H = linking_new(M(ZZ, {{5, 0}, {0, 5}}), LocPair::integers(), 1, M(ZZ, {{0, 1}, {1, 0}}));
    auto r = linking_lagrangian_search(H, SearchMode::Hyperbolic);
    REQUIRE(r);
    REQUIRE(r->size() == 2);
    Matrix both = Matrix::hcat((*r)[0].generators, (*r)[1].generators);
    CHECK(both.cols() == 2);
    // together they generate Z/5 + Z/5: the determinant is prime to 5
    CHECK(det(both).constant().get_num() % 5 != 0);
    for (auto& l : *r) CHECK(linking_value(H, l.generators, l.generators).is_zero());

    LinkingForm T = linking_new(M(ZZ, {{5}}), LocPair::integers(), 1, M(ZZ, {{2}}));
    CHECK_FALSE(linking_lagrangian_search(T, SearchMode::Metabolic));

    // Z/25 with lambda(x, x) = 1/25 is metabolic (5Z/25) but not hyperbolic
    LinkingForm C = linking_new(M(ZZ, {{25}}), LocPair::integers(), 1);
    auto m = linking_lagrangian_search(C, SearchMode::Metabolic);
    REQUIRE(m);
    CHECK(linking_value(C, (*m)[0].generators, (*m)[0].generators).is_zero());
    CHECK_FALSE(linking_lagrangian_search(C, SearchMode::Hyperbolic));

    // <1/5> + <-1/5> is hyperbolic along the diagonal and antidiagonal
    LinkingForm D = linking_new(M(ZZ, {{5, 0}, {0, 5}}), LocPair::integers(), 1, M(ZZ, {{1, 0}, {0, -1}}));
    CHECK(linking_lagrangian_search(D, SearchMode::Hyperbolic));
    LinkingSearchOptions tiny;
    tiny.max_order = 10;
    CHECK_THROWS_AS(linking_lagrangian_search(D, SearchMode::Hyperbolic, tiny), SearchBudgetExceeded);
}
