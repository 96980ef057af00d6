#include <random>

#include "doctest.h"
#include "dlt/errors.hpp"
#include "dlt/forms.hpp"
#include "helpers.hpp"

using namespace dlt;

namespace {

const RingSpec QQ = RingSpec::rationals();
const RingSpec ZZ = RingSpec::integers();

Matrix M(RingSpec R, const std::vector<std::vector<long>>& rows) { return Matrix::from_ints(R, rows); }

SeifertForm trefoil(RingSpec R = QQ) { return seifert_new(M(R, {{-1, 1}, {0, -1}}), -1); }
SeifertForm figure_eight(RingSpec R = QQ) { return seifert_new(M(R, {{-1, 1}, {0, 1}}), -1); }

void check_lagrangians(const SeifertForm& F, const std::vector<Lagrangian>& ls, SearchMode mode) {
    if (mode == SearchMode::Metabolic) {
        REQUIRE(ls.size() == 1);
        CHECK(is_lagrangian(F, ls[0].inclusion));
    } else {
        REQUIRE(ls.size() == 2);
        CHECK(are_complementary(F, ls[0].inclusion, ls[1].inclusion));
    }
}

// Skew forms of odd rank are never nonsingular, so the rank is rounded up.
SeifertForm random_form(std::mt19937& g, RingSpec R, int n, int eps) {
    if (eps == -1 && n % 2) ++n;
    for (;;) {
        Matrix psi = testutil::random_matrix(g, R, n, n, 2);
        try {
            return seifert_new(psi, eps);
        } catch (const NotNonsingular&) {
        }
    }
}

}  // namespace

TEST_CASE("seifert_new examples") {
    CHECK_NOTHROW(trefoil());
    CHECK_THROWS_AS(seifert_new(M(QQ, {{0}}), 1), NotNonsingular);
    CHECK(seifert_new(Matrix(QQ, 0, 0), 1).rank() == 0);
    // over Z the determinant must be +-1
    CHECK_THROWS_AS(seifert_new(M(ZZ, {{1}}), 1), NotNonsingular);
    CHECK_NOTHROW(seifert_new(M(QQ, {{1}}), 1));
}

TEST_CASE("e endomorphism") {
    CHECK(e_endomorphism(trefoil()) == M(QQ, {{0, 1}, {-1, 1}}));
    Matrix e_plus = e_endomorphism(seifert_new(M(QQ, {{-1, 1}, {0, -1}}), 1));
    CHECK(e_plus == Laurent(mpq_class(1, 3)) * M(QQ, {{2, -1}, {1, 1}}));
    CHECK(e_endomorphism(seifert_new(M(QQ, {{0, 1}, {0, 0}}), -1)) == M(QQ, {{0, 0}, {0, 1}}));
    CHECK(e_endomorphism(seifert_new(Matrix(QQ, 0, 0), 1)).rows() == 0);

    std::mt19937 g(11);
    for (int it = 0; it < 20; ++it) {
        int eps = it % 2 ? 1 : -1;
        SeifertForm F = random_form(g, QQ, 1 + it % 4, eps);
        Matrix e = e_endomorphism(F);
        Matrix Phi = F.symmetrised();
        CHECK(Phi * e == F.psi);
        Matrix one = Matrix::identity(QQ, F.rank());
        CHECK(Laurent(eps) * (Phi * (one - e)) == F.psi.adjoint());
    }
}

TEST_CASE("hyperbolic_standard") {
    SeifertForm H = hyperbolic_standard(1, -1, M(QQ, {{1}}));
    CHECK(H.psi == M(QQ, {{0, 1}, {0, 0}}));
    CHECK(hyperbolic_standard(0, 1, Matrix(QQ, 0, 0)).rank() == 0);
    CHECK_THROWS_AS(hyperbolic_standard(1, -1, M(ZZ, {{2}})), NotNonsingular);
    for (RingSpec R : {QQ, ZZ, RingSpec::prime_field(7)}) {
        SeifertForm H2 = hyperbolic_standard(2, 1, M(R, {{1, 1}, {0, 1}}));
        auto r = lagrangian_search(H2, SearchMode::Hyperbolic);
        REQUIRE(r);
        check_lagrangians(H2, *r, SearchMode::Hyperbolic);
    }
}

TEST_CASE("lagrangian search examples") {
    SeifertForm H = seifert_new(M(QQ, {{0, 1}, {0, 0}}), -1);
    auto r = lagrangian_search(H, SearchMode::Hyperbolic);
    REQUIRE(r);
    check_lagrangians(H, *r, SearchMode::Hyperbolic);
    // the two eigenlines of e = diag(0, 1)
    Matrix a = (*r)[0].inclusion, b = (*r)[1].inclusion;
    CHECK(rank(Matrix::hcat(a, M(QQ, {{1}, {0}}))) == 1);
    CHECK(rank(Matrix::hcat(b, M(QQ, {{0}, {1}}))) == 1);
    CHECK((*r)[0].kind == LagrangianKind::HyperbolicPlus);

    CHECK_FALSE(lagrangian_search(trefoil(), SearchMode::Metabolic));
    CHECK_FALSE(lagrangian_search(trefoil(), SearchMode::Hyperbolic));
    CHECK_FALSE(lagrangian_search(figure_eight(), SearchMode::Metabolic));

    SeifertForm Z = seifert_new(Matrix(QQ, 0, 0), 1);
    auto z = lagrangian_search(Z, SearchMode::Metabolic);
    REQUIRE(z);
    CHECK((*z)[0].inclusion.cols() == 0);
    CHECK_FALSE(lagrangian_search(seifert_new(M(QQ, {{1}}), 1), SearchMode::Metabolic));
}

TEST_CASE("lagrangian search over Z") {
    SeifertForm H = seifert_new(M(ZZ, {{0, 1}, {0, 0}}), -1);
    auto r = lagrangian_search(H, SearchMode::Hyperbolic);
    REQUIRE(r);
    check_lagrangians(H, *r, SearchMode::Hyperbolic);
    CHECK_FALSE(lagrangian_search(trefoil(ZZ), SearchMode::Metabolic));

    // trefoil # mirror trefoil is slice over Z
    SeifertForm T = trefoil(ZZ);
    SeifertForm S = direct_sum(T, seifert_new(-T.psi.transpose(), -1));
    auto m = lagrangian_search(S, SearchMode::Metabolic);
    REQUIRE(m);
    check_lagrangians(S, *m, SearchMode::Metabolic);
}

TEST_CASE("F + (-F) is hyperbolic after a change of basis") {
    std::mt19937 g(5);
    for (int it = 0; it < 12; ++it) {
        int eps = it % 2 ? 1 : -1;
        SeifertForm F = random_form(g, QQ, 1 + it % 3, eps);
        SeifertForm D = direct_sum(F, negate(F));
        Matrix P = testutil::random_unimodular(g, QQ, D.rank());
        SeifertForm C = change_basis(D, P);
        CHECK(dw_invariants(C).is_zero());
        auto r = lagrangian_search(C, SearchMode::Hyperbolic);
        REQUIRE(r);
        check_lagrangians(C, *r, SearchMode::Hyperbolic);
    }
}

TEST_CASE("stabilization by hyperbolic forms") {
    std::mt19937 g(21);
    int decided = 0;
    for (int it = 0; it < 16; ++it) {
        int eps = it % 2 ? 1 : -1;
        int n = 2 + 2 * (it % 2);
        SeifertForm F = random_form(g, QQ, n, eps);
        SeifertForm H = hyperbolic_standard(1, eps, M(QQ, {{1}}));
        SeifertForm FH = direct_sum(F, H);
        try {
            bool a = lagrangian_search(F, SearchMode::Hyperbolic).has_value();
            bool b = lagrangian_search(FH, SearchMode::Hyperbolic).has_value();
            CHECK(a == b);
            CHECK(a == dw_invariants(F).is_zero());
            ++decided;
        } catch (const SearchBudgetExceeded&) {
        }
    }
    CHECK(decided == 16);
}

TEST_CASE("DW invariants") {
    CHECK(dw_invariants(hyperbolic_standard(1, -1, M(QQ, {{1}}))).is_zero());
    DWInvariantVector t = dw_invariants(trefoil());
    REQUIRE(t.entries.size() == 1);
    CHECK(t.entries[0].component == Laurent::parse("t^2-t+1", 't'));
    CHECK(t.entries[0].level == 1);
    CHECK(t.entries[0].value == -2);
    CHECK(t.entries[0].modulus == 0);

    // figure eight: no place on the line, only the rank parity survives
    DWInvariantVector f8 = dw_invariants(figure_eight());
    REQUIRE(f8.entries.size() == 1);
    CHECK(f8.entries[0].modulus == 2);
    CHECK((f8 + f8).is_zero());

    // additivity and negation
    SeifertForm T = trefoil();
    CHECK(dw_invariants(direct_sum(T, T)) == t + t);
    CHECK(dw_invariants(negate(T)) == t.negated());
    CHECK((t + t.negated()).is_zero());
    CHECK(dw_invariants(direct_sum(T, negate(T))).is_zero());

    std::mt19937 g(3);
    for (int it = 0; it < 10; ++it) {
        int eps = it % 2 ? 1 : -1;
        SeifertForm A = random_form(g, QQ, 1 + it % 3, eps), B = random_form(g, QQ, 1 + (it + 1) % 3, eps);
        CHECK(dw_invariants(direct_sum(A, B)) == dw_invariants(A) + dw_invariants(B));
        CHECK(dw_invariants(negate(A)) == dw_invariants(A).negated());
        Matrix P = testutil::random_unimodular(g, QQ, A.rank());
        CHECK(dw_invariants(change_basis(A, P)) == dw_invariants(A));
    }
}

TEST_CASE("complex closure halves each nonsplit place") {
    DWInvariantVector c = dw_invariants(trefoil(), Closure::Complex);
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0].value == -1);
    CHECK(c.entries[1].value == -1);
    CHECK(dw_invariants(figure_eight(), Closure::Complex).is_zero());
}

TEST_CASE("higher levels") {
    // a Jordan block of e at s = 1/2 lives at level 2
    SeifertForm F = seifert_new(M(QQ, {{1, 1}, {0, 1}}), 1);
    DWInvariantVector v = dw_invariants(F);
    CHECK(witt_invariants(F).entries.size() <= v.entries.size());
    for (auto& e : witt_invariants(F).entries) CHECK(e.level == 1);
}

TEST_CASE("witt_classes_equal") {
    SeifertForm T = trefoil();
    SeifertForm H = hyperbolic_standard(1, -1, M(QQ, {{1}}));
    CHECK(witt_classes_equal(T, direct_sum(T, H), WittGroup::DW));
    CHECK_FALSE(witt_classes_equal(T, seifert_new(Matrix(QQ, 0, 0), -1), WittGroup::DW));
    CHECK(witt_classes_equal(T, T, WittGroup::DW));
    CHECK(witt_classes_equal(T, T, WittGroup::W));
    CHECK_THROWS_AS(witt_classes_equal(trefoil(ZZ), trefoil(ZZ), WittGroup::DW), UnsupportedRing);
}

TEST_CASE("lagrangian search over a prime field") {
    RingSpec F7 = RingSpec::prime_field(7);
    SeifertForm H = hyperbolic_standard(1, 1, M(F7, {{3}}));
    auto r = lagrangian_search(H, SearchMode::Hyperbolic);
    REQUIRE(r);
    check_lagrangians(H, *r, SearchMode::Hyperbolic);
    CHECK_FALSE(lagrangian_search(seifert_new(M(F7, {{1}}), 1), SearchMode::Metabolic));
}

TEST_CASE("rational residues detect forms with no real signature") {
    // psi ~ <-1, 2>: indefinite, so every signature vanishes, but 2 is not a square
    SeifertForm F = seifert_new(M(QQ, {{-1, 2}, {2, -2}}), 1);
    DWInvariantVector v = dw_invariants(F);
    CHECK(v.entries.empty());
    CHECK_FALSE(v.residues.empty());
    CHECK_FALSE(lagrangian_search(F, SearchMode::Metabolic));
    CHECK_FALSE(lagrangian_search(F, SearchMode::Hyperbolic));
    // <1, -1> has a rational isotropic line
    SeifertForm G = seifert_new(M(QQ, {{1, 0}, {0, -1}}), 1);
    CHECK(dw_invariants(G).is_zero());
    auto r = lagrangian_search(G, SearchMode::Hyperbolic);
    REQUIRE(r);
    check_lagrangians(G, *r, SearchMode::Hyperbolic);
    // p = 3 mod 4 residues live in Z/4
    SeifertForm T = seifert_new(M(QQ, {{3}}), 1);
    DWInvariantVector t = dw_invariants(T);
    CHECK((t + t + t + t).residues.empty());
    CHECK_FALSE((t + t).residues.empty());
}
