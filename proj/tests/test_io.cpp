#include "doctest.h"

#include "dlt/correspondence.hpp"
#include "dlt/errors.hpp"
#include "dlt/io.hpp"
#include "dlt/random.hpp"

using namespace dlt;
using io::json;

TEST_CASE("ring and element json") {
    CHECK(io::ring_from_json("Q") == RingSpec::rationals());
    CHECK(io::ring_from_json("F5") == RingSpec::prime_field(5));
    CHECK(io::ring_from_json("Z[z,z^-1]") == RingSpec::int_laurent());
    CHECK_THROWS_AS(io::ring_from_json(3), ParseError);
    RingSpec L = RingSpec::int_laurent();
    CHECK(io::element_from_json("-1 + z^-1 + z", L) == Laurent::parse("z + z^-1 - 1"));
    CHECK(io::element_from_json(7, RingSpec::prime_field(5)) == Laurent(2));
    CHECK_THROWS(io::element_from_json("z", RingSpec::rationals()));
    CHECK_THROWS(io::element_from_json("1/2", RingSpec::integers()));
}

TEST_CASE("matrix json") {
    RingSpec L = RingSpec::int_laurent();
    Matrix m = io::matrix_from_json(json::parse(R"([[1, "z"], ["-1 + z^-1", 0]])"), L);
    CHECK(m.rows() == 2);
    CHECK(m(0, 1) == Laurent::z(1));
    CHECK(io::matrix_from_json(io::to_json(m), L) == m);
    Matrix e(L, 0, 3);
    CHECK(io::matrix_from_json(io::to_json(e), L) == e);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1, 2], [3]]"), L), ParseError);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"rows": 2})"), L), ParseError);
}

TEST_CASE("round trips") {
    Rng g(5);
    for (int trial = 0; trial < 8; ++trial) {
        RingSpec R = trial % 2 ? RingSpec::rationals() : RingSpec::prime_field(5);
        Structure x = random_poincare(g, R, trial % 4, trial % 3 ? 1 : -1, 8);
        CHECK(io::complex_from_json(io::to_json(x.complex())) == x.complex());
        CHECK(io::structure_from_json(io::to_json(x)) == x);
        ReductionTrace t = reduce(x, {false});
        for (const auto& c : t.certificates) {
            DoubleCobordismCertificate back = io::certificate_from_json(json::parse(io::to_json(c).dump()));
            CHECK(verify_double_cobordism(back).valid);
            CHECK(back.plus.f == c.plus.f);
        }
        json tj = io::to_json(t);
        CHECK(tj["steps"].size() == t.steps.size());
    }
}

TEST_CASE("bad complexes") {
    CHECK_THROWS_AS(io::complex_from_json(json::parse(R"({"ring": "Q", "dims": [1, 1]})").at("nope")),
                    json::exception);
    CHECK_THROWS_AS(io::complex_from_json(json::parse(R"({"dims": [1]})")), ParseError);
    CHECK_THROWS(io::complex_from_json(json::parse(R"({"ring": "Q", "dims": [1, 1], "d": {"1": [[1, 2]]}})")));
    CHECK_THROWS(
        io::complex_from_json(json::parse(R"({"ring": "Q", "dims": [1, 1, 1], "d": {"1": [[1]], "2": [[1]]}})")));
}

TEST_CASE("catalog records") {
    KnotRecord r = io::record_from_json(
        json::parse(R"({"schema": 1, "name": "3_1", "seifert": [[-1, 1], [0, -1]], "epsilon": -1})"));
    CHECK(r.k == 0);
    CHECK(r.seifert.rows() == 2);
    CHECK(io::record_from_json(io::to_json(r)).seifert == r.seifert);
    CHECK_THROWS_AS(io::record_from_json(json::parse(R"({"name": "x", "seifert": [[1]], "k": 0, "epsilon": 1})")),
                    ParseError);
    CHECK_THROWS_AS(io::record_from_json(json::parse(R"({"name": "x", "seifert": [[1]]})")), ParseError);
    CHECK_THROWS_AS(io::record_from_json(json::parse(R"({"schema": 2, "name": "x", "seifert": [[1]], "k": 0})")),
                    ParseError);
    json rep = io::to_json(knot_report(r));
    CHECK(rep["alexander"] == "1 - z + z^2");
    CHECK(rep["hyperbolic_verdict"]["verdict"] == "NotHyperbolic");
    CHECK(rep["witt_slice_verdict"]["verdict"] == "Obstructed");
}
