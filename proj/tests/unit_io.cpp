#include "doctest.h"
#include "qdq/io.hpp"
#include "qdq/pbw.hpp"

using namespace qdq;

TEST_CASE("rationals in json") {
    CHECK(rational_from_json(Json("3/6"), "t") == frac(1, 2));
    CHECK(rational_from_json(Json(-4), "t") == -4);
    CHECK(rational_json(frac(-2, 6)) == Json("-1/3"));
    CHECK_THROWS_AS(rational_from_json(Json("1/0"), "t"), InputError);
    CHECK_THROWS_AS(rational_from_json(Json("x/2"), "t"), InputError);
    CHECK_THROWS_AS(rational_from_json(Json(0.5), "t"), InputError);
}

TEST_CASE("associator files") {
    Associator a = solve_associator(3, frac(1, 2));
    Json j = associator_json(a);
    Associator b = associator_from_json(Json::parse(j.dump()));
    CHECK(b.phi == a.phi);
    CHECK(b.lambda == a.lambda);
    CHECK(associator_fingerprint(b) == associator_fingerprint(a));
    CHECK(associator_fingerprint(a).size() == 16);
    b.phi.add({0, 1}, 1);
    CHECK(associator_fingerprint(b) != associator_fingerprint(a));

    Json bad = j;
    bad["terms"][0]["word"] = Json::array({"A", "C"});
    CHECK_THROWS_AS(associator_from_json(bad), InputError);
    bad = j;
    bad.erase("lambda");
    CHECK_THROWS_AS(associator_from_json(bad), InputError);
}

TEST_CASE("algebraic inputs round trip") {
    LieBialgebra b = borel_sl2();
    LieBialgebra b2 = bialgebra_from_json(bialgebra_json(b));
    CHECK(b2.basis == b.basis);
    CHECK(b2.bracket == b.bracket);
    CHECK(b2.cobracket == b.cobracket);

    DYModule V = borel_standard_module();
    DYModule V2 = dy_module_from_json(dy_module_json(V));
    CHECK(V2.action == V.action);
    CHECK(V2.coaction == V.coaction);
    CHECK(dy_validate(V2).ok());

    LieCoalgebra c = heisenberg_coalgebra();
    LieCoalgebra c2 = coalgebra_from_json(coalgebra_json(c));
    CHECK(c2.cobracket == c.cobracket);
    CHECK(c2.triangular_order == c.triangular_order);

    FinAlgebra A = dual_numbers();
    FinAlgebra A2 = fin_algebra_from_json(fin_algebra_json(A));
    CHECK(A2.mult == A.mult);
    CHECK(A2.unit == A.unit);
}

TEST_CASE("schema violations") {
    Json j = bialgebra_json(borel_sl2());
    Json bad = j;
    bad["bracket"][0][2] = "F";
    CHECK_THROWS_AS(bialgebra_from_json(bad), InputError);
    bad = j;
    bad["basis"] = Json::array({"H", "H"});
    CHECK_THROWS_AS(bialgebra_from_json(bad), InputError);
    bad = j;
    bad["kind"] = "lie_coalgebra";
    CHECK_THROWS_AS(bialgebra_from_json(bad), InputError);
    bad = j;
    bad["cobracket"][0] = Json::array({"E", "H"});
    CHECK_THROWS_AS(bialgebra_from_json(bad), InputError);
    CHECK_THROWS_AS(load_json("/nonexistent/file.json"), InputError);
}

TEST_CASE("Hopf tables round trip") {
    HopfData H = quantized_borel(3, 2);
    HopfData H2 = hopf_from_json(Json::parse(hopf_json(H).dump()));
    CHECK(H2.carrier.labels == H.carrier.labels);
    CHECK(H2.carrier.degrees == H.carrier.degrees);
    CHECK(H2.unit == H.unit);
    CHECK(H2.aug_generators == H.aug_generators);
    CHECK(H2.mu == H.mu);
    CHECK(H2.Delta == H.Delta);
    CHECK(H2.S_inv == H.S_inv);
    CHECK(H2.budget() == H.budget());
    CHECK(hopf_verify(H2, 3).ok());

    auto U = u_enveloping(borel_sl2(), 3, 2);
    CoPoissonHopfData C = copoisson_from_json(copoisson_json(U.copoisson));
    CHECK(C.delta == U.copoisson.delta);
    CHECK(C.quantizable == U.copoisson.quantizable);
    CHECK(copoisson_verify(C, 3).ok());

    Json bad = hopf_json(H);
    bad["mu"]["entries"][0][2] = Json::array({"1", "0", "0"});
    CHECK_THROWS_AS(hopf_from_json(bad), InputError);
}
