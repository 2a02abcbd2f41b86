#include "doctest.h"
#include "qdq/associator.hpp"

#include <random>

using namespace qdq;

namespace {

const std::vector<std::string> AB = {"A", "B"};

NCSeries bracketAB(int D) {
    auto A = NCSeries::letter(AB, D, 0), B = NCSeries::letter(AB, D, 1);
    return nc_bracket(A, B);
}

// Degree-2 oracle: with Phi = 1 + c[A,B], central L = A+B+C gives [A,B] = [B,C] = -[A,C],
// so the hexagon residual is (l^2/2 - 3c)[A,C] and c = l^2/6.
Rational degree2_oracle(const Rational& l) { return l * l / 6; }

}  // namespace

TEST_CASE("associator at low degree") {
    for (Rational l : {Rational(1, 2), Rational(1), Rational(-3, 5)}) {
        auto a = solve_associator(3, l);
        CHECK(a.phi.degree_part(2) == bracketAB(3) * degree2_oracle(l));
        CHECK(verify_associator(a, 3).ok());
    }
    auto trivial = Associator{NCSeries::scalar(AB, 2, 1), Rational(1, 2)};
    CHECK(verify_associator(trivial, 1).ok());
    auto rep = verify_associator(trivial, 2);
    CHECK(!rep.find("hexagon1")->pass);
    CHECK(rep.find("pentagon")->pass);
    auto res = hexagon_residual(trivial.phi, Rational(1, 2), 2, 1);
    auto a = DKElement::generator(3, 2, 1, 2), c = DKElement::generator(3, 2, 2, 3);
    CHECK(res == (a * c - c * a) * Rational(1, 8));
}

TEST_CASE("GT action, product and the zero curve") {
    const int D = 4;
    auto a = solve_associator(D, Rational(1, 2));
    REQUIRE(verify_associator(a, D).ok());
    auto id = gt_identity(D);
    CHECK(gt_act(id, a).phi == a.phi);
    CHECK(gt_verify(id, D, a).ok());

    auto g0 = gt_curve_zero(a);
    CHECK(g0.f.degree_part(1).is_zero());
    CHECK(g0.f.degree_part(2) == bracketAB(D) * Rational(-1, 24));
    CHECK(diamond(a.phi, g0.f) == NCSeries::scalar(AB, D, 1));
    CHECK(diamond(g0.f, a.phi) == NCSeries::scalar(AB, D, 1));
    auto rep = gt_verify(g0, D, a);
    INFO(rep.text());
    CHECK(rep.ok());
    auto moved = gt_act(g0, a);
    CHECK(moved.phi == NCSeries::scalar(AB, D, 1));
    CHECK(moved.lambda == 0);

    // a second associator and the GT element relating them
    auto b = solve_associator(D, Rational(1));
    auto g = gt_mul(gt_curve_zero(a), gt_identity(D));
    CHECK(g.f == g0.f);
    CHECK(gt_mul(id, g0).f == g0.f);
    CHECK(gt_mul(g0, g0).f == gt_mul_alt(g0, g0).f);
    CHECK(gt_act(g0, b).phi == gt_act_alt(g0, b).phi);

    // chi = 2 element transported from a: (2, f) with f . (Phi, 1/2) = (Phi_2, 1)
    NCSeries A = NCSeries::letter(AB, D, 0), B = NCSeries::letter(AB, D, 1);
    NCSeries phi2 = substitute(a.phi, {A * Rational(2), B * Rational(2)});
    GTElement g2{Rational(2), diamond(inv_diamond(a.phi), phi2)};
    auto a2 = gt_act(g2, a);
    CHECK(a2.phi == phi2);
    CHECK(a2.lambda == 1);
    CHECK(verify_associator(a2, D).ok());
    CHECK(gt_act_alt(g2, a).phi == phi2);
    CHECK(gt_verify(g2, D, a).ok());
    CHECK(gt_mul(g2, g0).chi == 0);
    // action law
    CHECK(gt_act(g2, gt_act(g2, a)).phi == gt_act(gt_mul(g2, g2), a).phi);
    CHECK(gt_mul(gt_mul(g2, g0), g2).f == gt_mul(g2, gt_mul(g0, g2)).f);
    CHECK(gt_mul(g2, g2).f == gt_mul_alt(g2, g2).f);

    // a non-solution fails relation 2
    GTElement bad{Rational(1), nc_exp(bracketAB(D))};
    CHECK(!gt_verify(bad, D, a).find("relation2")->pass);
}
