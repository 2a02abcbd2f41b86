#include "doctest.h"
#include "qdq/freealg.hpp"

#include <random>

using namespace qdq;

namespace {

const std::vector<std::string> AB = {"A", "B"};

NCSeries letter(int i, int D = 4) { return NCSeries::letter(AB, D, i); }

NCSeries random_lie(std::mt19937& rng, int D, int min_degree) {
    std::uniform_int_distribution<int> d(-3, 3);
    NCSeries r(AB, D);
    for (int deg = min_degree; deg <= D; ++deg)
        for (const auto& b : lyndon_basis(AB, deg, D)) r += b.expansion * frac(d(rng), 2);
    return r;
}

DKElement t(int n, int D, int i, int j) { return DKElement::generator(n, D, i, j); }
DKElement br(const DKElement& a, const DKElement& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("noncommutative products") {
    auto A = letter(0), B = letter(1);
    CHECK((A * B).coeff({0, 1}) == 1);
    CHECK((A * B).terms().size() == 1);
    auto s = (A + B) * (A + B);
    CHECK(s.terms().size() == 4);
    NCSeries top(AB, 4);
    top.add({0, 0, 0, 0}, 1);
    CHECK((top * B).is_zero());
    CHECK_THROWS_AS(A * NCSeries::letter({"X", "Y"}, 4, 0), AlgebraError);
}

TEST_CASE("exp and log") {
    const int D = 2;
    auto A = letter(0, D), B = letter(1, D);
    auto z = nc_log(nc_exp(A) * nc_exp(B));
    CHECK(z == A + B + nc_bracket(A, B) * Rational(1, 2));
    CHECK(nc_exp(NCSeries(AB, 3)) == NCSeries::scalar(AB, 3, 1));
    auto A5 = letter(0, 5);
    CHECK(nc_log(nc_exp(A5)) == A5);
    std::mt19937 rng(5);
    for (int i = 0; i < 5; ++i) {
        auto x = random_lie(rng, 5, 1);
        CHECK(nc_log(nc_exp(x)) == x);
        auto g = nc_exp(x);
        CHECK(g * nc_inverse(g) == NCSeries::scalar(AB, 5, 1));
        CHECK(is_lie(nc_log(g * nc_exp(random_lie(rng, 5, 1)))));
    }
}

TEST_CASE("coproduct, group-like and primitive elements") {
    auto A = letter(0, 5), B = letter(1, 5);
    CHECK(is_grouplike(nc_exp(A)));
    CHECK(!is_grouplike(NCSeries::scalar(AB, 5, 1) + A));
    CHECK(is_primitive(nc_bracket(A, B)));
    CHECK(!is_primitive(A * B));
    CHECK(is_lie(nc_bracket(nc_bracket(A, B), A)));
    CHECK(!is_lie(A * A));
    std::mt19937 rng(9);
    for (int i = 0; i < 5; ++i) {
        auto g = nc_exp(random_lie(rng, 5, 1)), h = nc_exp(random_lie(rng, 5, 1));
        CHECK(is_grouplike(g * h));
        CHECK(is_grouplike(nc_inverse(g)));
        // Delta is multiplicative: compare on a pair of polynomials
        auto p = A + A * B, q = B * B + A;
        auto lhs = coproduct(p * q);
        TensorSeries rhs;
        auto cp = coproduct(p), cq = coproduct(q);
        for (const auto& [k1, c1] : cp.terms)
            for (const auto& [k2, c2] : cq.terms) {
                Word l = k1.first, r = k1.second;
                l.insert(l.end(), k2.first.begin(), k2.first.end());
                r.insert(r.end(), k2.second.begin(), k2.second.end());
                if (static_cast<int>(l.size() + r.size()) > 5) continue;
                rhs.terms[{l, r}] += c1 * c2;
            }
        std::erase_if(rhs.terms, [](const auto& kv) { return kv.second == 0; });
        CHECK(lhs == rhs);
    }
}

TEST_CASE("substitution, T_G and the diamond product") {
    const int D = 4;
    auto A = letter(0, D), B = letter(1, D);
    auto x = A * B + B * Rational(3);
    CHECK(substitute(x, {A, B}) == x);
    CHECK(substitute(NCSeries(AB, D), {A, B}).is_zero());
    auto G = nc_exp(A);
    CHECK(apply_T(G, B) == nc_inverse(G) * B * G);
    CHECK_THROWS_AS(substitute(x, {A + NCSeries::scalar(AB, D, 1), B}), AlgebraError);

    std::mt19937 rng(21);
    auto one = NCSeries::scalar(AB, D, 1);
    for (int trial = 0; trial < 4; ++trial) {
        auto G1 = nc_exp(random_lie(rng, D, 1));
        auto G2 = nc_exp(random_lie(rng, D, 1));
        auto G3 = nc_exp(random_lie(rng, D, 1));
        CHECK(diamond(one, G1) == G1);
        CHECK(diamond(G1, one) == G1);
        CHECK(diamond(diamond(G1, G2), G3) == diamond(G1, diamond(G2, G3)));
        CHECK(diamond(G1, inv_diamond(G1)) == one);
        CHECK(diamond(inv_diamond(G1), G1) == one);
        // T_{G1} o T_{G2} = T_{G1 <> G2} on generators
        CHECK(apply_T(G1, apply_T(G2, B)) == apply_T(diamond(G1, G2), B));
        CHECK(apply_T_inverse(G1, apply_T(G1, G2)) == G2);
    }
}

TEST_CASE("Lyndon bases") {
    CHECK(lyndon_words(2, 1).size() == 2);
    auto b2 = lyndon_basis(AB, 2, 4);
    REQUIRE(b2.size() == 1);
    CHECK(b2[0].bracket == "[A,B]");
    CHECK(lyndon_basis(AB, 4, 4).size() == 3);
    CHECK(lyndon_basis(AB, 5, 5).size() == 6);
    CHECK(lyndon_basis({"a", "b", "c"}, 3, 3).size() == 8);
    for (int d = 1; d <= 5; ++d)
        for (const auto& b : lyndon_basis(AB, d, 5)) CHECK(is_lie(b.expansion));
    std::mt19937 rng(1);
    auto x = random_lie(rng, 5, 4).degree_part(4);
    auto basis = lyndon_basis(AB, 4, 5);
    auto coords = lie_coordinates(x, basis);
    NCSeries back(AB, 5);
    for (size_t i = 0; i < basis.size(); ++i) back += basis[i].expansion * coords[i];
    CHECK(back == x);
}

TEST_CASE("Drinfeld-Kohno normal forms") {
    const int D = 5;
    // disjoint generators commute
    CHECK(dk_normal_form(4, D, {{3, 4}, {1, 2}}) == dk_normal_form(4, D, {{1, 2}, {3, 4}}));
    CHECK(br(t(4, D, 1, 4), t(4, D, 2, 3)).is_zero());
    CHECK(br(t(4, D, 1, 3), t(4, D, 2, 4)).is_zero());
    // infinitesimal braid relations on every triple
    for (auto [i, j, k] : std::vector<std::tuple<int, int, int>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
        CHECK(br(t(4, D, i, j), t(4, D, i, k) + t(4, D, j, k)).is_zero());
        CHECK(br(t(4, D, i, k), t(4, D, i, j) + t(4, D, j, k)).is_zero());
        CHECK(br(t(4, D, j, k), t(4, D, i, j) + t(4, D, i, k)).is_zero());
    }
    auto c = t(3, D, 1, 2) + t(3, D, 1, 3) + t(3, D, 2, 3);
    CHECK(br(c, t(3, D, 1, 2) * t(3, D, 2, 3)).is_zero());
    CHECK(br(t(3, D, 1, 2), t(3, D, 1, 3) + t(3, D, 2, 3)).is_zero());

    // associativity (confluence of the rewriting) on random words
    std::mt19937 rng(17);
    std::vector<std::pair<int, int>> gens = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};
    std::uniform_int_distribution<int> pick(0, 5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<int, int>> w;
        for (int i = 0; i < 5; ++i) w.push_back(gens[pick(rng)]);
        auto left = dk_normal_form(4, D, w);
        DKElement right = DKElement::one(4, D);
        for (auto it = w.rbegin(); it != w.rend(); ++it) right = t(4, D, it->first, it->second) * right;
        CHECK(left == right);
        auto a = dk_normal_form(4, D, {w[0], w[1]});
        auto b = dk_normal_form(4, D, {w[2]});
        auto e = dk_normal_form(4, D, {w[3], w[4]});
        CHECK((a * b) * e == a * (b * e));
        // normal form is idempotent: re-multiplying by one changes nothing
        CHECK(left * DKElement::one(4, D) == left);
    }
    CHECK_THROWS_AS(dk_normal_form(3, 1, {{1, 2}, {1, 3}}), AlgebraError);
}
