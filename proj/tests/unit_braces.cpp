#include "doctest.h"
#include "qdq/braces.hpp"

using namespace qdq;

namespace {

// Q^2 with e0 e0 = e1 and all other products zero except e1 e0 = e0: not associative.
FinAlgebra skew_algebra() { return make_fin_algebra({"a", "b"}, {{0, 0, 1, 1}, {1, 0, 0, 1}}, {}); }

}  // namespace

TEST_CASE("dual numbers and their cochain complex") {
    FinAlgebra A = dual_numbers();
    CHECK(validate_fin_algebra(A).ok());
    CochainComplexData C{A, 3};
    CHECK(C.component_dim(2) == 8);
    Report r = C.verify(101);
    CHECK_MESSAGE(r.ok(), r.text());
}

TEST_CASE("braces of 1-cochains compose") {
    FinAlgebra A = dual_numbers();
    std::mt19937 rng(3);
    Cochain f = random_cochain(A, 1, rng), g = random_cochain(A, 1, rng);
    Cochain fg = brace(A, f, {g});
    for (int a = 0; a < 2; ++a) {
        QVec expect;
        for (const auto& [b, x] : g.values[a])
            for (const auto& [c, y] : f.values[b]) {
                Rational& s = expect[c];
                s += x * y;
                if (s == 0) expect.erase(c);
            }
        CHECK(fg.values[a] == expect);
    }
    CHECK(brace(A, f, {g, g}).is_zero());
}

TEST_CASE("mu{mu} is the associator") {
    FinAlgebra A = skew_algebra();
    CHECK_FALSE(validate_fin_algebra(A).find("associativity")->pass);
    Cochain mu = multiplication_cochain(A);
    Cochain mm = brace(A, mu, {mu});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                QVec ea{{a, 1}}, eb{{b, 1}}, ec{{c, 1}};
                QVec expect = A.mul(A.mul(ea, eb), ec);
                for (const auto& [k, x] : A.mul(ea, A.mul(eb, ec))) {
                    Rational& s = expect[k];
                    s -= x;
                    if (s == 0) expect.erase(k);
                }
                CHECK(cochain_at(mm, {a, b, c}, 2) == expect);
            }
    CHECK_FALSE(gerstenhaber_bracket(A, mu, mu).is_zero());
    CHECK_FALSE(hochschild_delta(A, hochschild_delta(A, basis_cochain(A, 1, 0, 0))).is_zero());
}

TEST_CASE("Tamarkin product in low length") {
    FinAlgebra A = dual_numbers();
    TamarkinBialgebra T = tamarkin_product(A, 3, 3);
    std::mt19937 rng(9);
    Cochain f = random_cochain(A, 2, rng), g = random_cochain(A, 1, rng);
    TcElement F = T.from_cochains({f}), G = T.from_cochains({g});
    // m(f (x) g) = f g + (-1)^{|f||g|} g f + f{g}
    TcElement expect = T.from_cochains({f, g});
    for (const auto& [w, c] : T.from_cochains({g, f}, Rational(1))) expect[w] += c;
    for (const auto& [w, c] : T.from_cochains({brace(A, f, {g})})) expect[w] += c;
    for (auto it = expect.begin(); it != expect.end();) it = it->second == 0 ? expect.erase(it) : std::next(it);
    CHECK(T.mul(F, G) == expect);
    CHECK(T.length_part(T.mul(F, G), 1) == T.from_cochains({brace(A, f, {g})}));

    // S(f g) = (-1)^{|f||g|} g f + f{g}
    TcElement s = T.antipode(T.from_cochains({f, g}));
    TcElement s_expect = T.from_cochains({g, f});
    for (const auto& [w, c] : T.from_cochains({brace(A, f, {g})})) s_expect[w] += c;
    for (auto it = s_expect.begin(); it != s_expect.end();) it = it->second == 0 ? s_expect.erase(it) : std::next(it);
    CHECK(s == s_expect);
    // odd degrees anticommute at the top
    Cochain h = random_cochain(A, 2, rng);
    TcElement top = T.length_part(T.mul(F, T.from_cochains({h})), 2);
    TcElement sh = T.from_cochains({f, h});
    for (const auto& [w, c] : T.from_cochains({h, f}, -1)) sh[w] += c;
    for (auto it = sh.begin(); it != sh.end();) it = it->second == 0 ? sh.erase(it) : std::next(it);
    CHECK(top == sh);
}

TEST_CASE("Tamarkin bialgebra through length three") {
    TamarkinBialgebra T = tamarkin_product(dual_numbers(), 3, 3);
    for (std::uint32_t seed : {1u, 2u}) {
        Report r = tamarkin_verify(T, seed, 3);
        CHECK_MESSAGE(r.ok(), r.text());
    }
}

TEST_CASE("Gerstenhaber bracket from the Tamarkin product") {
    Report r = gerstenhaber_check(dual_numbers(), 17);
    CHECK_MESSAGE(r.ok(), r.text());
    CHECK_THROWS_AS(zero_cochain(dual_numbers(), kMaxArity + 1), AlgebraError);
}
