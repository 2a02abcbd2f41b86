#include <random>

#include "doctest.h"
#include "qdq/coenv.hpp"
#include "qdq/quantize.hpp"

using namespace qdq;

namespace {

Rational binom(int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

const TensorVec* element_with_free_word(const UcBasis& U, const Word& w) {
    for (int i = 0; i < U.size(); ++i)
        if (U.free_words[i] == w) return &U.elements[i];
    return nullptr;
}

}  // namespace

TEST_CASE("conilpotency witnesses") {
    CHECK(validate_lie_coalgebra(heisenberg_coalgebra()).ok());
    Report r = validate_lie_coalgebra(two_dim_coalgebra());
    CHECK(r.find("coJacobi")->pass);
    CHECK_FALSE(r.find("conilpotency witness")->pass);
    CHECK(heisenberg_coalgebra().homogeneous());
}

TEST_CASE("U^c of a zero cobracket") {
    for (int n : {1, 2, 3}) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
        UcBasis U = uc_compute(make_lie_coalgebra(names, {}), 2);
        int by[3] = {0, 0, 0};
        for (int d : U.degree) ++by[d];
        CHECK(by[0] == 1);
        CHECK(by[1] == n);
        CHECK(by[2] == n * (n + 1) / 2);
        CHECK(uc_verify(U).ok());
    }
}

TEST_CASE("lift of the Heisenberg center") {
    UcBasis U = uc_compute(heisenberg_coalgebra(), 2);
    const TensorVec* z = element_with_free_word(U, {2});
    REQUIRE(z != nullptr);
    // reduced form: zero on the free word x y
    CHECK(*z == TensorVec{{{2}, 1}, {{1, 0}, -1}});
    TensorVec sym{{{2}, 1}, {{0, 1}, frac(1, 2)}, {{1, 0}, frac(-1, 2)}};
    CHECK(psi_apply(U.c, sym).empty());
    CHECK_FALSE(psi_apply(U.c, TensorVec{{{2}, 1}}).empty());
}

TEST_CASE("shuffle product") {
    TensorVec x{{{0}, 1}}, y{{{1}, 1}}, xy{{{0, 1}, 1}};
    CHECK(shuffle_mul(x, y) == TensorVec{{{0, 1}, 1}, {{1, 0}, 1}});
    CHECK(shuffle_mul(x, xy) == TensorVec{{{0, 0, 1}, 2}, {{0, 1, 0}, 1}});
    TensorVec one{{Word{}, 1}};
    CHECK(shuffle_mul(one, xy) == xy);
    CHECK(pbw_star(shuffle_mul(x, xy), 2) == sym_mul(pbw_star(x, 2), pbw_star(xy, 2)));
}

TEST_CASE("pbw_star on the Heisenberg coalgebra") {
    UcBasis U = uc_compute(heisenberg_coalgebra(), 6);
    CHECK(U.size() == 50);
    Report u = uc_verify(U);
    CHECK_MESSAGE(u.ok(), u.text());
    Report p = pbw_star_verify(U);
    CHECK_MESSAGE(p.ok(), p.text());
}

TEST_CASE("pbw_star is multiplicative on random combinations") {
    UcBasis U = uc_compute(heisenberg_coalgebra(), 5);
    std::mt19937 rng(20240607);
    std::uniform_int_distribution<int> coef(-4, 4);
    auto random_element = [&](int maxdeg) {
        TensorVec t;
        for (int i = 0; i < U.size(); ++i) {
            if (U.degree[i] > maxdeg) continue;
            Rational c = coef(rng);
            if (c == 0) continue;
            for (const auto& [w, x] : U.elements[i]) {
                Rational& s = t[w];
                s += c * x;
                if (s == 0) t.erase(w);
            }
        }
        return t;
    };
    for (int trial = 0; trial < 5; ++trial) {
        TensorVec a = random_element(2), b = random_element(3);
        TensorVec p = shuffle_mul(a, b);
        CHECK(psi_apply(U.c, p).empty());
        CHECK(pbw_star(p, 3) == sym_mul(pbw_star(a, 3), pbw_star(b, 3)));
    }
}

TEST_CASE("the non-conilpotent two-dimensional coalgebra") {
    UcBasis U = uc_compute(two_dim_coalgebra(), 4);
    // only the shuffle powers of e1 survive
    CHECK(U.size() == 5);
    Report u = uc_verify(U);
    CHECK(u.find("psi vanishes")->pass);
    CHECK_FALSE(u.find("projection onto c is onto")->pass);
    CHECK_FALSE(pbw_star_verify(U).find("degreewise bijective")->pass);
}

TEST_CASE("S(c) coproduct for a zero cobracket is the unshuffle") {
    LieCoalgebra c = make_lie_coalgebra({"a", "b"}, {});
    SCoproduct S(c, 4);
    for (const Monomial& m : S.monomials()) {
        SymPairVec expect;
        for (int i = 0; i <= m[0]; ++i)
            for (int j = 0; j <= m[1]; ++j)
                expect[{{i, j}, {m[0] - i, m[1] - j}}] = binom(m[0], i) * binom(m[1], j);
        CHECK(S.at(m) == expect);
    }
}

TEST_CASE("S(c) coproduct of the Heisenberg coalgebra") {
    SCoproduct S(heisenberg_coalgebra(), 6);
    Report r = s_coproduct_verify(S);
    CHECK_MESSAGE(r.ok(), r.text());
    SymPairVec expect{{{{0, 0, 1}, {0, 0, 0}}, 1},
                      {{{0, 0, 0}, {0, 0, 1}}, 1},
                      {{{1, 0, 0}, {0, 1, 0}}, frac(1, 2)},
                      {{{0, 1, 0}, {1, 0, 0}}, frac(-1, 2)}};
    CHECK(S.at({0, 0, 1}) == expect);
    SCoproduct T(two_dim_coalgebra(), 5);
    Report t = s_coproduct_verify(T);
    CHECK_MESSAGE(t.ok(), t.text());
}

TEST_CASE("U^c as a Hopf datum and its coPrim") {
    UcHopf H = uc_hopf(heisenberg_coalgebra(), 4, 2);
    Report r = hopf_verify(H.hopf, 4);
    CHECK_MESSAGE(r.ok(), r.text());
    CoPrimResult cp = coprim(H.hopf);
    REQUIRE(cp.lie.dim == 3);
    CHECK(cp.lie.basis == std::vector<std::string>{"x", "y", "z"});
    CHECK(cp.lie.cobracket == heisenberg_coalgebra().cobracket);
}

TEST_CASE("Poisson structure from a Lie bialgebra") {
    LieBialgebra b = heisenberg_dual_bialgebra();
    REQUIRE(validate_bialgebra(b).ok());
    UcPoisson P = poisson_from_bialgebra(b, {1, 1, 2}, 3, 2);
    Report r = poisson_verify(P.poisson, 3);
    CHECK_MESSAGE(r.ok(), r.text());
    CoPrimResult cp = coprim(P.poisson.hopf, &P.poisson.bracket);
    REQUIRE(cp.lie.dim == 3);
    CHECK(cp.lie.bracket == b.bracket);
    CHECK(cp.lie.cobracket == b.cobracket);
    CHECK_THROWS_AS(poisson_from_bialgebra(borel_sl2(), {}, 2, 2), AlgebraError);
}
