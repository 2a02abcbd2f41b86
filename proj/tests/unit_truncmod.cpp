#include "doctest.h"
#include "qdq/truncmod.hpp"

#include <algorithm>
#include <random>

using namespace qdq;

namespace {

TruncSeries ts(std::vector<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return TruncSeries(static_cast<int>(v.size()), v);
}

TruncSeries random_series(std::mt19937& rng, int n, bool unit) {
    std::uniform_int_distribution<int> d(-4, 4);
    TruncSeries s(n);
    for (int k = 0; k < n; ++k) {
        s[k] = Rational(d(rng), 1 + (d(rng) + 4) % 3);
        s[k].canonicalize();
    }
    if (unit && s[0] == 0) s[0] = 1;
    return s;
}

SVec unit_vec(int i, TruncSeries c) {
    SVec v;
    v[i] = c;
    return v;
}

}  // namespace

TEST_CASE("series arithmetic") {
    CHECK(ts({1, 1, 0, 0}) * ts({1, -1, 1, -1}) == ts({1, 0, 0, 0}));
    auto h = TruncSeries::monomial(5, 1);
    CHECK((h * TruncSeries::monomial(5, 4)).is_zero());
    CHECK(series_invert(TruncSeries(3, Rational(2))) == TruncSeries(3, Rational(1, 2)));
    CHECK(series_invert(ts({1, 1, 0, 0})) == ts({1, -1, 1, -1}));
    CHECK_THROWS_AS(series_invert(h), AlgebraError);
    CHECK_THROWS_AS(ts({1, 2}) * ts({1, 2, 3}), AlgebraError);
    auto two_h = TruncSeries::monomial(6, 1, 2);
    CHECK(series_log(series_exp(two_h)) == two_h);
    CHECK(series_exp(h) * series_exp(h) == series_exp(h + h));
    CHECK(series_log(TruncSeries(4, Rational(1))).is_zero());
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("series ring axioms on random triples") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_series(rng, 5, false), b = random_series(rng, 5, false), c = random_series(rng, 5, false);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        auto u = random_series(rng, 5, true);
        CHECK(u * series_invert(u) == TruncSeries(5, Rational(1)));
        auto nil = a.shifted(1);
        CHECK(series_log(series_exp(nil)) == nil);
    }
}

TEST_CASE("hmap algebra") {
    const int N = 4;
    HModule V(N, {"a", "b"}, {0, 1});
    HModule W(N, {"x", "y", "z"});
    CHECK(tensor_module(V, W).rank() == 6);

    std::mt19937 rng(11);
    HMap f(V, V), g(V, V);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            f.set_entry(i, j, random_series(rng, N, false).shifted(1));
            g.set_entry(i, j, random_series(rng, N, false));
        }
    HMap id = HMap::identity(V);
    CHECK(hmap_compose(id, g) == g);
    CHECK(hmap_compose(g, id) == g);

    HMap p = hmap_add(id, f);
    HMap pinv = neumann_invert(p);
    CHECK(hmap_compose(pinv, p) == id);
    CHECK(hmap_compose(p, pinv) == id);
    CHECK(neumann_invert(id) == id);
    CHECK(endo_log(id).is_zero());
    CHECK(endo_exp(HMap::zero(V, V)) == id);
    CHECK(endo_exp(endo_log(p)) == p);
    CHECK(endo_log(endo_exp(f)) == f);
    CHECK_THROWS_AS(neumann_invert(hmap_add(id, g)), AlgebraError);

    HMap f2(W, W), g2(W, W);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            f2.set_entry(i, j, random_series(rng, N, false));
            g2.set_entry(i, j, random_series(rng, N, false));
        }
    CHECK(hmap_compose(hmap_tensor(f, f2), hmap_tensor(g, g2)) ==
          hmap_tensor(hmap_compose(f, g), hmap_compose(f2, g2)));
}

TEST_CASE("validity degree is enforced") {
    const int N = 3;
    HModule V(N, {"a", "b"}, {0, 2});
    HMap f = HMap::identity(V);
    f.set_validity_degree(1);
    CHECK_NOTHROW(f.apply(unit_vec(0, TruncSeries(N, Rational(1)))));
    CHECK_THROWS_AS(f.apply(unit_vec(1, TruncSeries(N, Rational(1)))), BudgetError);
    // h * b has weight 1
    CHECK_NOTHROW(f.apply(unit_vec(1, TruncSeries::monomial(N, 1))));
    HMap g = HMap::identity(V);
    g.set_validity_degree(0);
    CHECK(hmap_compose(f, g).validity_degree() == 0);
}

TEST_CASE("quotients and kernels") {
    const int N = 3;
    HModule V(N, {"e1", "e2"});
    auto q = submodule_quotient(V, {unit_vec(0, TruncSeries::monomial(N, 1))});
    CHECK(q.quotient.rank() == 2);
    std::vector<int> tor = q.torsion;
    std::sort(tor.begin(), tor.end());
    CHECK(tor == std::vector<int>{1, N});
    CHECK(!q.section.has_value());
    CHECK(q.project(unit_vec(0, TruncSeries::monomial(N, 1))).empty());

    auto q2 = submodule_quotient(V, {unit_vec(0, TruncSeries(N, Rational(1)))});
    CHECK(q2.quotient.rank() == 1);
    CHECK(q2.torsion == std::vector<int>{N});
    REQUIRE(q2.section.has_value());
    CHECK(hmap_compose(q2.projection, *q2.section) == HMap::identity(q2.quotient));

    auto q3 = submodule_quotient(V, {});
    CHECK(q3.quotient.same_basis(V));
    CHECK(q3.projection == HMap::identity(V));

    // random generators: projection kills them
    std::mt19937 rng(3);
    HModule U(N, {"a", "b", "c"});
    std::vector<SVec> gens(2);
    for (auto& g : gens)
        for (int i = 0; i < 3; ++i) add_term(g, i, random_series(rng, N, false));
    auto q4 = submodule_quotient(U, gens);
    for (auto& g : gens) CHECK(q4.project(g).empty());

    HMap f(U, V);
    f.set_entry(0, 0, TruncSeries(N, Rational(1)));
    f.set_entry(1, 1, TruncSeries::monomial(N, 2));
    auto ker = hmap_kernel(f);
    for (auto& k : ker) CHECK(f.apply(k).empty());
    CHECK(ker.size() == 2);
}

TEST_CASE("rational matrices") {
    RatMatrix A(2, 3);
    A(0, 0) = 1; A(0, 1) = 2; A(0, 2) = 3;
    A(1, 0) = 2; A(1, 1) = 4; A(1, 2) = 7;
    CHECK(A.rank() == 2);
    auto ns = A.nullspace();
    REQUIRE(ns.size() == 1);
    for (int i = 0; i < 2; ++i) {
        Rational s = 0;
        for (int j = 0; j < 3; ++j) s += A(i, j) * ns[0][j];
        CHECK(s == 0);
    }
    auto x = solve_linear(A, {Rational(1), Rational(3)});
    REQUIRE(x);
    CHECK(A(1, 0) * (*x)[0] + A(1, 1) * (*x)[1] + A(1, 2) * (*x)[2] == 3);
    RatMatrix B(2, 2);
    B(0, 0) = 1; B(0, 1) = 2; B(1, 0) = 3; B(1, 1) = 4;
    CHECK(B.determinant() == -2);
    RatMatrix C(2, 1);
    C(0, 0) = 1; C(1, 0) = 1;
    CHECK(!solve_linear(C, {Rational(1), Rational(2)}));
}
