#include "doctest.h"
#include "qdq/quantize.hpp"

using namespace qdq;

namespace {

HMap mod_h(const HMap& f) {
    HMap out(f.domain(), f.codomain(), f.validity_degree());
    for (const auto& [i, j, x] : f.triplets()) out.set_entry(i, j, x.reduced(1));
    return out;
}

HMap flip_after(const HMap& f, int n) {
    HMap out(f.domain(), f.codomain(), f.validity_degree());
    for (const auto& [i, j, x] : f.triplets()) out.set_entry((i % n) * n + i / n, j, x);
    return out;
}

// Coefficients h^0..h^k agree on every column within the budget.
bool agree_through(const HMap& f, const HMap& g, int k, int budget) {
    for (int j = 0; j < f.domain().rank(); ++j) {
        if (f.domain().degree(j) > budget) continue;
        for (const auto& [i, x] : difference(f.column(j), g.column(j)))
            if (!x.reduced(k + 1).is_zero()) return false;
    }
    return true;
}

const Associator& kz4() {
    static Associator a = solve_associator(4, frac(1, 2));
    return a;
}

}  // namespace

TEST_CASE("C_- is a Drinfeld-Yetter module over C") {
    auto U = u_enveloping(borel_sl2(), 3, 3);
    auto C = std::make_shared<const CoPoissonHopfData>(U.copoisson);
    Report r = dy_hopf_validate(c_minus_module(C), 3);
    CHECK_MESSAGE(r.ok(), r.text());
}

TEST_CASE("quantization of a zero cobracket is the identity") {
    LieBialgebra b = borel_sl2();
    for (auto& d : b.cobracket) d.clear();
    auto U = u_enveloping(b, 3, 3);
    HopfData Q = quantize_minus(U.copoisson, kz4());
    CHECK(hmap_agree(Q.mu, U.copoisson.hopf.mu, 3));
    CHECK(hmap_agree(Q.Delta, U.copoisson.hopf.Delta, 3));
    CHECK(hmap_agree(Q.S, U.copoisson.hopf.S, 3));
}

TEST_CASE("quantization of the Borel bialgebra") {
    const int D = 3, N = 3;
    auto U = u_enveloping(borel_sl2(), D, N);
    const HopfData& C = U.copoisson.hopf;
    HopfData Q = quantize_minus(U.copoisson, kz4());
    Report r = hopf_verify(Q, D);
    CHECK_MESSAGE(r.ok(), r.text());
    CHECK(hmap_agree(mod_h(Q.mu), mod_h(C.mu), D));
    CHECK(hmap_agree(mod_h(Q.Delta), mod_h(C.Delta), D));
    CHECK(hmap_agree(mod_h(Q.S), mod_h(C.S), D));
    // (Delta - Delta^op)/h = delta mod h
    HMap skew = hmap_add(Q.Delta, hmap_neg(flip_after(Q.Delta, C.rank())));
    CHECK(agree_through(skew, U.copoisson.delta, 1, D));
}

TEST_CASE("dequantization of the quantized Borel") {
    const int D = 3, N = 3;
    HopfData H = quantized_borel(D, N);
    CoPoissonHopfData C = dequantize_minus(H, kz4());
    Report r = copoisson_verify(C, D);
    CHECK_MESSAGE(r.ok(), r.text());
    CHECK(C.quantizable);
    CHECK(hmap_agree(mod_h(C.hopf.mu), mod_h(H.mu), D));
    CHECK(hmap_agree(mod_h(C.hopf.Delta), mod_h(H.Delta), D));
}

TEST_CASE("round trip and primitives") {
    for (int N : {2, 3}) {
        auto U = u_enveloping(borel_sl2(), 3, N);
        RoundTripResult rt = roundtrip_check(U, kz4());
        CHECK_MESSAGE(rt.report.ok(), rt.report.text());
        CHECK(rt.witness_found);
    }
    LieBialgebra p = prim(quantized_borel(3, 3));
    CHECK(p.dim == 2);
    auto D = dequantize_minus(quantized_borel(3, 3), kz4());
    LieBialgebra q = prim(D.hopf, &D.delta);
    REQUIRE(q.dim == 2);
    CHECK(validate_bialgebra(q).ok());
}

TEST_CASE("functoriality under the Borel scaling") {
    const int D = 3, N = 3;
    auto U = u_enveloping(borel_sl2(), D, N);
    HMap f = borel_scaling(U.copoisson.hopf.carrier, 3, D);
    CHECK(copoisson_morphism_verify(f, U.copoisson, U.copoisson, D).ok());
    HopfData Q = quantize_minus(U.copoisson, kz4());
    Report rq = hopf_morphism_verify(f, Q, Q, D);
    CHECK_MESSAGE(rq.ok(), rq.text());
    HopfData H = quantized_borel(D, N);
    auto DH = dequantize_minus(H, kz4());
    Report rd = copoisson_morphism_verify(f, DH, DH, D);
    CHECK_MESSAGE(rd.ok(), rd.text());
    HMap g = borel_scaling(U.copoisson.hopf.carrier, 1, D);
    g.set_entry(0, 0, TruncSeries(N, 2));  // not multiplicative
    CHECK_FALSE(hopf_morphism_verify(g, Q, Q, D).ok());
}

TEST_CASE("module transport") {
    const int D = 3, N = 3;
    auto U = u_enveloping(borel_sl2(), D, N);
    DYHopfModule X = dy_lift(borel_standard_module(), U);
    Report rx = dy_hopf_validate(X, D);
    CHECK_MESSAGE(rx.ok(), rx.text());
    auto QC = std::make_shared<const HopfData>(quantize_minus(U.copoisson, kz4()));
    YDModuleData Y = quantize_module(X, kz4(), QC);
    Report ry = yd_validate(Y, D);
    CHECK_MESSAGE(ry.ok(), ry.text());
    auto DQ = std::make_shared<const CoPoissonHopfData>(dequantize_minus(*QC, kz4()));
    DYHopfModule Z = dequantize_module(Y, kz4(), DQ);
    Report rz = dy_hopf_validate(Z, D);
    CHECK_MESSAGE(rz.ok(), rz.text());
}

TEST_CASE("module round trip at order two") {
    const int D = 3, N = 2;
    auto U = u_enveloping(borel_sl2(), D, N);
    RoundTripResult rt = roundtrip_check(U, kz4());
    REQUIRE(rt.witness_found);
    DYHopfModule X = dy_lift(borel_standard_module(), U);
    auto QC = std::make_shared<const HopfData>(quantize_minus(U.copoisson, kz4()));
    YDModuleData Y = quantize_module(X, kz4(), QC);
    auto DQ = std::make_shared<const CoPoissonHopfData>(rt.dequantized);
    DYHopfModule Z = dequantize_module(Y, kz4(), DQ);
    DYHopfModule back = pull_back(Z, rt.witness, X.base);
    ModuleComparison cmp = compare_dy_modules(X, back, D);
    CHECK_MESSAGE(cmp.found, cmp.report.text());
}

TEST_CASE("a non-associator breaks the quantization") {
    Associator trivial{NCSeries::scalar(kAssociatorAlphabet, 4, 1), frac(1, 2)};
    auto U = u_enveloping(borel_sl2(), 3, 3);
    Report r = hopf_verify(quantize_minus(U.copoisson, trivial), 3);
    CHECK_FALSE(r.find("coassociativity")->pass);
    Report d = copoisson_verify(dequantize_minus(quantized_borel(3, 3), trivial), 3);
    CHECK_FALSE(d.ok());
}

TEST_CASE("plus side through duality") {
    const int D = 3, N = 3;
    LieBialgebra b = make_lie_bialgebra({"x", "y"}, {{0, 1, 1, 1}, {1, 0, 1, -1}}, {});
    PoissonHopfData P = kks_symmetric(b, D, N);
    HopfData Q = quantize_plus(P, kz4());
    Report r = hopf_verify(Q, D);
    CHECK_MESSAGE(r.ok(), r.text());
    // mu - mu^op = h {,} at first order
    const int n = Q.rank();
    HMap skew = hmap_add(Q.mu, hmap_neg(hmap_compose(Q.mu, [&] {
        HMap f(tensor_module(Q.carrier, Q.carrier), tensor_module(Q.carrier, Q.carrier));
        for (int i = 0; i < n * n; ++i) f.set_entry((i % n) * n + i / n, i, TruncSeries(N, 1));
        return f;
    }())));
    CHECK(agree_through(skew, P.bracket, 1, D));
    PoissonHopfData back = dequantize_plus(Q, kz4());
    Report rp = poisson_verify(back, D);
    CHECK_MESSAGE(rp.ok(), rp.text());
}
