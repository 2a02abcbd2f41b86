#include <functional>
#include <sstream>

#include "qdq/quantize.hpp"

namespace qdq {

namespace {

using Residual = std::map<std::tuple<int, int, int>, Rational>;

// Solves residual(x) = 0 for a residual that is affine in x, by probing.
std::optional<std::vector<Rational>> solve_affine(int m, const std::function<Residual(const std::vector<Rational>&)>& f) {
    std::vector<Rational> x(m, Rational(0));
    Residual b = f(x);
    std::vector<Residual> cols(m);
    std::map<std::tuple<int, int, int>, int> rows;
    for (const auto& [k, v] : b) rows.emplace(k, 0);
    for (int i = 0; i < m; ++i) {
        x[i] = 1;
        cols[i] = f(x);
        x[i] = 0;
        for (const auto& [k, v] : b) cols[i][k] -= v;
        for (const auto& [k, v] : cols[i])
            if (v != 0) rows.emplace(k, 0);
    }
    int r = 0;
    for (auto& [k, idx] : rows) idx = r++;
    RatMatrix A(r, m);
    std::vector<Rational> rhs(r, Rational(0));
    for (int i = 0; i < m; ++i)
        for (const auto& [k, v] : cols[i])
            if (v != 0) A(rows.at(k), i) = v;
    for (const auto& [k, v] : b) rhs[rows.at(k)] = -v;
    return solve_linear(A, rhs);
}

// Coefficient k of every entry of column j, for columns where it is exact.
void collect(Residual& r, int eq, const HMap& f, int k, int budget) {
    const int N = f.domain().order;
    for (int j = 0; j < f.domain().rank(); ++j) {
        int e = std::max(0, std::max(f.domain().degree(j), 0) - budget);
        if (k >= N - e) continue;
        for (const auto& [i, x] : f.column(j))
            if (x[k] != 0) r[{eq, i, j}] += x[k];
    }
}

void collect(Residual& r, int eq, int sub, const SVec& v, int k) {
    for (const auto& [i, x] : v)
        if (x[k] != 0) r[{eq, sub, i}] += x[k];
}

SVec tensor_vec(const SVec& a, const SVec& b, int nb) {
    SVec out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) add_term(out, i * nb + j, series_mul(x, y));
    return out;
}

HMap reduce_mod_h(const HMap& f) {
    HModule dom(1, f.domain().labels, f.domain().degrees), cod(1, f.codomain().labels, f.codomain().degrees);
    HMap out(dom, cod, f.validity_degree());
    for (const auto& [i, j, x] : f.triplets()) out.set_entry(i, j, TruncSeries(1, x[0]));
    return out;
}

HMap h_part(const HMap& f, int k) {
    HMap out(f.domain(), f.codomain(), f.validity_degree());
    for (const auto& [i, j, x] : f.triplets()) out.set_entry(i, j, TruncSeries(f.domain().order, x[k]));
    return out;
}

std::string obstruction(int k) { return "no solution at h^" + std::to_string(k); }

}  // namespace

Report hopf_morphism_verify(const HMap& f, const HopfData& A, const HopfData& B, int budget) {
    Report r;
    r.add("multiplicative", hmap_agree(hmap_compose(f, A.mu), hmap_compose(B.mu, hmap_tensor(f, f)), budget));
    r.add("unital", hmap_agree(hmap_compose(f, A.eta), B.eta, budget));
    r.add("comultiplicative", hmap_agree(hmap_compose(hmap_tensor(f, f), A.Delta), hmap_compose(B.Delta, f), budget));
    r.add("counital", hmap_agree(hmap_compose(B.epsilon, f), A.epsilon, budget));
    r.add("commutes with antipode", hmap_agree(hmap_compose(f, A.S), hmap_compose(B.S, f), budget));
    return r;
}

Report copoisson_morphism_verify(const HMap& f, const CoPoissonHopfData& A, const CoPoissonHopfData& B, int budget) {
    Report r = hopf_morphism_verify(f, A.hopf, B.hopf, budget);
    r.add("commutes with cobracket",
          hmap_agree(hmap_compose(hmap_tensor(f, f), A.delta), hmap_compose(B.delta, f), budget));
    return r;
}

HopfData classical_limit(const HopfData& H) {
    HopfData out = H;
    out.carrier = HModule(1, H.carrier.labels, H.carrier.degrees);
    for (HMap* m : {&out.mu, &out.eta, &out.Delta, &out.epsilon, &out.S, &out.S_inv}) *m = reduce_mod_h(*m);
    return out;
}

LieBialgebra prim(const HopfData& H, const HMap* delta) {
    const int n = H.rank(), budget = H.budget();
    HopfData C = classical_limit(H);
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
        if (std::max(C.carrier.degree(j), 0) <= budget) cols.push_back(j);
    // Delta - id (x) 1 - 1 (x) id on the columns within budget
    RatMatrix A(n * n, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        int j = cols[c];
        for (const auto& [i, x] : C.Delta.column(j)) A(i, c) += x[0];
        A(j * n + H.unit, c) -= 1;
        A(H.unit * n + j, c) -= 1;
    }
    std::vector<std::vector<Rational>> ker = A.nullspace();
    const int d = static_cast<int>(ker.size());
    std::vector<SVec> p(d);
    LieBialgebra b;
    b.dim = d;
    b.hbar_scaled = delta != nullptr;
    for (int a = 0; a < d; ++a) {
        int lead = -1;
        for (int c = 0; c < static_cast<int>(cols.size()); ++c)
            if (ker[a][c] != 0) {
                p[a][cols[c]] = TruncSeries(1, ker[a][c]);
                if (lead < 0 || C.carrier.degree(cols[c]) >= C.carrier.degree(lead)) lead = cols[c];
            }
        b.basis.push_back(C.carrier.labels[lead]);
        b.degrees.push_back(std::max(C.carrier.degree(lead), 0));
    }
    // Coordinates of a vector in the span of the p's (resp. p (x) p).
    auto coords = [&](const SVec& v, bool pairs) {
        const int m = pairs ? d * d : d, rows = pairs ? n * n : n;
        RatMatrix M(rows, m);
        std::vector<Rational> rhs(rows, Rational(0));
        for (int c = 0; c < m; ++c) {
            SVec basis = pairs ? tensor_vec(p[c / d], p[c % d], n) : p[c];
            for (const auto& [i, x] : basis) M(i, c) = x[0];
        }
        for (const auto& [i, x] : v) rhs[i] = x[0];
        auto sol = solve_linear(M, rhs);
        if (!sol) throw AlgebraError("prim: bracket leaves the primitive space");
        return *sol;
    };
    b.bracket.assign(d, std::vector<QVec>(d));
    b.cobracket.assign(d, QPairVec{});
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            SVec c = C.mu.apply(tensor_vec(p[i], p[j], n));
            for (const auto& [k, x] : C.mu.apply(tensor_vec(p[j], p[i], n))) add_term(c, k, -x);
            std::vector<Rational> x = coords(c, false);
            for (int k = 0; k < d; ++k)
                if (x[k] != 0) b.bracket[i][j][k] = x[k];
        }
        if (delta) {
            SVec in;
            for (const auto& [k, x] : p[i]) in[k] = TruncSeries(delta->domain().order, x[0]);
            SVec first;
            for (const auto& [k, x] : delta->apply(in)) first[k] = TruncSeries(1, x.order() > 1 ? x[1] : Rational(0));
            std::vector<Rational> x = coords(first, true);
            for (int k = 0; k < d * d; ++k)
                if (x[k] != 0) b.cobracket[i][{k / d, k % d}] = x[k];
        }
    }
    return b;
}

RoundTripResult roundtrip_check(const PBWAlgebra& U, const Associator& phi) {
    RoundTripResult res;
    const CoPoissonHopfData& C = U.copoisson;
    const HopfData& CH = C.hopf;
    const int budget = CH.budget(), N = CH.order(), n = CH.rank();
    HopfData Q = quantize_minus(C, phi);
    res.dequantized = dequantize_minus(Q, phi);
    const CoPoissonHopfData& D = res.dequantized;
    Report& r = res.report;

    bool classical = true;
    for (auto [x, y] : {std::pair{&CH.mu, &D.hopf.mu}, {&CH.Delta, &D.hopf.Delta}, {&CH.S, &D.hopf.S}})
        classical = classical && hmap_agree(reduce_mod_h(*x), reduce_mod_h(*y), budget);
    r.add("mod h agreement", classical);
    bool first = N < 2 || hmap_agree(reduce_mod_h(h_part(C.delta, 1)), reduce_mod_h(h_part(D.delta, 1)), budget);
    r.add("first-order cobracket agreement", first);

    // Images of the generators, psi_g = e_g + sum_k h^k u_{g,k}.
    const LieBialgebra& b = U.base;
    const PBWBasis& B = *U.basis;
    std::vector<SVec> psi(b.dim);
    for (int g = 0; g < b.dim; ++g) psi[g][B.generator(g)] = TruncSeries(N, 1);
    auto mulD = [&](const SVec& x, const SVec& y) { return D.hopf.mu.apply(tensor_vec(x, y, n)); };
    auto psi_of = [&](int a) { return psi[a]; };
    std::string failure;
    for (int k = 1; k < N && failure.empty(); ++k) {
        std::vector<std::pair<int, int>> unknowns;  // (generator, basis index)
        for (int g = 0; g < b.dim; ++g)
            for (int m = 0; m < n; ++m)
                if (B.degree(m) <= b.degree(g) + k) unknowns.emplace_back(g, m);
        const std::vector<SVec> base = psi;
        auto trial = [&](const std::vector<Rational>& x) {
            psi = base;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] != 0) add_term(psi[unknowns[i].first], unknowns[i].second, TruncSeries::monomial(N, k, x[i]));
        };
        auto residual = [&](const std::vector<Rational>& x) {
            trial(x);
            Residual out;
            for (int g = 0; g < b.dim; ++g) {
                SVec prim = D.hopf.Delta.apply(psi[g]);
                for (const auto& [i, c] : psi[g]) {
                    add_term(prim, i * n + D.hopf.unit, -c);
                    add_term(prim, D.hopf.unit * n + i, -c);
                }
                collect(out, 0, g, prim, k);
                for (int h = g + 1; h < b.dim; ++h) {
                    SVec br = mulD(psi[g], psi[h]);
                    for (const auto& [i, c] : mulD(psi[h], psi[g])) add_term(br, i, -c);
                    for (const auto& [l, c] : b.bracket[g][h])
                        for (const auto& [i, y] : psi_of(l)) add_term(br, i, y * -c);
                    collect(out, 1, g * b.dim + h, br, k);
                }
                if (k + 1 < N) {
                    SVec cob = D.delta.apply(psi[g]);
                    for (const auto& [jk, c] : b.cobracket[g]) {
                        TruncSeries s = b.hbar_scaled ? TruncSeries::monomial(N, 1, -c) : TruncSeries(N, -c);
                        for (const auto& [i, y] : tensor_vec(psi_of(jk.first), psi_of(jk.second), n))
                            add_term(cob, i, series_mul(y, s));
                    }
                    collect(out, 2, g, cob, k + 1);
                }
            }
            return out;
        };
        auto sol = solve_affine(static_cast<int>(unknowns.size()), residual);
        if (!sol) {
            failure = obstruction(k);
            psi = base;
        } else {
            trial(*sol);
        }
    }

    if (failure.empty()) {
        res.witness = build_map(CH.carrier, D.hopf.carrier, budget, [&](const SVec& in) {
            SVec out;
            for (const auto& [m, c] : in) {
                SVec acc{{D.hopf.unit, c}};
                const std::vector<int>& e = B.exponents(m);
                for (int g = 0; g < static_cast<int>(e.size()); ++g)
                    for (int t = 0; t < e[g]; ++t) acc = mulD(acc, psi[g]);
                for (const auto& [i, x] : acc) add_term(out, i, x);
            }
            return out;
        });
        Report m = copoisson_morphism_verify(res.witness, C, D, budget);
        res.witness_found = m.ok();
        r.merge(m, "witness ");
        if (!m.ok()) failure = "generator solution does not extend";
    }
    r.add("isomorphism = id mod h", res.witness_found, failure);
    return res;
}

HMap borel_scaling(const HModule& carrier, const Rational& c, int budget) {
    HMap f(carrier, carrier, budget);
    for (int j = 0; j < carrier.rank(); ++j) {
        int power = 0;
        std::istringstream in(carrier.labels[j]);
        std::string tok;
        while (in >> tok)
            if (tok == "E")
                power += 1;
            else if (tok.rfind("E^", 0) == 0)
                power += std::stoi(tok.substr(2));
        Rational s = 1;
        for (int k = 0; k < power; ++k) s *= c;
        f.set_entry(j, j, TruncSeries(carrier.order, s));
    }
    return f;
}

DYHopfModule pull_back(const DYHopfModule& Y, const HMap& psi, std::shared_ptr<const CoPoissonHopfData> C) {
    DYHopfModule out;
    out.base = std::move(C);
    out.carrier = Y.carrier;
    out.action = hmap_compose(Y.action, hmap_tensor(psi, HMap::identity(Y.carrier)));
    out.coaction = hmap_compose(hmap_tensor(HMap::identity(Y.carrier), neumann_invert(psi)), Y.coaction);
    return out;
}

ModuleComparison compare_dy_modules(const DYHopfModule& X, const DYHopfModule& Y, int budget) {
    ModuleComparison res;
    const int r = X.carrier.rank(), N = X.carrier.order;
    HMap theta = HMap::identity(X.carrier);
    theta.set_validity_degree(budget);
    const HMap idC = HMap::identity(X.base->hopf.carrier);
    std::string failure;
    for (int k = 1; k < N && failure.empty(); ++k) {
        const HMap base = theta;
        auto trial = [&](const std::vector<Rational>& x) {
            theta = base;
            for (int i = 0; i < r * r; ++i)
                if (x[i] != 0) theta.set_entry(i / r, i % r, theta.entry(i / r, i % r) + TruncSeries::monomial(N, k, x[i]));
        };
        auto residual = [&](const std::vector<Rational>& x) {
            trial(x);
            Residual out;
            HMap act = hmap_add(hmap_compose(theta, X.action),
                                hmap_neg(hmap_compose(Y.action, hmap_tensor(idC, theta))));
            collect(out, 0, act, k, budget);
            if (k + 1 < N) {
                HMap coact = hmap_add(hmap_compose(hmap_tensor(theta, idC), X.coaction),
                                      hmap_neg(hmap_compose(Y.coaction, theta)));
                collect(out, 1, coact, k + 1, budget);
            }
            return out;
        };
        auto sol = solve_affine(r * r, residual);
        if (!sol) {
            failure = obstruction(k);
            theta = base;
        } else {
            trial(*sol);
        }
    }
    res.theta = theta;
    bool act = hmap_agree(hmap_compose(theta, X.action), hmap_compose(Y.action, hmap_tensor(idC, theta)), budget);
    bool coact = hmap_agree(hmap_compose(hmap_tensor(theta, idC), X.coaction), hmap_compose(Y.coaction, theta), budget);
    res.report.add("intertwines actions", act, failure);
    res.report.add("intertwines coactions", coact);
    res.found = failure.empty() && act && coact;
    return res;
}

}  // namespace qdq
