#include "qdq/pbw.hpp"

#include <algorithm>
#include <functional>

namespace qdq {

namespace {

void qadd(QVec& v, int k, const Rational& c) {
    if (c == 0) return;
    Rational& x = v[k];
    x += c;
    if (x == 0) v.erase(k);
}

std::string monomial_label(const LieBialgebra& b, const std::vector<int>& e) {
    std::string s;
    for (int g = 0; g < static_cast<int>(e.size()); ++g) {
        if (e[g] == 0) continue;
        if (!s.empty()) s += ' ';
        s += b.basis[g];
        if (e[g] > 1) s += "^" + std::to_string(e[g]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

PBWBasis::PBWBasis(const LieBialgebra& b, int working_degree, int order) : b_(b), W_(working_degree), order_(order) {
    const int n = b.dim;
    std::vector<int> e(n, 0);
    std::vector<std::pair<int, std::vector<int>>> found;
    std::function<void(int, int)> rec = [&](int g, int used) {
        if (g == n) {
            found.emplace_back(used, e);
            return;
        }
        for (int a = 0; used + a * b.degree(g) <= W_; ++a) {
            e[g] = a;
            rec(g + 1, used + a * b.degree(g));
        }
        e[g] = 0;
    };
    rec(0, 0);
    // by degree, then lexicographically decreasing
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second > y.second;
    });
    for (auto& [d, ex] : found) {
        index_[ex] = rank();
        exps_.push_back(ex);
        deg_.push_back(d);
    }
}

int PBWBasis::index(const std::vector<int>& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
}

int PBWBasis::generator(int g) const {
    std::vector<int> e(b_.dim, 0);
    e[g] = 1;
    return index(e);
}

HModule PBWBasis::module() const {
    std::vector<std::string> labels;
    for (const auto& e : exps_) labels.push_back(monomial_label(b_, e));
    return HModule(order_, labels, deg_);
}

const QVec& PBWBasis::mul_gen(int m, int g) {
    auto key = std::make_pair(m, g);
    if (auto it = gen_memo_.find(key); it != gen_memo_.end()) return it->second;
    std::vector<int> e = exps_[m];
    int k = -1;
    for (int i = b_.dim - 1; i >= 0; --i)
        if (e[i] > 0) {
            k = i;
            break;
        }
    QVec out;
    if (k <= g) {
        ++e[g];
        int j = index(e);
        if (j < 0) throw BudgetError("PBW product beyond the working degree");
        out[j] = 1;
    } else {
        // m = m1 e_k and e_k e_g = e_g e_k + [e_k, e_g]
        --e[k];
        int m1 = index(e);
        QVec first = mul_gen(m1, g);
        for (const auto& [i, c] : first)
            for (const auto& [j, d] : mul_gen(i, k)) qadd(out, j, c * d);
        for (const auto& [gen, c] : b_.bracket[k][g])
            for (const auto& [j, d] : mul_gen(m1, gen)) qadd(out, j, c * d);
    }
    return gen_memo_.emplace(key, std::move(out)).first->second;
}

const QVec& PBWBasis::product(int i, int j) {
    auto key = std::make_pair(i, j);
    if (auto it = prod_memo_.find(key); it != prod_memo_.end()) return it->second;
    if (deg_[i] + deg_[j] > W_) throw BudgetError("PBW product beyond the working degree");
    QVec cur{{i, Rational(1)}};
    for (int g = 0; g < b_.dim; ++g)
        for (int r = 0; r < exps_[j][g]; ++r) {
            QVec next;
            for (const auto& [m, c] : cur)
                for (const auto& [t, d] : mul_gen(m, g)) qadd(next, t, c * d);
            cur = std::move(next);
        }
    return prod_memo_.emplace(key, std::move(cur)).first->second;
}

SVec PBWBasis::mul(const SVec& x, const SVec& y) {
    SVec out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) {
            if (deg_[i] + deg_[j] > W_) continue;
            TruncSeries ab = series_mul(a, b);
            if (ab.is_zero()) continue;
            for (const auto& [k, c] : product(i, j)) add_term(out, k, ab * c);
        }
    return out;
}

TVec PBWBasis::tmul(const TVec& x, const TVec& y) {
    TVec out;
    for (const auto& [kx, a] : x) {
        int x0 = key_get(kx, 0), x1 = key_get(kx, 1);
        for (const auto& [ky, b] : y) {
            int y0 = key_get(ky, 0), y1 = key_get(ky, 1);
            if (deg_[x0] + deg_[x1] + deg_[y0] + deg_[y1] > W_) continue;
            TruncSeries ab = series_mul(a, b);
            if (ab.is_zero()) continue;
            const QVec& p0 = product(x0, y0);
            const QVec& p1 = product(x1, y1);
            for (const auto& [i, c] : p0)
                for (const auto& [j, d] : p1) add_term(out, key_make({i, j}), ab * (c * d));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ClassicalTables {
    HModule U, UU, k;
    HMap mu, eta, epsilon;
    int unit;
};

ClassicalTables classical_tables(PBWBasis& B, int D) {
    ClassicalTables t;
    const int n = B.rank(), N = B.order();
    t.U = B.module();
    t.UU = tensor_module(t.U, t.U);
    t.k = ground_module(N);
    t.unit = B.index(std::vector<int>(B.exponents(0).size(), 0));
    t.mu = HMap(t.UU, t.U, D);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (B.degree(i) + B.degree(j) > B.working_degree()) continue;
            for (const auto& [r, c] : B.product(i, j)) t.mu.set_entry(r, i * n + j, TruncSeries(N, c));
        }
    t.eta = HMap(t.k, t.U, D);
    t.eta.set_entry(t.unit, 0, TruncSeries(N, 1));
    t.epsilon = HMap(t.U, t.k, D);
    t.epsilon.set_entry(0, t.unit, TruncSeries(N, 1));
    return t;
}

HMap from_columns(const HModule& dom, const HModule& cod, int D, const std::vector<SVec>& cols) {
    HMap r(dom, cod, D);
    for (int j = 0; j < dom.rank(); ++j) r.column(j) = cols[j];
    return r;
}

std::vector<int> generator_list(const std::vector<int>& e) {
    std::vector<int> gens;
    for (int g = 0; g < static_cast<int>(e.size()); ++g)
        for (int r = 0; r < e[g]; ++r) gens.push_back(g);
    return gens;
}

}  // namespace

PBWAlgebra u_enveloping(const LieBialgebra& b, int D, int N) {
    Report v = validate_bialgebra(b);
    if (!v.ok()) throw AlgebraError("u_enveloping: invalid Lie bialgebra\n" + v.text());
    PBWAlgebra A;
    A.base = b;
    A.max_degree = D;
    A.order = N;
    A.basis = std::make_shared<PBWBasis>(b, A.working_degree(), N);
    PBWBasis& B = *A.basis;
    const int n = B.rank();
    ClassicalTables t = classical_tables(B, D);
    const TruncSeries one(N, 1);

    std::vector<TVec> delta_gen(b.dim), cob_gen(b.dim);
    for (int g = 0; g < b.dim; ++g) {
        int x = B.generator(g);
        if (x < 0) continue;
        add_term(delta_gen[g], key_make({x, t.unit}), one);
        add_term(delta_gen[g], key_make({t.unit, x}), one);
        for (const auto& [jk, c] : b.cobracket[g]) {
            TruncSeries s = b.hbar_scaled ? TruncSeries::monomial(N, 1, c) : TruncSeries(N, c);
            int i = B.generator(jk.first), j = B.generator(jk.second);
            if (i >= 0 && j >= 0 && B.degree(i) + B.degree(j) <= B.working_degree())
                add_term(cob_gen[g], key_make({i, j}), s);
        }
    }

    std::vector<TVec> Delta(n), delta(n);
    std::vector<SVec> S(n);
    for (int m = 0; m < n; ++m) {
        std::vector<int> gens = generator_list(B.exponents(m));
        if (gens.empty()) {
            Delta[m] = TVec{{key_make({t.unit, t.unit}), one}};
            S[m] = SVec{{t.unit, one}};
            continue;
        }
        std::vector<int> e = B.exponents(m);
        int x = gens.back();
        --e[x];
        int rest = B.index(e);
        Delta[m] = B.tmul(Delta[rest], delta_gen[x]);
        // delta(m' x) = delta(m') Delta(x) + Delta(m') delta(x)
        delta[m] = B.tmul(delta[rest], delta_gen[x]);
        for (const auto& [k, c] : B.tmul(Delta[rest], cob_gen[x])) add_term(delta[m], k, c);
        SVec s{{t.unit, one}};
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) s = B.mul(s, SVec{{B.generator(*it), TruncSeries(N, -1)}});
        S[m] = s;
    }

    HopfData& H = A.copoisson.hopf;
    H.carrier = t.U;
    H.unit = t.unit;
    for (int g = 0; g < b.dim; ++g)
        if (B.generator(g) >= 0) H.aug_generators.push_back(B.generator(g));
    H.mu = t.mu;
    H.eta = t.eta;
    H.epsilon = t.epsilon;
    std::vector<SVec> dcols(n), cobcols(n);
    for (int m = 0; m < n; ++m) {
        dcols[m] = tvec_to_svec(Delta[m], {n, n});
        cobcols[m] = tvec_to_svec(delta[m], {n, n});
    }
    H.Delta = from_columns(t.U, t.UU, D, dcols);
    H.S = from_columns(t.U, t.U, D, S);
    H.S_inv = H.S;
    A.copoisson.delta = from_columns(t.U, t.UU, D, cobcols);
    A.copoisson.quantizable = b.hbar_scaled;
    return A;
}

PoissonHopfData kks_symmetric(const LieBialgebra& b, int D, int N) {
    LieBialgebra flat = abelian_bialgebra(b.dim);
    flat.basis = b.basis;
    flat.degrees = b.degrees;
    PBWAlgebra S = u_enveloping(flat, D, N);
    PBWBasis& B = *S.basis;
    const int n = B.rank(), W = B.working_degree();
    PoissonHopfData P;
    P.hopf = S.copoisson.hopf;
    P.coquantizable = b.hbar_scaled;
    P.bracket = HMap(tensor_module(P.hopf.carrier, P.hopf.carrier), P.hopf.carrier, D);
    // {m, n} = sum a_i b_j (m / x_i)(n / x_j)[x_i, x_j]
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (B.degree(p) + B.degree(q) > W) continue;
            SVec out;
            for (int i = 0; i < b.dim; ++i)
                for (int j = 0; j < b.dim; ++j) {
                    int ai = B.exponents(p)[i], bj = B.exponents(q)[j];
                    if (ai == 0 || bj == 0 || b.bracket[i][j].empty()) continue;
                    std::vector<int> e = B.exponents(p), f = B.exponents(q);
                    --e[i];
                    --f[j];
                    SVec rest = B.mul(SVec{{B.index(e), TruncSeries(N, 1)}}, SVec{{B.index(f), TruncSeries(N, 1)}});
                    SVec br;
                    for (const auto& [k, c] : b.bracket[i][j])
                        add_term(br, B.generator(k),
                                 b.hbar_scaled ? TruncSeries::monomial(N, 1, c * ai * bj) : TruncSeries(N, c * ai * bj));
                    for (const auto& [k, c] : B.mul(rest, br)) add_term(out, k, c);
                }
            P.bracket.column(p * n + q) = out;
        }
    return P;
}

HopfData quantized_borel(int D, int N) {
    LieBialgebra b = borel_sl2();
    PBWBasis B(b, D + N - 1, N);
    const int n = B.rank();
    ClassicalTables t = classical_tables(B, D);
    const int h = B.generator(0), e = B.generator(1);
    const TruncSeries one(N, 1);

    SVec exp_h, exp_mh;
    Rational fact = 1;
    for (int k = 0; k < N; ++k) {
        if (k > 0) fact *= k;
        std::vector<int> ex{k, 0};
        int idx = B.index(ex);
        Rational c = Rational(1) / fact;
        add_term(exp_h, idx, TruncSeries::monomial(N, k, c));
        add_term(exp_mh, idx, TruncSeries::monomial(N, k, k % 2 ? Rational(-c) : c));
    }
    TVec dH{{key_make({h, t.unit}), one}, {key_make({t.unit, h}), one}};
    TVec dE{{key_make({t.unit, e}), one}};
    for (const auto& [i, c] : exp_h) add_term(dE, key_make({e, i}), c);
    SVec sH{{h, TruncSeries(N, -1)}};
    SVec sE = scaled(B.mul(SVec{{e, one}}, exp_mh), Rational(-1));

    std::vector<SVec> dcols(n), scols(n);
    for (int m = 0; m < n; ++m) {
        const std::vector<int>& ex = B.exponents(m);
        TVec d{{key_make({t.unit, t.unit}), one}};
        for (int r = 0; r < ex[0]; ++r) d = B.tmul(d, dH);
        for (int r = 0; r < ex[1]; ++r) d = B.tmul(d, dE);
        dcols[m] = tvec_to_svec(d, {n, n});
        // S(H^a E^b) = S(E)^b S(H)^a
        SVec s{{t.unit, one}};
        for (int r = 0; r < ex[1]; ++r) s = B.mul(s, sE);
        for (int r = 0; r < ex[0]; ++r) s = B.mul(s, sH);
        scols[m] = s;
    }

    HopfData H;
    H.carrier = t.U;
    H.unit = t.unit;
    H.aug_generators = {h, e};
    H.mu = t.mu;
    H.eta = t.eta;
    H.epsilon = t.epsilon;
    H.Delta = from_columns(t.U, t.UU, D, dcols);
    H.S = from_columns(t.U, t.U, D, scols);
    H.S_inv = antipode_inverse(H.S);
    H.set_budget(D);
    return H;
}

}  // namespace qdq
