#include "qdq/liebialg.hpp"

#include <sstream>

namespace qdq {

namespace {

void qadd(QVec& v, int k, const Rational& c) {
    if (c == 0) return;
    Rational& x = v[k];
    x += c;
    if (x == 0) v.erase(k);
}

void qadd(QPairVec& v, std::pair<int, int> k, const Rational& c) {
    if (c == 0) return;
    Rational& x = v[k];
    x += c;
    if (x == 0) v.erase(k);
}

std::string residual_text(std::size_t bad, const std::string& where) {
    if (bad == 0) return {};
    std::ostringstream os;
    os << bad << " nonzero residual entries, first at " << where;
    return os.str();
}

// Tracks the first failing location of an exact check.
struct Tally {
    std::size_t bad = 0;
    std::string first;
    void note(bool ok, const std::string& where) {
        if (ok) return;
        if (bad++ == 0) first = where;
    }
    void report(Report& r, const std::string& name) const { r.add(name, bad == 0, residual_text(bad, first)); }
};

std::string idx(std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

// delta applied to a vector of b.
QPairVec cobracket_of(const LieBialgebra& b, const QVec& x) {
    QPairVec out;
    for (const auto& [i, c] : x)
        for (const auto& [jk, d] : b.cobracket[i]) qadd(out, jk, c * d);
    return out;
}

TruncSeries hbar_factor(const LieBialgebra& b, int order, const Rational& c) {
    if (b.hbar_scaled) return TruncSeries::monomial(order, 1, c);
    return TruncSeries(order, c);
}

}  // namespace

QVec LieBialgebra::br(const QVec& x, const QVec& y) const {
    QVec out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y)
            for (const auto& [k, c] : bracket[i][j]) qadd(out, k, a * b * c);
    return out;
}

LieBialgebra make_lie_bialgebra(std::vector<std::string> basis,
                                const std::vector<std::tuple<int, int, int, Rational>>& bracket,
                                const std::vector<std::tuple<int, int, int, Rational>>& cobracket) {
    LieBialgebra b;
    b.dim = static_cast<int>(basis.size());
    b.basis = std::move(basis);
    b.bracket.assign(b.dim, std::vector<QVec>(b.dim));
    b.cobracket.assign(b.dim, {});
    for (const auto& [i, j, k, c] : bracket) {
        if (i < 0 || j < 0 || k < 0 || i >= b.dim || j >= b.dim || k >= b.dim)
            throw AlgebraError("bracket index out of range");
        qadd(b.bracket[i][j], k, c);
    }
    for (const auto& [i, j, k, c] : cobracket) {
        if (i < 0 || j < 0 || k < 0 || i >= b.dim || j >= b.dim || k >= b.dim)
            throw AlgebraError("cobracket index out of range");
        qadd(b.cobracket[i], {j, k}, c);
    }
    return b;
}

LieBialgebra borel_sl2() {
    return make_lie_bialgebra({"H", "E"}, {{0, 1, 1, 2}, {1, 0, 1, -2}}, {{1, 1, 0, 1}, {1, 0, 1, -1}});
}

LieBialgebra abelian_bialgebra(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return make_lie_bialgebra(std::move(names), {}, {});
}

Report validate_bialgebra(const LieBialgebra& b) {
    Report r;
    const int n = b.dim;
    auto e = [](int i) { return QVec{{i, 1}}; };

    Tally anti, jac, coanti, cojac, cocycle;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QVec s = b.bracket[i][j];
            for (const auto& [k, c] : b.bracket[j][i]) qadd(s, k, c);
            anti.note(s.empty(), idx({i, j}));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                QVec s = b.br(e(i), b.br(e(j), e(k)));
                for (const auto& [m, c] : b.br(e(j), b.br(e(k), e(i)))) qadd(s, m, c);
                for (const auto& [m, c] : b.br(e(k), b.br(e(i), e(j)))) qadd(s, m, c);
                jac.note(s.empty(), idx({i, j, k}));
            }
    for (int i = 0; i < n; ++i) {
        QPairVec s = b.cobracket[i];
        for (const auto& [jk, c] : b.cobracket[i]) qadd(s, {jk.second, jk.first}, c);
        coanti.note(s.empty(), idx({i}));
    }
    // Alt (delta (x) id) delta = 0 on each basis vector.
    for (int i = 0; i < n; ++i) {
        std::map<std::tuple<int, int, int>, Rational> s;
        for (const auto& [jk, c] : b.cobracket[i])
            for (const auto& [pq, d] : b.cobracket[jk.first]) {
                auto [p, q] = pq;
                int k = jk.second;
                for (auto t : {std::tuple{p, q, k}, std::tuple{q, k, p}, std::tuple{k, p, q}}) {
                    Rational& x = s[t];
                    x += c * d;
                    if (x == 0) s.erase(t);
                }
            }
        cojac.note(s.empty(), idx({i}));
    }
    // delta[x,y] = x.delta(y) - y.delta(x), adjoint action on both legs.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            QPairVec s = cobracket_of(b, b.bracket[i][j]);
            auto ad = [&](int x, int y, const Rational& sign) {
                for (const auto& [pq, c] : b.cobracket[y]) {
                    for (const auto& [m, d] : b.bracket[x][pq.first]) qadd(s, {m, pq.second}, -sign * c * d);
                    for (const auto& [m, d] : b.bracket[x][pq.second]) qadd(s, {pq.first, m}, -sign * c * d);
                }
            };
            ad(i, j, 1);
            ad(j, i, -1);
            cocycle.note(s.empty(), idx({i, j}));
        }
    anti.report(r, "bracket antisymmetry");
    jac.report(r, "Jacobi");
    coanti.report(r, "cobracket antisymmetry");
    cojac.report(r, "coJacobi");
    cocycle.report(r, "cocycle");
    return r;
}

QVec DYModule::act(int i, const QVec& v) const {
    QVec out;
    for (const auto& [a, c] : v)
        for (const auto& [b, d] : action[i][a]) qadd(out, b, c * d);
    return out;
}

HModule DYModule::module(int order) const { return HModule(order, basis); }

DYModule trivial_dy_module(const LieBialgebra& b, int dim) {
    DYModule V;
    V.base = b;
    V.dim = dim;
    for (int a = 0; a < dim; ++a) V.basis.push_back("v" + std::to_string(a));
    V.action.assign(b.dim, std::vector<QVec>(dim));
    V.coaction.assign(dim, {});
    return V;
}

DYModule cobracket_module(const LieBialgebra& b) {
    DYModule V = trivial_dy_module(b, b.dim);
    V.basis = b.basis;
    V.coaction = b.cobracket;
    return V;
}

DYModule borel_standard_module() {
    DYModule V = trivial_dy_module(borel_sl2(), 2);
    V.action[0][0] = {{0, 1}};
    V.action[0][1] = {{1, -1}};
    V.action[1][1] = {{0, 1}};
    V.coaction[0] = {{{0, 0}, frac(1, 2)}, {{1, 1}, 2}};
    V.coaction[1] = {{{1, 0}, frac(-1, 2)}};
    return V;
}

Report dy_validate(const DYModule& V) {
    Report r;
    const LieBialgebra& b = V.base;
    const int n = b.dim, m = V.dim;
    if (static_cast<int>(V.action.size()) != n || static_cast<int>(V.coaction.size()) != m)
        throw AlgebraError("dy_validate: table shapes do not match dimensions");
    Tally mod, comod, compat;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < m; ++a) {
                QVec v{{a, 1}};
                QVec s = V.act(i, V.act(j, v));
                for (const auto& [k, c] : V.act(j, V.act(i, v))) qadd(s, k, -c);
                for (const auto& [k, c] : b.bracket[i][j])
                    for (const auto& [p, d] : V.action[k][a]) qadd(s, p, -c * d);
                mod.note(s.empty(), idx({i, j, a}));
            }
    // (rho (x) id) rho - (id (x) flip)(rho (x) id) rho = (id (x) delta) rho
    for (int a = 0; a < m; ++a) {
        std::map<std::tuple<int, int, int>, Rational> s;
        auto put = [&](std::tuple<int, int, int> k, const Rational& c) {
            Rational& x = s[k];
            x += c;
            if (x == 0) s.erase(k);
        };
        for (const auto& [bi, c] : V.coaction[a]) {
            for (const auto& [pj, d] : V.coaction[bi.first]) {
                put({pj.first, pj.second, bi.second}, c * d);
                put({pj.first, bi.second, pj.second}, -c * d);
            }
            for (const auto& [jk, d] : b.cobracket[bi.second]) put({bi.first, jk.first, jk.second}, -c * d);
        }
        comod.note(s.empty(), idx({a}));
    }
    // rho(x.v) = x.v0 (x) v1 + v0 (x) [x, v1] + x1.v (x) x2
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a) {
            QPairVec s;
            for (const auto& [p, c] : V.action[i][a])
                for (const auto& [qk, d] : V.coaction[p]) qadd(s, qk, c * d);
            for (const auto& [bk, c] : V.coaction[a]) {
                for (const auto& [p, d] : V.action[i][bk.first]) qadd(s, {p, bk.second}, -c * d);
                for (const auto& [k, d] : b.bracket[i][bk.second]) qadd(s, {bk.first, k}, -c * d);
            }
            for (const auto& [jk, c] : b.cobracket[i])
                for (const auto& [p, d] : V.action[jk.first][a]) qadd(s, {p, jk.second}, -c * d);
            compat.note(s.empty(), idx({i, a}));
        }
    mod.report(r, "module");
    comod.report(r, "comodule");
    compat.report(r, "compatibility");
    return r;
}

DYModule dy_tensor(const DYModule& V, const DYModule& W) {
    if (V.base.basis != W.base.basis || V.base.bracket != W.base.bracket || V.base.cobracket != W.base.cobracket)
        throw AlgebraError("dy_tensor: base mismatch");
    DYModule T;
    T.base = V.base;
    T.dim = V.dim * W.dim;
    for (int a = 0; a < V.dim; ++a)
        for (int b = 0; b < W.dim; ++b) T.basis.push_back(V.basis[a] + "|" + W.basis[b]);
    const int n = V.base.dim;
    T.action.assign(n, std::vector<QVec>(T.dim));
    T.coaction.assign(T.dim, {});
    for (int a = 0; a < V.dim; ++a)
        for (int b = 0; b < W.dim; ++b) {
            int ab = a * W.dim + b;
            for (int i = 0; i < n; ++i) {
                for (const auto& [p, c] : V.action[i][a]) qadd(T.action[i][ab], p * W.dim + b, c);
                for (const auto& [q, c] : W.action[i][b]) qadd(T.action[i][ab], a * W.dim + q, c);
            }
            for (const auto& [qk, c] : W.coaction[b]) qadd(T.coaction[ab], {a * W.dim + qk.first, qk.second}, c);
            for (const auto& [pk, c] : V.coaction[a]) qadd(T.coaction[ab], {pk.first * W.dim + b, pk.second}, c);
        }
    return T;
}

HMap inf_braiding(const DYModule& V, const DYModule& W, int order) {
    if (V.base.basis != W.base.basis) throw AlgebraError("inf_braiding: base mismatch");
    HModule M = tensor_module(V.module(order), W.module(order));
    HMap t(M, M);
    for (int a = 0; a < V.dim; ++a)
        for (int b = 0; b < W.dim; ++b) {
            SVec& col = t.column(a * W.dim + b);
            // -v0 (x) v1.w
            for (const auto& [pk, c] : V.coaction[a])
                for (const auto& [q, d] : W.action[pk.second][b])
                    add_term(col, pk.first * W.dim + q, hbar_factor(V.base, order, -c * d));
            // -w1.v (x) w0
            for (const auto& [qk, c] : W.coaction[b])
                for (const auto& [p, d] : V.action[qk.second][a])
                    add_term(col, p * W.dim + qk.first, hbar_factor(V.base, order, -c * d));
        }
    return t;
}

HMap tensor_flip(const HModule& V, const HModule& W) {
    HMap f(tensor_module(V, W), tensor_module(W, V));
    for (int a = 0; a < V.rank(); ++a)
        for (int b = 0; b < W.rank(); ++b) f.set_entry(b * V.rank() + a, a * W.rank() + b, TruncSeries(V.order, 1));
    return f;
}

HMap extend_right(const HMap& f, const HModule& W) { return hmap_tensor(f, HMap::identity(W)); }
HMap extend_left(const HModule& V, const HMap& f) { return hmap_tensor(HMap::identity(V), f); }

Report cartier_verify(const DYModule& V, const DYModule& W, const DYModule& Z, int order) {
    Report r;
    HModule v = V.module(order), w = W.module(order), z = Z.module(order);
    // t13 on V(x)W(x)Z as (flip_{W,V} (x) id)(id (x) t_{V,Z})(flip_{V,W} (x) id)
    HMap t12 = extend_right(inf_braiding(V, W, order), z);
    HMap t23 = extend_left(v, inf_braiding(W, Z, order));
    HMap t13 = hmap_compose(extend_right(tensor_flip(w, v), z),
                            hmap_compose(extend_left(w, inf_braiding(V, Z, order)), extend_right(tensor_flip(v, w), z)));
    HMap left = inf_braiding(dy_tensor(V, W), Z, order);
    HMap right = inf_braiding(V, dy_tensor(W, Z), order);
    r.add("t_{VW,Z} = t13 + t23", left == hmap_add(t13, t23));
    r.add("t_{V,WZ} = t12 + t13", right == hmap_add(t12, t13));
    HMap lhs = hmap_compose(tensor_flip(v, w), inf_braiding(V, W, order));
    HMap rhs = hmap_compose(inf_braiding(W, V, order), tensor_flip(v, w));
    r.add("flip t = t flip", lhs == rhs);
    // t_{V,W} (x) id commutes with t_{V(x)W,Z}
    HMap tz = inf_braiding(dy_tensor(V, W), Z, order);
    r.add("t12 commutes with t13 + t23", hmap_compose(t12, tz) == hmap_compose(tz, t12));
    HMap tx = inf_braiding(V, dy_tensor(W, Z), order);
    r.add("t23 commutes with t12 + t13", hmap_compose(t23, tx) == hmap_compose(tx, t23));
    return r;
}

HMap evaluate_on_operators(const NCSeries& f, const HMap& A, const HMap& B) {
    const int len = std::min(f.max_degree(), A.domain().order - 1);
    return nc_evaluate<HMap>(
        f, {A, B}, HMap::identity(A.domain()), len, [](const HMap& x, const HMap& y) { return hmap_compose(x, y); },
        [](const HMap& x, const HMap& y) { return hmap_add(x, y); },
        [](const HMap& x, const Rational& c) { return hmap_scale(x, c); });
}

static void require_scaled(const LieBialgebra& b) {
    if (!b.hbar_scaled) throw AlgebraError("deformed operators need an h-scaled cobracket");
}

HMap phi_associativity(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z, int order) {
    require_scaled(X.base);
    HMap t12 = extend_right(inf_braiding(X, Y, order), Z.module(order));
    HMap t23 = extend_left(X.module(order), inf_braiding(Y, Z, order));
    return evaluate_on_operators(phi.phi, t12, t23);
}

HMap phi_braiding(const Associator& phi, const DYModule& X, const DYModule& Y, int order) {
    require_scaled(X.base);
    HMap t = inf_braiding(X, Y, order);
    return hmap_compose(tensor_flip(X.module(order), Y.module(order)), endo_exp(hmap_scale(t, phi.lambda)));
}

Report hexagon_verify(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z, int order) {
    Report r;
    HModule x = X.module(order), y = Y.module(order), z = Z.module(order);
    // (id (x) s_{X,Z}) a_{Y,X,Z} (s_{X,Y} (x) id) = a_{Y,Z,X} s_{X,YZ} a_{X,Y,Z}
    HMap lhs = hmap_compose(extend_left(y, phi_braiding(phi, X, Z, order)),
                            hmap_compose(phi_associativity(phi, Y, X, Z, order),
                                         extend_right(phi_braiding(phi, X, Y, order), z)));
    HMap rhs = hmap_compose(phi_associativity(phi, Y, Z, X, order),
                            hmap_compose(phi_braiding(phi, X, dy_tensor(Y, Z), order),
                                         phi_associativity(phi, X, Y, Z, order)));
    r.add("hexagon", lhs == rhs);
    // a_{Z,X,Y} (s_{X,Z} (x) id) a^{-1}_{X,Z,Y} (id (x) s_{Y,Z}) a_{X,Y,Z} = s_{XY,Z}
    HMap lhs2 = hmap_compose(
        phi_associativity(phi, Z, X, Y, order),
        hmap_compose(extend_right(phi_braiding(phi, X, Z, order), y),
                     hmap_compose(neumann_invert(phi_associativity(phi, X, Z, Y, order)),
                                  hmap_compose(extend_left(x, phi_braiding(phi, Y, Z, order)),
                                               phi_associativity(phi, X, Y, Z, order)))));
    r.add("second hexagon", lhs2 == phi_braiding(phi, dy_tensor(X, Y), Z, order));
    return r;
}

Report pentagon_verify(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z,
                       const DYModule& W, int order) {
    Report r;
    HModule x = X.module(order), w = W.module(order);
    // a_{X,Y,ZW} a_{XY,Z,W} = (id (x) a_{Y,Z,W}) a_{X,YZ,W} (a_{X,Y,Z} (x) id)
    HMap lhs = hmap_compose(phi_associativity(phi, X, Y, dy_tensor(Z, W), order),
                            phi_associativity(phi, dy_tensor(X, Y), Z, W, order));
    HMap rhs = hmap_compose(extend_left(x, phi_associativity(phi, Y, Z, W, order)),
                            hmap_compose(phi_associativity(phi, X, dy_tensor(Y, Z), W, order),
                                         extend_right(phi_associativity(phi, X, Y, Z, order), w)));
    r.add("pentagon", lhs == rhs);
    return r;
}

Report operator_roundtrip(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z, int order) {
    Report r;
    HModule x = X.module(order), y = Y.module(order), z = Z.module(order);
    auto square = [&](const DYModule& P, const DYModule& Q) {
        return hmap_compose(phi_braiding(phi, Q, P, order), phi_braiding(phi, P, Q, order));
    };
    HMap logsq = endo_log(square(X, Y));
    r.add("log of squared braiding", logsq == hmap_scale(inf_braiding(X, Y, order), 2 * phi.lambda));

    HMap a = phi_associativity(phi, X, Y, Z, order);
    HMap A = endo_log(extend_right(square(X, Y), z));
    HMap B = endo_log(hmap_compose(neumann_invert(a), hmap_compose(extend_left(x, square(Y, Z)), a)));
    GTElement g0 = gt_curve_zero(phi);
    HMap deformed = hmap_compose(a, evaluate_on_operators(g0.f, A, B));
    r.add("f0-deformed associativity is the identity", deformed == HMap::identity(a.domain()));
    return r;
}

}  // namespace qdq
