#include "qdq/associator.hpp"

namespace qdq {

const std::vector<std::string> kAssociatorAlphabet = {"A", "B"};

namespace {

NCSeries A_(int D) { return NCSeries::letter(kAssociatorAlphabet, D, 0); }
NCSeries B_(int D) { return NCSeries::letter(kAssociatorAlphabet, D, 1); }
NCSeries one_(int D) { return NCSeries::scalar(kAssociatorAlphabet, D, 1); }

DKElement t(int n, int D, int i, int j) { return DKElement::generator(n, D, i, j); }

struct PentagonImages {
    std::vector<std::vector<DKElement>> lhs, rhs;
};

PentagonImages pentagon_images(int D) {
    auto t12 = t(4, D, 1, 2), t13 = t(4, D, 1, 3);
    auto t23 = t(4, D, 2, 3), t24 = t(4, D, 2, 4), t34 = t(4, D, 3, 4);
    PentagonImages p;
    p.lhs = {{t12, t23 + t24}, {t13 + t23, t34}};
    p.rhs = {{t23, t34}, {t12 + t13, t24 + t34}, {t12, t23}};
    return p;
}

std::vector<std::vector<DKElement>> hexagon_slots(int D) {
    auto a = t(3, D, 1, 2), b = t(3, D, 1, 3), c = t(3, D, 2, 3);
    return {{c, a}, {b, c}, {a, b}};
}

template <class Key>
int row_index(std::map<Key, int>& rows, const Key& k, int& counter) {
    auto it = rows.find(k);
    if (it == rows.end()) it = rows.emplace(k, counter++).first;
    return it->second;
}

std::string trimmed(const std::string& s) { return s.size() > 400 ? s.substr(0, 400) + " ..." : s; }

}  // namespace

DKElement pentagon_residual(const NCSeries& phi, int D) {
    NCSeries p = phi.with_max_degree(D);
    auto im = pentagon_images(D);
    DKElement lhs = dk_evaluate(p, im.lhs[0]) * dk_evaluate(p, im.lhs[1]);
    DKElement rhs = dk_evaluate(p, im.rhs[0]) * dk_evaluate(p, im.rhs[1]) * dk_evaluate(p, im.rhs[2]);
    return lhs - rhs;
}

DKElement hexagon_residual(const NCSeries& phi, const Rational& lambda, int D, int which) {
    NCSeries p = phi.with_max_degree(D);
    auto a = t(3, D, 1, 2), b = t(3, D, 1, 3), c = t(3, D, 2, 3);
    auto slots = hexagon_slots(D);
    DKElement pca = dk_evaluate(p, slots[0]), pbc = dk_evaluate(p, slots[1]), pab = dk_evaluate(p, slots[2]);
    if (which == 1) {
        DKElement lhs = dk_exp((a + b + c) * lambda);
        DKElement rhs = dk_exp(a * lambda) * pca * dk_exp(c * lambda) * pbc * dk_exp(b * lambda) * pab;
        return rhs - lhs;
    }
    DKElement lhs = dk_exp((a + b + c) * -lambda);
    DKElement rhs = pca * dk_exp(c * -lambda) * pbc * dk_exp(b * -lambda) * pab * dk_exp(a * -lambda);
    return rhs - lhs;
}

NCSeries duality_residual(const NCSeries& phi) {
    const int D = phi.max_degree();
    NCSeries swapped = substitute(phi, {B_(D), A_(D)});
    return phi * swapped - one_(D);
}

Associator solve_associator(int D, const Rational& lambda) {
    if (D < 1) throw AlgebraError("solve_associator: degree must be positive");
    if (sgn(lambda) == 0) throw AlgebraError("solve_associator: lambda must be nonzero");
    NCSeries L(kAssociatorAlphabet, D);
    for (int d = 2; d <= D; ++d) {
        NCSeries phi = nc_exp(L.with_max_degree(d));
        DKElement rP = pentagon_residual(phi, d).degree_part(d);
        DKElement rH1 = hexagon_residual(phi, lambda, d, 1).degree_part(d);
        DKElement rH2 = hexagon_residual(phi, lambda, d, 2).degree_part(d);
        NCSeries rD = duality_residual(phi).degree_part(d);

        auto basis = lyndon_basis(kAssociatorAlphabet, d, d);
        const int nb = static_cast<int>(basis.size());
        std::map<DKKey, int> rowsP, rowsH1, rowsH2;
        std::map<Word, int> rowsD;
        int counter = 0;
        struct Entry {
            int row, col;
            Rational v;
        };
        std::vector<Entry> entries;
        std::vector<std::pair<int, Rational>> rhs;

        auto im = pentagon_images(d);
        auto hex = hexagon_slots(d);
        for (int k = 0; k < nb; ++k) {
            const NCSeries& l = basis[k].expansion;
            DKElement lp = dk_evaluate(l, im.lhs[0]) + dk_evaluate(l, im.lhs[1]) - dk_evaluate(l, im.rhs[0]) -
                           dk_evaluate(l, im.rhs[1]) - dk_evaluate(l, im.rhs[2]);
            for (const auto& [key, c] : lp.terms()) entries.push_back({row_index(rowsP, key, counter), k, c});
            DKElement lh = dk_evaluate(l, hex[0]) + dk_evaluate(l, hex[1]) + dk_evaluate(l, hex[2]);
            for (const auto& [key, c] : lh.terms()) {
                entries.push_back({row_index(rowsH1, key, counter), k, c});
                entries.push_back({row_index(rowsH2, key, counter), k, c});
            }
            NCSeries ld = l + substitute(l, {B_(d), A_(d)});
            for (const auto& [w, c] : ld.terms()) entries.push_back({row_index(rowsD, w, counter), k, c});
        }
        for (const auto& [key, c] : rP.terms()) rhs.emplace_back(row_index(rowsP, key, counter), -c);
        for (const auto& [key, c] : rH1.terms()) rhs.emplace_back(row_index(rowsH1, key, counter), -c);
        for (const auto& [key, c] : rH2.terms()) rhs.emplace_back(row_index(rowsH2, key, counter), -c);
        for (const auto& [w, c] : rD.terms()) rhs.emplace_back(row_index(rowsD, w, counter), -c);

        RatMatrix M(counter, nb);
        std::vector<Rational> b(counter);
        for (const auto& e : entries) M(e.row, e.col) += e.v;
        for (const auto& [r, v] : rhs) b[r] += v;
        auto sol = solve_linear(M, b);
        if (!sol) throw AlgebraError("solve_associator: inconsistent system at degree " + std::to_string(d));
        for (int k = 0; k < nb; ++k)
            if (sgn((*sol)[k]) != 0) L += basis[k].expansion.with_max_degree(D) * (*sol)[k];
    }
    return {nc_exp(L), lambda};
}

Report verify_associator(const Associator& a, int D) {
    Report r;
    NCSeries phi = a.phi.with_max_degree(D);
    bool normal = phi.constant() == 1 && (D < 1 || phi.degree_part(1).is_zero());
    r.add("normalization", normal, normal ? "" : "constant term or degree-1 part wrong");
    NCSeries dual = duality_residual(phi);
    r.add("duality", dual.is_zero(), dual.is_zero() ? "" : trimmed(dual.str()));
    DKElement pent = pentagon_residual(phi, D);
    r.add("pentagon", pent.is_zero(), pent.is_zero() ? "" : trimmed(pent.str()));
    for (int which : {1, 2}) {
        DKElement hex = hexagon_residual(phi, a.lambda, D, which);
        r.add("hexagon" + std::to_string(which), hex.is_zero(), hex.is_zero() ? "" : trimmed(hex.str()));
    }
    bool gl = is_grouplike(phi);
    r.add("grouplike", gl);
    return r;
}

NCSeries gt_eval(const NCSeries& f, const NCSeries& log_u, const NCSeries& log_v) {
    return substitute(f.with_max_degree(log_u.max_degree()), {log_u, log_v});
}

GTElement gt_identity(int D) { return {Rational(1), one_(D)}; }

GTElement gt_mul(const GTElement& g1, const GTElement& g2) {
    const int D = std::min(g1.f.max_degree(), g2.f.max_degree());
    NCSeries F2 = g2.f.with_max_degree(D);
    NCSeries u = F2 * A_(D) * g2.chi * nc_inverse(F2);
    NCSeries v = B_(D) * g2.chi;
    return {g1.chi * g2.chi, gt_eval(g1.f, u, v) * F2};
}

GTElement gt_mul_alt(const GTElement& g1, const GTElement& g2) {
    const int D = std::min(g1.f.max_degree(), g2.f.max_degree());
    NCSeries F2 = g2.f.with_max_degree(D);
    NCSeries u = A_(D) * g2.chi;
    NCSeries v = nc_inverse(F2) * B_(D) * g2.chi * F2;
    return {g1.chi * g2.chi, F2 * gt_eval(g1.f, u, v)};
}

Associator gt_act(const GTElement& g, const Associator& a) {
    const int D = std::min(g.f.max_degree(), a.phi.max_degree());
    NCSeries phi = a.phi.with_max_degree(D);
    Rational two_l = 2 * a.lambda;
    NCSeries u = phi * A_(D) * two_l * nc_inverse(phi);
    NCSeries v = B_(D) * two_l;
    return {gt_eval(g.f, u, v) * phi, g.chi * a.lambda};
}

Associator gt_act_alt(const GTElement& g, const Associator& a) {
    const int D = std::min(g.f.max_degree(), a.phi.max_degree());
    NCSeries phi = a.phi.with_max_degree(D);
    Rational two_l = 2 * a.lambda;
    NCSeries u = A_(D) * two_l;
    NCSeries v = nc_inverse(phi) * B_(D) * two_l * phi;
    return {phi * gt_eval(g.f, u, v), g.chi * a.lambda};
}

GTElement gt_curve_zero(const Associator& a) {
    if (sgn(a.lambda) == 0) throw AlgebraError("gt_curve_zero: lambda must be nonzero");
    const int D = a.phi.max_degree();
    NCSeries G = inv_diamond(a.phi);
    Rational s = 1 / (2 * a.lambda);
    return {Rational(0), substitute(G, {A_(D) * s, B_(D) * s})};
}

Report gt_verify(const GTElement& g, int D, const Associator& reference) {
    Report r;
    NCSeries f = g.f.with_max_degree(D);
    NCSeries A = A_(D), B = B_(D);

    NCSeries rel1 = f * gt_eval(f, B, A) - one_(D);
    r.add("relation1", rel1.is_zero(), rel1.is_zero() ? "" : trimmed(rel1.str()));

    NCSeries l1 = A, l2 = B;
    NCSeries l3 = nc_log(nc_exp(A) * nc_exp(B)) * Rational(-1);
    Rational m = (g.chi - 1) / 2;
    NCSeries rel2 = gt_eval(f, l3, l1) * nc_exp(l3 * m) * gt_eval(f, l2, l3) * nc_exp(l2 * m) * gt_eval(f, l1, l2) *
                        nc_exp(l1 * m) -
                    one_(D);
    r.add("relation2", rel2.is_zero(), rel2.is_zero() ? "" : trimmed(rel2.str()));

    Associator moved = gt_act(GTElement{g.chi, f}, Associator{reference.phi.with_max_degree(D), reference.lambda});
    DKElement rel3 = pentagon_residual(moved.phi, D);
    r.add("relation3", rel3.is_zero(), rel3.is_zero() ? "" : trimmed(rel3.str()));
    r.add("grouplike", is_grouplike(f));
    return r;
}

}  // namespace qdq
