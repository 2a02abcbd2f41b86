#include "qdq/hopfcore.hpp"

#include <algorithm>
#include <sstream>

namespace qdq {

HModule ground_module(int order) { return HModule(order, {"1"}, {0}); }

int HopfData::budget() const {
    return std::min({mu.validity_degree(), eta.validity_degree(), Delta.validity_degree(),
                     epsilon.validity_degree(), S.validity_degree(), S_inv.validity_degree()});
}

void HopfData::set_budget(int b) {
    for (HMap* m : {&mu, &eta, &Delta, &epsilon, &S, &S_inv}) m->set_validity_degree(b);
}

// ---------------------------------------------------------------------------

TVec tv_basis(const std::vector<int>& idx, const TruncSeries& c) {
    TVec v;
    add_term(v, key_make(idx), c);
    return v;
}

TVec apply_at(const HMap& f, const std::vector<int>& in_ranks, const std::vector<int>& out_ranks, const TVec& v,
              int pos, int nslots) {
    const int nin = static_cast<int>(in_ranks.size()), nout = static_cast<int>(out_ranks.size());
    const int after = nslots - pos - nin;
    if (after < 0 || nslots - nin + nout > kMaxSlots) throw AlgebraError("apply_at: slot layout out of range");
    const int validity = f.validity_degree();
    TVec out;
    for (const auto& [key, c] : v) {
        int col = 0;
        for (int s = 0; s < nin; ++s) col = col * in_ranks[s] + key_get(key, pos + s);
        if (validity != kUnbounded) {
            int w = std::max(f.domain().degree(col), 0) - c.valuation();
            if (w > validity) {
                std::ostringstream os;
                os << "structure map read past its budget " << validity << " (input weight " << w << ")";
                throw BudgetError(os.str());
            }
        }
        std::uint64_t base = 0;
        for (int s = 0; s < pos; ++s) base = key_set(base, s, key_get(key, s));
        for (int s = 0; s < after; ++s) base = key_set(base, pos + nout + s, key_get(key, pos + nin + s));
        for (const auto& [row, e] : f.column(col)) {
            std::uint64_t k = base;
            int r = row;
            for (int s = nout - 1; s >= 0; --s) {
                k = key_set(k, pos + s, r % out_ranks[s]);
                r /= out_ranks[s];
            }
            add_term(out, k, series_mul(e, c));
        }
    }
    return out;
}

TVec permute_slots(const TVec& v, const std::vector<int>& perm) {
    TVec out;
    for (const auto& [key, c] : v) {
        std::uint64_t k = 0;
        for (int s = 0; s < static_cast<int>(perm.size()); ++s) k = key_set(k, s, key_get(key, perm[s]));
        add_term(out, k, c);
    }
    return out;
}

TVec svec_to_tvec(const SVec& v, const std::vector<int>& ranks) {
    TVec out;
    const int n = static_cast<int>(ranks.size());
    for (const auto& [i, c] : v) {
        std::uint64_t k = 0;
        int r = i;
        for (int s = n - 1; s >= 0; --s) {
            k = key_set(k, s, r % ranks[s]);
            r /= ranks[s];
        }
        add_term(out, k, c);
    }
    return out;
}

SVec tvec_to_svec(const TVec& v, const std::vector<int>& ranks) {
    SVec out;
    for (const auto& [key, c] : v) {
        int i = 0;
        for (int s = 0; s < static_cast<int>(ranks.size()); ++s) i = i * ranks[s] + key_get(key, s);
        add_term(out, i, c);
    }
    return out;
}

HMap build_map(const HModule& dom, const HModule& cod, int budget, const std::function<SVec(const SVec&)>& f) {
    HMap r(dom, cod, budget);
    const int N = dom.order;
    for (int j = 0; j < dom.rank(); ++j) {
        int e = budget == kUnbounded ? 0 : std::max(0, std::max(dom.degree(j), 0) - budget);
        if (e >= N) continue;
        SVec in;
        in[j] = TruncSeries::monomial(N, e);
        for (const auto& [i, x] : f(in)) add_term(r.column(j), i, x.unshifted(e));
    }
    return r;
}

bool hmap_agree(const HMap& f, const HMap& g, int budget) {
    if (!f.domain().same_basis(g.domain()) || !f.codomain().same_basis(g.codomain())) return false;
    const int N = f.domain().order;
    for (int j = 0; j < f.domain().rank(); ++j) {
        int p = budget == kUnbounded ? N : N - std::max(0, std::max(f.domain().degree(j), 0) - budget);
        if (p <= 0) continue;
        for (const auto& [i, x] : difference(f.column(j), g.column(j)))
            if (!x.reduced(p).is_zero()) return false;
    }
    return true;
}

int tv_degree(std::uint64_t key, const std::vector<const HModule*>& slots) {
    int d = 0;
    for (int s = 0; s < static_cast<int>(slots.size()); ++s) d += std::max(slots[s]->degree(key_get(key, s)), 0);
    return d;
}

TVec mu_at(const HopfData& H, const TVec& v, int pos, int nslots) {
    int n = H.rank();
    return apply_at(H.mu, {n, n}, {n}, v, pos, nslots);
}
TVec delta_at(const HopfData& H, const TVec& v, int pos, int nslots) {
    int n = H.rank();
    return apply_at(H.Delta, {n}, {n, n}, v, pos, nslots);
}
TVec antipode_at(const HopfData& H, const TVec& v, int pos, int nslots, bool inverse) {
    int n = H.rank();
    return apply_at(inverse ? H.S_inv : H.S, {n}, {n}, v, pos, nslots);
}
TVec counit_at(const HopfData& H, const TVec& v, int pos, int nslots) {
    return apply_at(H.epsilon, {H.rank()}, {}, v, pos, nslots);
}
TVec unit_at(const HopfData& H, const TVec& v, int pos, int nslots) {
    return apply_at(H.eta, {}, {H.rank()}, v, pos, nslots);
}

void for_each_weighted_tuple(const std::vector<const HModule*>& slots, int budget,
                             const std::function<void(const TVec&, const std::string&)>& body) {
    if (slots.empty()) return;
    const int N = slots[0]->order;
    const int k = static_cast<int>(slots.size());
    std::vector<int> idx(k, 0);
    std::function<void(int, int)> rec = [&](int s, int deg) {
        if (s == k) {
            int e = budget == kUnbounded ? 0 : std::max(0, deg - budget);
            if (e >= N) return;
            std::string label;
            for (int t = 0; t < k; ++t) label += (t ? "|" : "") + slots[t]->labels[idx[t]];
            body(tv_basis(idx, TruncSeries::monomial(N, e)), label);
            return;
        }
        for (int i = 0; i < slots[s]->rank(); ++i) {
            int d = deg + std::max(slots[s]->degree(i), 0);
            if (budget != kUnbounded && d - budget >= N) continue;
            idx[s] = i;
            rec(s + 1, d);
        }
    };
    rec(0, 0);
}

// ---------------------------------------------------------------------------

namespace {

struct Tally {
    std::size_t bad = 0, total = 0;
    std::string first;
    void note(bool ok, const std::string& where) {
        ++total;
        if (ok) return;
        if (bad++ == 0) first = where;
    }
    void report(Report& r, const std::string& name) const {
        std::string detail;
        if (bad) {
            std::ostringstream os;
            os << bad << "/" << total << " nonzero residuals, first at " << first;
            detail = os.str();
        }
        r.add(name, bad == 0, detail);
    }
};

TVec plus(TVec a, const TVec& b) {
    for (const auto& [k, c] : b) add_term(a, k, c);
    return a;
}
TVec minus(TVec a, const TVec& b) {
    for (const auto& [k, c] : b) add_term(a, k, -c);
    return a;
}

TVec apply_delta(const HMap& d, int n, const TVec& v, int pos, int nslots) {
    return apply_at(d, {n}, {n, n}, v, pos, nslots);
}

}  // namespace

Report hopf_verify(const HopfData& H, int budget) {
    Report r;
    const HModule* c = &H.carrier;
    Tally assoc, unit, coassoc, counit, bialg, epsmul, unitco, anti, sinv;
    for_each_weighted_tuple({c, c, c}, budget, [&](const TVec& v, const std::string& l) {
        assoc.note(mu_at(H, mu_at(H, v, 0, 3), 0, 2) == mu_at(H, mu_at(H, v, 1, 3), 0, 2), l);
    });
    for_each_weighted_tuple({c}, budget, [&](const TVec& v, const std::string& l) {
        unit.note(mu_at(H, unit_at(H, v, 0, 1), 0, 2) == v && mu_at(H, unit_at(H, v, 1, 1), 0, 2) == v, l);
        TVec d = delta_at(H, v, 0, 1);
        coassoc.note(delta_at(H, d, 0, 2) == delta_at(H, d, 1, 2), l);
        counit.note(counit_at(H, d, 0, 2) == v && counit_at(H, d, 1, 2) == v, l);
        TVec e1 = unit_at(H, counit_at(H, v, 0, 1), 0, 0);
        anti.note(mu_at(H, antipode_at(H, d, 0, 2), 0, 2) == e1 && mu_at(H, antipode_at(H, d, 1, 2), 0, 2) == e1, l);
        sinv.note(antipode_at(H, antipode_at(H, v, 0, 1), 0, 1, true) == v &&
                      antipode_at(H, antipode_at(H, v, 0, 1, true), 0, 1) == v,
                  l);
    });
    for_each_weighted_tuple({c, c}, budget, [&](const TVec& v, const std::string& l) {
        TVec lhs = delta_at(H, mu_at(H, v, 0, 2), 0, 1);
        TVec dd = delta_at(H, delta_at(H, v, 1, 2), 0, 3);
        TVec rhs = mu_at(H, mu_at(H, permute_slots(dd, {0, 2, 1, 3}), 0, 4), 1, 3);
        bialg.note(lhs == rhs, l);
        epsmul.note(counit_at(H, mu_at(H, v, 0, 2), 0, 1) == counit_at(H, counit_at(H, v, 1, 2), 0, 1), l);
    });
    {
        TVec one = unit_at(H, tv_basis({}, TruncSeries(H.order(), 1)), 0, 0);
        unitco.note(delta_at(H, one, 0, 1) == unit_at(H, one, 1, 1), "1");
        unitco.note(counit_at(H, one, 0, 1) == tv_basis({}, TruncSeries(H.order(), 1)), "1");
    }
    assoc.report(r, "associativity");
    unit.report(r, "unit");
    coassoc.report(r, "coassociativity");
    counit.report(r, "counit");
    bialg.report(r, "bialgebra compatibility");
    epsmul.report(r, "counit multiplicative");
    unitco.report(r, "unit comultiplicative");
    anti.report(r, "antipode");
    sinv.report(r, "inverse antipode");
    return r;
}

Report copoisson_verify(const CoPoissonHopfData& C, int budget) {
    Report r;
    const HopfData& H = C.hopf;
    const int n = H.rank();
    const HModule* c = &H.carrier;
    Tally cocom, anti, cojac, coleib, leib, unit, counit;
    for_each_weighted_tuple({c}, budget, [&](const TVec& v, const std::string& l) {
        TVec d = delta_at(H, v, 0, 1);
        cocom.note(d == permute_slots(d, {1, 0}), l);
        TVec dl = apply_delta(C.delta, n, v, 0, 1);
        anti.note(plus(dl, permute_slots(dl, {1, 0})).empty(), l);
        TVec dd = apply_delta(C.delta, n, dl, 1, 2);
        cojac.note(plus(plus(dd, permute_slots(dd, {1, 2, 0})), permute_slots(dd, {2, 0, 1})).empty(), l);
        // (Delta (x) id) delta = (id (x) delta) Delta + (id (x) flip)(delta (x) id) Delta
        TVec lhs = delta_at(H, dl, 0, 2);
        TVec r1 = apply_delta(C.delta, n, d, 1, 2);
        TVec r2 = permute_slots(apply_delta(C.delta, n, d, 0, 2), {0, 2, 1});
        coleib.note(lhs == plus(r1, r2), l);
        counit.note(counit_at(H, dl, 0, 2).empty(), l);
    });
    for_each_weighted_tuple({c, c}, budget, [&](const TVec& v, const std::string& l) {
        TVec lhs = apply_delta(C.delta, n, mu_at(H, v, 0, 2), 0, 1);
        TVec a = apply_delta(C.delta, n, delta_at(H, v, 1, 2), 0, 3);
        TVec b = delta_at(H, apply_delta(C.delta, n, v, 1, 2), 0, 3);
        auto fold = [&](const TVec& t) { return mu_at(H, mu_at(H, permute_slots(t, {0, 2, 1, 3}), 0, 4), 1, 3); };
        leib.note(lhs == plus(fold(a), fold(b)), l);
    });
    TVec one = unit_at(H, tv_basis({}, TruncSeries(H.order(), 1)), 0, 0);
    unit.note(apply_delta(C.delta, n, one, 0, 1).empty(), "1");
    cocom.report(r, "cocommutative");
    anti.report(r, "cobracket antisymmetry");
    cojac.report(r, "coJacobi");
    coleib.report(r, "coLeibniz");
    leib.report(r, "cobracket derivation");
    unit.report(r, "cobracket of unit");
    counit.report(r, "counit of cobracket");
    return r;
}

Report poisson_verify(const PoissonHopfData& P, int budget) {
    Report r;
    const HopfData& H = P.hopf;
    const int n = H.rank();
    const HModule* c = &H.carrier;
    auto br = [&](const TVec& v, int pos, int ns) { return apply_at(P.bracket, {n, n}, {n}, v, pos, ns); };
    Tally com, anti, jac, leib, colei, eps, unit;
    for_each_weighted_tuple({c, c}, budget, [&](const TVec& v, const std::string& l) {
        com.note(mu_at(H, v, 0, 2) == mu_at(H, permute_slots(v, {1, 0}), 0, 2), l);
        anti.note(plus(br(v, 0, 2), br(permute_slots(v, {1, 0}), 0, 2)).empty(), l);
        TVec dd = delta_at(H, delta_at(H, v, 1, 2), 0, 3);
        TVec sw = permute_slots(dd, {0, 2, 1, 3});
        TVec lhs = delta_at(H, br(v, 0, 2), 0, 1);
        TVec r1 = mu_at(H, br(sw, 0, 4), 1, 3);
        TVec r2 = br(mu_at(H, sw, 0, 4), 1, 3);
        colei.note(lhs == plus(r1, r2), l);
        eps.note(counit_at(H, br(v, 0, 2), 0, 1).empty(), l);
    });
    for_each_weighted_tuple({c, c, c}, budget, [&](const TVec& v, const std::string& l) {
        TVec alt = plus(plus(v, permute_slots(v, {1, 2, 0})), permute_slots(v, {2, 0, 1}));
        jac.note(br(br(alt, 0, 3), 0, 2).empty(), l);
        // {ab, c} = a{b, c} + {a, c} b
        TVec lhs = br(mu_at(H, v, 0, 3), 0, 2);
        TVec r1 = mu_at(H, br(v, 1, 3), 0, 2);
        TVec r2 = mu_at(H, br(permute_slots(v, {0, 2, 1}), 0, 3), 0, 2);
        leib.note(lhs == plus(r1, r2), l);
    });
    for_each_weighted_tuple({c}, budget, [&](const TVec& v, const std::string& l) {
        unit.note(br(unit_at(H, v, 0, 1), 0, 2).empty(), l);
    });
    com.report(r, "commutative");
    anti.report(r, "bracket antisymmetry");
    jac.report(r, "Jacobi");
    leib.report(r, "Leibniz");
    colei.report(r, "bracket coderivation");
    eps.report(r, "counit of bracket");
    unit.report(r, "bracket with unit");
    return r;
}

HMap antipode_inverse(const HMap& S) { return hmap_compose(S, neumann_invert(hmap_compose(S, S))); }

// ---------------------------------------------------------------------------

namespace {

int max_degree(const HModule& m) {
    int d = 0;
    for (int i = 0; i < m.rank(); ++i) d = std::max(d, m.degree(i));
    return d;
}

// Coefficient of h^power of every entry, as a constant over the new order.
HMap coefficient_map(const HMap& f, const HModule& dom, const HModule& cod, int power, int validity) {
    HMap r(dom, cod, validity);
    for (int j = 0; j < f.domain().rank(); ++j)
        for (const auto& [i, x] : f.column(j))
            if (power < x.order() && x[power] != 0) r.set_entry(i, j, TruncSeries(dom.order, x[power]));
    return r;
}

struct ClassicalFrame {
    HopfData H;
    HModule C, CC;
    int budget;
};

ClassicalFrame classical_frame(const HopfData& src) {
    ClassicalFrame f;
    f.C = HModule(2, src.carrier.labels, src.carrier.degrees);
    f.CC = tensor_module(f.C, f.C);
    f.budget = max_degree(f.C) - 1;
    HModule k = ground_module(2);
    HopfData& H = f.H;
    H.carrier = f.C;
    H.unit = src.unit;
    H.aug_generators = src.aug_generators;
    H.mu = coefficient_map(src.mu, f.CC, f.C, 0, f.budget);
    H.eta = coefficient_map(src.eta, k, f.C, 0, f.budget);
    H.Delta = coefficient_map(src.Delta, f.C, f.CC, 0, f.budget);
    H.epsilon = coefficient_map(src.epsilon, f.C, k, 0, f.budget);
    H.S = coefficient_map(src.S, f.C, f.C, 0, f.budget);
    H.S_inv = coefficient_map(src.S_inv, f.C, f.C, 0, f.budget);
    return f;
}

HMap scaled_by_x(const HMap& f, const Rational& s) {
    HMap r(f.domain(), f.codomain(), f.validity_degree());
    for (int j = 0; j < f.domain().rank(); ++j)
        for (const auto& [i, x] : f.column(j)) add_term(r.column(j), i, x.shifted(1) * s);
    return r;
}

}  // namespace

HopfData first_order_hopf(const CoPoissonHopfData& C, bool antipode_correction) {
    ClassicalFrame f = classical_frame(C.hopf);
    HMap d = coefficient_map(C.delta, f.C, f.CC, C.quantizable ? 1 : 0, f.budget);
    HopfData H = f.H;
    const int n = H.rank();
    HMap xd = scaled_by_x(d, 1);
    H.Delta = hmap_add(f.H.Delta, hmap_scale(xd, Rational(1, 2)));
    if (antipode_correction) {
        // x mu^(2) (S (x) id (x) S)(id (x) delta) Delta
        HMap corr = build_map(f.C, f.C, f.budget, [&](const SVec& in) {
            TVec v = svec_to_tvec(in, {n});
            TVec t = apply_delta(xd, n, delta_at(f.H, v, 0, 1), 1, 2);
            t = antipode_at(f.H, antipode_at(f.H, t, 0, 3), 2, 3);
            return tvec_to_svec(mu_at(f.H, mu_at(f.H, t, 0, 3), 0, 2), {n});
        });
        H.S = hmap_add(f.H.S, hmap_scale(corr, Rational(-1, 2)));
    }
    H.S_inv = antipode_inverse(H.S);
    H.set_budget(f.budget);
    return H;
}

HopfData first_order_hopf(const PoissonHopfData& P, bool antipode_correction) {
    ClassicalFrame f = classical_frame(P.hopf);
    HMap b = coefficient_map(P.bracket, f.CC, f.C, P.coquantizable ? 1 : 0, f.budget);
    HopfData H = f.H;
    const int n = H.rank();
    HMap xb = scaled_by_x(b, 1);
    H.mu = hmap_add(f.H.mu, hmap_scale(xb, Rational(1, 2)));
    if (antipode_correction) {
        // x mu ({,} (x) id)(S (x) id (x) S) Delta^(2)
        HMap corr = build_map(f.C, f.C, f.budget, [&](const SVec& in) {
            TVec v = svec_to_tvec(in, {n});
            TVec t = delta_at(f.H, delta_at(f.H, v, 0, 1), 0, 2);
            t = antipode_at(f.H, antipode_at(f.H, t, 0, 3), 2, 3);
            t = apply_at(xb, {n, n}, {n}, t, 0, 3);
            return tvec_to_svec(mu_at(f.H, t, 0, 2), {n});
        });
        H.S = hmap_add(f.H.S, hmap_scale(corr, Rational(-1, 2)));
    }
    H.S_inv = antipode_inverse(H.S);
    H.set_budget(f.budget);
    return H;
}

Report first_order_model(const CoPoissonHopfData& C, bool antipode_correction) {
    HopfData H = first_order_hopf(C, antipode_correction);
    return hopf_verify(H, H.budget());
}

Report first_order_model(const PoissonHopfData& P, bool antipode_correction) {
    HopfData H = first_order_hopf(P, antipode_correction);
    return hopf_verify(H, H.budget());
}

// ---------------------------------------------------------------------------

namespace {

int yd_budget(const YDModuleData& V) {
    return std::min({V.action.validity_degree(), V.coaction.validity_degree(), V.base->budget()});
}

TVec act_at(const YDModuleData& V, const TVec& v, int pos, int nslots) {
    return apply_at(V.action, {V.base->rank(), V.carrier.rank()}, {V.carrier.rank()}, v, pos, nslots);
}
TVec coact_at(const YDModuleData& V, const TVec& v, int pos, int nslots) {
    return apply_at(V.coaction, {V.carrier.rank()}, {V.carrier.rank(), V.base->rank()}, v, pos, nslots);
}

void require_same_base(const YDModuleData& V, const YDModuleData& W) {
    if (V.base != W.base && !(V.base->carrier.same_basis(W.base->carrier) && V.base->mu == W.base->mu &&
                              V.base->Delta == W.base->Delta))
        throw AlgebraError("Yetter-Drinfeld modules over different Hopf data");
}

}  // namespace

Report yd_validate(const YDModuleData& V, int budget) {
    Report r;
    const HopfData& H = *V.base;
    const HModule *h = &H.carrier, *m = &V.carrier;
    Tally mod, unit, comod, counit, yd, yd_s;
    for_each_weighted_tuple({h, h, m}, budget, [&](const TVec& v, const std::string& l) {
        mod.note(act_at(V, mu_at(H, v, 0, 3), 0, 2) == act_at(V, act_at(V, v, 1, 3), 0, 2), l);
    });
    for_each_weighted_tuple({m}, budget, [&](const TVec& v, const std::string& l) {
        unit.note(act_at(V, unit_at(H, v, 0, 1), 0, 2) == v, l);
        TVec c = coact_at(V, v, 0, 1);
        comod.note(coact_at(V, c, 0, 2) == delta_at(H, c, 1, 2), l);
        counit.note(counit_at(H, c, 1, 2) == v, l);
    });
    for_each_weighted_tuple({h, m}, budget, [&](const TVec& v, const std::string& l) {
        // h1.v0 (x) h2 v1 = (h2.v)0 (x) (h2.v)1 h1
        TVec t = coact_at(V, delta_at(H, v, 0, 2), 2, 3);
        TVec lhs = mu_at(H, act_at(V, permute_slots(t, {0, 2, 1, 3}), 0, 4), 1, 3);
        TVec s = permute_slots(act_at(V, delta_at(H, v, 0, 2), 1, 3), {1, 0});
        TVec rhs = mu_at(H, coact_at(V, s, 0, 2), 1, 3);
        yd.note(lhs == rhs, l);
        // Delta_V(h.v) = h2.v0 (x) h3 v1 S^{-1}(h1)
        TVec a = coact_at(V, act_at(V, v, 0, 2), 0, 1);
        TVec b = delta_at(H, delta_at(H, v, 0, 2), 0, 3);
        b = antipode_at(H, coact_at(V, b, 3, 4), 0, 5, true);
        b = permute_slots(b, {1, 3, 2, 4, 0});
        b = mu_at(H, mu_at(H, act_at(V, b, 0, 5), 1, 4), 1, 3);
        yd_s.note(a == b, l);
    });
    mod.report(r, "module");
    unit.report(r, "module unit");
    comod.report(r, "comodule");
    counit.report(r, "comodule counit");
    yd.report(r, "Yetter-Drinfeld compatibility");
    yd_s.report(r, "antipode form of compatibility");
    return r;
}

namespace {

YDModuleData yd_tensor(const YDModuleData& V, const YDModuleData& W, bool over) {
    require_same_base(V, W);
    const HopfData& H = *V.base;
    const int n = H.rank(), a = V.carrier.rank(), b = W.carrier.rank();
    YDModuleData T;
    T.base = V.base;
    T.carrier = tensor_module(V.carrier, W.carrier);
    int budget = std::min(yd_budget(V), yd_budget(W));
    HModule hT = tensor_module(H.carrier, T.carrier), Th = tensor_module(T.carrier, H.carrier);
    T.action = build_map(hT, T.carrier, budget, [&](const SVec& in) {
        TVec t = delta_at(H, svec_to_tvec(in, {n, a, b}), 0, 3);
        t = permute_slots(t, over ? std::vector<int>{1, 2, 0, 3} : std::vector<int>{0, 2, 1, 3});
        t = act_at(W, act_at(V, t, 0, 4), 1, 3);
        return tvec_to_svec(t, {a, b});
    });
    T.coaction = build_map(T.carrier, Th, budget, [&](const SVec& in) {
        TVec t = coact_at(W, coact_at(V, svec_to_tvec(in, {a, b}), 0, 2), 2, 3);
        // v0 v1 w0 w1 -> v0 w0 (w1 v1 | v1 w1)
        t = permute_slots(t, over ? std::vector<int>{0, 2, 1, 3} : std::vector<int>{0, 2, 3, 1});
        return tvec_to_svec(mu_at(H, t, 2, 4), {a, b, n});
    });
    return T;
}

}  // namespace

YDModuleData yd_tensor_under(const YDModuleData& V, const YDModuleData& W) { return yd_tensor(V, W, false); }
YDModuleData yd_tensor_over(const YDModuleData& V, const YDModuleData& W) { return yd_tensor(V, W, true); }

HMap yd_braiding_under(const YDModuleData& V, const YDModuleData& W) {
    require_same_base(V, W);
    const HopfData& H = *V.base;
    const int a = V.carrier.rank(), b = W.carrier.rank();
    return build_map(tensor_module(V.carrier, W.carrier), tensor_module(W.carrier, V.carrier),
                     std::min(yd_budget(V), yd_budget(W)), [&](const SVec& in) {
                         TVec t = coact_at(V, svec_to_tvec(in, {a, b}), 0, 2);
                         t = act_at(W, antipode_at(H, t, 1, 3), 1, 3);
                         return tvec_to_svec(permute_slots(t, {1, 0}), {b, a});
                     });
}

HMap yd_braiding_under_inverse(const YDModuleData& V, const YDModuleData& W) {
    require_same_base(V, W);
    const int a = V.carrier.rank(), b = W.carrier.rank();
    return build_map(tensor_module(W.carrier, V.carrier), tensor_module(V.carrier, W.carrier),
                     std::min(yd_budget(V), yd_budget(W)), [&](const SVec& in) {
                         TVec t = coact_at(V, permute_slots(svec_to_tvec(in, {b, a}), {1, 0}), 0, 2);
                         return tvec_to_svec(act_at(W, t, 1, 3), {a, b});
                     });
}

HMap yd_braiding_over(const YDModuleData& V, const YDModuleData& W) {
    require_same_base(V, W);
    const HopfData& H = *V.base;
    const int a = V.carrier.rank(), b = W.carrier.rank();
    return build_map(tensor_module(V.carrier, W.carrier), tensor_module(W.carrier, V.carrier),
                     std::min(yd_budget(V), yd_budget(W)), [&](const SVec& in) {
                         TVec t = coact_at(W, permute_slots(svec_to_tvec(in, {a, b}), {1, 0}), 0, 2);
                         t = act_at(V, antipode_at(H, t, 1, 3), 1, 3);
                         return tvec_to_svec(t, {b, a});
                     });
}

HMap yd_braiding_over_inverse(const YDModuleData& V, const YDModuleData& W) {
    require_same_base(V, W);
    const int a = V.carrier.rank(), b = W.carrier.rank();
    return build_map(tensor_module(W.carrier, V.carrier), tensor_module(V.carrier, W.carrier),
                     std::min(yd_budget(V), yd_budget(W)), [&](const SVec& in) {
                         TVec t = act_at(V, coact_at(W, svec_to_tvec(in, {b, a}), 0, 2), 1, 3);
                         return tvec_to_svec(permute_slots(t, {1, 0}), {a, b});
                     });
}

YDModuleData yd_trivial(std::shared_ptr<const HopfData> H, const HModule& V) {
    YDModuleData M;
    M.base = H;
    M.carrier = V;
    const int n = H->rank(), m = V.rank();
    const int budget = H->budget();
    M.action = build_map(tensor_module(H->carrier, V), V, budget, [&](const SVec& in) {
        return tvec_to_svec(counit_at(*H, svec_to_tvec(in, {n, m}), 0, 2), {m});
    });
    M.coaction = build_map(V, tensor_module(V, H->carrier), budget, [&](const SVec& in) {
        return tvec_to_svec(unit_at(*H, svec_to_tvec(in, {m}), 1, 1), {m, n});
    });
    return M;
}

YDModuleData adjoint_minus(std::shared_ptr<const HopfData> Hp) {
    const HopfData& H = *Hp;
    const int n = H.rank();
    YDModuleData M;
    M.base = Hp;
    M.carrier = H.carrier;
    M.action = H.mu;
    M.coaction = build_map(H.carrier, tensor_module(H.carrier, H.carrier), H.budget(), [&](const SVec& in) {
        TVec t = delta_at(H, delta_at(H, svec_to_tvec(in, {n}), 0, 1), 0, 2);
        t = permute_slots(antipode_at(H, t, 0, 3, true), {1, 2, 0});
        return tvec_to_svec(mu_at(H, t, 1, 3), {n, n});
    });
    return M;
}

YDModuleData coadjoint_plus(std::shared_ptr<const HopfData> Hp) {
    const HopfData& H = *Hp;
    const int n = H.rank();
    YDModuleData M;
    M.base = Hp;
    M.carrier = H.carrier;
    M.coaction = H.Delta;
    M.action = build_map(tensor_module(H.carrier, H.carrier), H.carrier, H.budget(), [&](const SVec& in) {
        TVec t = delta_at(H, svec_to_tvec(in, {n, n}), 0, 2);
        t = permute_slots(antipode_at(H, t, 0, 3, true), {1, 2, 0});
        return tvec_to_svec(mu_at(H, mu_at(H, t, 0, 3), 0, 2), {n});
    });
    return M;
}

QuotientResult fiber_minus(const YDModuleData& V) {
    const HopfData& H = *V.base;
    const int m = V.carrier.rank(), N = H.order(), budget = yd_budget(V);
    std::vector<SVec> gens;
    for (int g : H.aug_generators) {
        TruncSeries eg = H.epsilon.entry(0, g);
        for (int a = 0; a < m; ++a) {
            int d = std::max(H.carrier.degree(g), 0) + std::max(V.carrier.degree(a), 0);
            int e = budget == kUnbounded ? 0 : std::max(0, d - budget);
            if (e >= N) continue;
            TruncSeries he = TruncSeries::monomial(N, e);
            SVec v = tvec_to_svec(act_at(V, tv_basis({g, a}, he), 0, 2), {m});
            add_term(v, a, -series_mul(eg, he));
            gens.push_back(std::move(v));
        }
    }
    return submodule_quotient(V.carrier, gens);
}

HMap fiber_plus(const YDModuleData& V) {
    const HopfData& H = *V.base;
    const int n = H.rank(), m = V.carrier.rank();
    HMap f = hmap_add(V.coaction, hmap_neg(build_map(V.carrier, tensor_module(V.carrier, H.carrier), kUnbounded,
                                                     [&](const SVec& in) {
                                                         return tvec_to_svec(unit_at(H, svec_to_tvec(in, {m}), 1, 1),
                                                                             {m, n});
                                                     })));
    f.set_validity_degree(kUnbounded);
    std::vector<SVec> ker = hmap_kernel(f);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < ker.size(); ++i) labels.push_back("k" + std::to_string(i));
    HMap inc(HModule(V.carrier.order, labels), V.carrier);
    for (std::size_t i = 0; i < ker.size(); ++i) inc.column(static_cast<int>(i)) = ker[i];
    return inc;
}

HMap fiber_minus_iso(const YDModuleData& X) {
    const HopfData& H = *X.base;
    const int n = H.rank(), m = X.carrier.rank();
    return build_map(tensor_module(H.carrier, X.carrier), X.carrier, yd_budget(X), [&](const SVec& in) {
        TVec t = antipode_at(H, svec_to_tvec(in, {n, m}), 0, 2);
        return tvec_to_svec(act_at(X, t, 0, 2), {m});
    });
}

HMap fiber_minus_iso_inverse(const YDModuleData& X) {
    const HopfData& H = *X.base;
    const int n = H.rank(), m = X.carrier.rank();
    return build_map(X.carrier, tensor_module(H.carrier, X.carrier), yd_budget(X), [&](const SVec& in) {
        return tvec_to_svec(unit_at(H, svec_to_tvec(in, {m}), 0, 1), {n, m});
    });
}

HMap fiber_plus_iso(const YDModuleData& X) {
    const HopfData& H = *X.base;
    const int n = H.rank(), m = X.carrier.rank();
    return build_map(tensor_module(X.carrier, H.carrier), X.carrier, yd_budget(X), [&](const SVec& in) {
        return tvec_to_svec(counit_at(H, svec_to_tvec(in, {m, n}), 1, 2), {m});
    });
}

HMap fiber_plus_iso_inverse(const YDModuleData& X) {
    const HopfData& H = *X.base;
    const int n = H.rank(), m = X.carrier.rank();
    return build_map(X.carrier, tensor_module(X.carrier, H.carrier), yd_budget(X), [&](const SVec& in) {
        TVec t = antipode_at(H, coact_at(X, svec_to_tvec(in, {m}), 0, 1), 1, 2);
        return tvec_to_svec(t, {m, n});
    });
}

// ---------------------------------------------------------------------------

namespace {

std::string dual_label(const std::string& s) {
    if (!s.empty() && s.back() == '*') return s.substr(0, s.size() - 1);
    return s + "*";
}

HModule dual_module(const HModule& m) {
    std::vector<std::string> labels;
    for (const auto& l : m.labels) labels.push_back(dual_label(l));
    return HModule(m.order, labels, m.degrees);
}

HMap transpose(const HMap& f, const HModule& dom, const HModule& cod) {
    HMap r(dom, cod, f.validity_degree());
    for (int j = 0; j < f.domain().rank(); ++j)
        for (const auto& [i, x] : f.column(j)) r.set_entry(j, i, x);
    return r;
}

}  // namespace

HopfData dualize(const HopfData& H) {
    HopfData D;
    D.carrier = dual_module(H.carrier);
    HModule DD = tensor_module(D.carrier, D.carrier), k = ground_module(H.order());
    D.unit = H.unit;
    for (int i = 0; i < D.carrier.rank(); ++i)
        if (i != D.unit) D.aug_generators.push_back(i);
    D.mu = transpose(H.Delta, DD, D.carrier);
    D.Delta = transpose(H.mu, D.carrier, DD);
    D.eta = transpose(H.epsilon, k, D.carrier);
    D.epsilon = transpose(H.eta, D.carrier, k);
    D.S = transpose(H.S, D.carrier, D.carrier);
    D.S_inv = transpose(H.S_inv, D.carrier, D.carrier);
    return D;
}

PoissonHopfData dualize(const CoPoissonHopfData& C) {
    PoissonHopfData P;
    P.hopf = dualize(C.hopf);
    P.bracket = transpose(C.delta, tensor_module(P.hopf.carrier, P.hopf.carrier), P.hopf.carrier);
    P.coquantizable = C.quantizable;
    return P;
}

CoPoissonHopfData dualize(const PoissonHopfData& P) {
    CoPoissonHopfData C;
    C.hopf = dualize(P.hopf);
    C.delta = transpose(P.bracket, C.hopf.carrier, tensor_module(C.hopf.carrier, C.hopf.carrier));
    C.quantizable = P.coquantizable;
    return C;
}

// ---------------------------------------------------------------------------

Report dy_hopf_validate(const DYHopfModule& V, int budget) {
    Report r;
    const HopfData& H = V.base->hopf;
    const HMap& dl = V.base->delta;
    const int n = H.rank(), m = V.carrier.rank();
    const HModule *h = &H.carrier, *c = &V.carrier;
    auto act = [&](const TVec& t, int pos, int ns) { return apply_at(V.action, {n, m}, {m}, t, pos, ns); };
    auto coact = [&](const TVec& t, int pos, int ns) { return apply_at(V.coaction, {m}, {m, n}, t, pos, ns); };
    Tally mod, unit, dy3, dy4, compat;
    for_each_weighted_tuple({h, h, c}, budget, [&](const TVec& v, const std::string& l) {
        mod.note(act(mu_at(H, v, 0, 3), 0, 2) == act(act(v, 1, 3), 0, 2), l);
    });
    for_each_weighted_tuple({c}, budget, [&](const TVec& v, const std::string& l) {
        unit.note(act(unit_at(H, v, 0, 1), 0, 2) == v, l);
        TVec d = coact(v, 0, 1);
        // (id (x) delta) delta_V = (delta_V (x) id) delta_V - s23 (delta_V (x) id) delta_V
        TVec dd = coact(d, 0, 2);
        dy3.note(apply_delta(dl, n, d, 1, 2) == minus(dd, permute_slots(dd, {0, 2, 1})), l);
        TVec lhs = delta_at(H, d, 1, 2);
        TVec rhs = plus(unit_at(H, d, 1, 2), unit_at(H, d, 2, 2));
        dy4.note(lhs == rhs, l);
    });
    for_each_weighted_tuple({h, c}, budget, [&](const TVec& v, const std::string& l) {
        // delta_V(h2.v)(1 (x) h1) = h'.v (x) h'' + h1.v0 (x) h2 v1
        TVec t = coact(act(delta_at(H, v, 0, 2), 1, 3), 1, 3);  // h1 (h2v)0 (h2v)1
        TVec lhs = mu_at(H, permute_slots(t, {1, 2, 0}), 1, 3);
        TVec a = permute_slots(apply_delta(dl, n, v, 0, 2), {0, 2, 1});  // h' v h''
        a = act(a, 0, 3);
        TVec b = coact(delta_at(H, v, 0, 2), 2, 3);  // h1 h2 v0 v1
        b = mu_at(H, act(permute_slots(b, {0, 2, 1, 3}), 0, 4), 1, 3);
        compat.note(lhs == plus(a, b), l);
    });
    mod.report(r, "module");
    unit.report(r, "module unit");
    dy3.report(r, "coaction coJacobi");
    dy4.report(r, "coaction primitive");
    compat.report(r, "compatibility");
    return r;
}

}  // namespace qdq
