#include "qdq/quantize.hpp"

#include "qdq/severa.hpp"

namespace qdq {

namespace {

using Layout = DeformedCategory::Layout;

SlotType slot_type(const HModule& carrier, const HMap& action, const HMap& coaction) {
    SlotType t;
    t.carrier = carrier;
    t.rank = carrier.rank();
    t.action = action;
    t.coaction = coaction;
    return t;
}

// The fiber functor over a comonoid M (type 0 of the category, carried by the
// base itself), with F(M (x) X) identified with X through [m (x) x] -> S(m).x.
class Reconstruction {
public:
    Reconstruction(std::shared_ptr<DeformedCategory> cat, int budget) : cat_(std::move(cat)), budget_(budget) {}

    const HopfData& base() const { return cat_->base(); }
    const SlotType& type(int i) const { return cat_->type(i); }

    // S(a).x on the pair (p, p+1); the result sits in slot p+1.
    TVec project(const TVec& v, const Layout& L, int p) const {
        const int n = base().rank();
        const SlotType& X = type(L[p + 1]);
        TVec w = slot_apply(v, base().S, {p}, {n}, {p}, {n});
        return slot_apply(w, X.action, {p, p + 1}, {n, X.rank}, {p + 1}, {X.rank});
    }
    TVec project_pairs(const TVec& v, const Layout& L) const {
        return permute_slots(project(project(v, L, 0), L, 2), {1, 3});
    }

    // 1 (x) 1 (x) x1 (x) x2 for x in M.
    TVec double_coproduct(const SVec& in) const {
        const HopfData& H = base();
        const int n = H.rank();
        TVec v;
        for (const auto& [i, c] : in) add_term(v, key_make({H.unit, H.unit, i}), c);
        return slot_apply(v, H.Delta, {2}, {n}, {2, 3}, {n, n});
    }

    // a^{-1}_{M,M,MM} (id (x) a_{M,M,M}) (id (x) mid (x) id) (id (x) a^{-1}_{M,M,M}) a_{M,M,MM}.
    TVec beta(TVec v, const std::function<TVec(const TVec&, Layout&)>& mid) const {
        Layout L{0, 0, 0, 0};
        v = cat_->assoc(v, L, 0, 1, 2, 4);
        v = cat_->assoc(v, L, 1, 2, 3, 4, true);
        v = mid(v, L);
        v = cat_->assoc(v, L, 1, 2, 3, 4);
        return cat_->assoc(v, L, 0, 1, 2, 4, true);
    }

    HMap coproduct() const {
        const HModule& C = base().carrier;
        const int n = C.rank();
        return build_map(C, tensor_module(C, C), budget_, [&](const SVec& in) {
            TVec v = beta(double_coproduct(in), [&](const TVec& x, Layout& L) { return cat_->braid(x, L, 1, 2, 3); });
            return tvec_to_svec(project_pairs(v, {0, 0, 0, 0}), {n, n});
        });
    }

    // 1/2 (id - flip) of the coproduct with sigma t in the middle.
    HMap cobracket() const {
        const HModule& C = base().carrier;
        const int n = C.rank();
        return build_map(C, tensor_module(C, C), budget_, [&](const SVec& in) {
            TVec v = beta(double_coproduct(in), [&](const TVec& x, Layout& L) {
                return cat_->braid(cat_->t(x, L, 1, 2, 3), L, 1, 2, 3);
            });
            v = project_pairs(v, {0, 0, 0, 0});
            TVec out = scaled(v, frac(1, 2));
            add_scaled(out, permute_slots(v, {1, 0}), frac(-1, 2));
            return tvec_to_svec(out, {n, n});
        });
    }

    HMap antipode() const {
        const HopfData& H = base();
        const int n = H.rank();
        return build_map(H.carrier, H.carrier, budget_, [&](const SVec& in) {
            TVec v;
            for (const auto& [i, c] : in) add_term(v, key_make({H.unit, i}), c);
            Layout L{0, 0};
            v = cat_->braid(v, L, 0, 1, 2);
            const SlotType& M = type(0);
            v = slot_apply(slot_apply(v, H.S, {0}, {n}, {0}, {n}), M.action, {0, 1}, {n, n}, {1}, {n});
            return tvec_to_svec(permute_slots(v, {1}), {n});
        });
    }

    // (eps (x) id) gamma^{-1}_{M,X} on the carrier of X.
    HMap action(int x) const {
        const HopfData& H = base();
        const SlotType& X = type(x);
        const int n = H.rank(), r = X.rank;
        const HModule MX = tensor_module(H.carrier, X.carrier);
        HMap gamma = build_map(MX, MX, budget_, [&](const SVec& in) {
            TVec v;
            for (const auto& [j, c] : in) add_term(v, key_make({H.unit, j / r, 0, j % r}), c);
            v = slot_apply(v, H.Delta, {1}, {n}, {1, 2}, {n, n});
            Layout L{0, 0, 0, x};
            v = cat_->assoc(v, L, 0, 1, 3, 4);
            v = cat_->assoc(v, L, 1, 2, 3, 4);
            v = cat_->assoc(v, L, 0, 1, 2, 4, true);
            return tvec_to_svec(project_pairs(v, L), {n, r});
        });
        // gamma0^{-1}(c (x) x) = c1 (x) c2.x
        HMap gamma0_inv = build_map(MX, MX, budget_, [&](const SVec& in) {
            TVec v = slot_apply(svec_to_tvec(in, {n, r}), H.Delta, {0}, {n}, {0, 2}, {n, n});
            v = permute_slots(v, {0, 2, 1});
            v = slot_apply(v, X.action, {1, 2}, {n, r}, {2}, {r});
            return tvec_to_svec(permute_slots(v, {0, 2}), {n, r});
        });
        HMap inv = hmap_compose(neumann_invert(hmap_compose(gamma0_inv, gamma)), gamma0_inv);
        HMap counit = build_map(MX, X.carrier, budget_, [&](const SVec& in) {
            TVec v = slot_apply(svec_to_tvec(in, {n, r}), H.epsilon, {0}, {n}, {}, {});
            return tvec_to_svec(permute_slots(v, {1}), {r});
        });
        return hmap_compose(counit, inv);
    }

    // F^2(M (x) X, M (x) M) applied along
    // (M (x) M (x) M) (x) X -> M (x) (M (x) (X (x) M)) -> (M (x) X) (x) (M (x) M),
    // with first/second the maps applied to the pairs (M, X) on the way.
    TVec module_path(int x, const SVec& in, bool t_first, bool t_second) const {
        const HopfData& H = base();
        TVec v;
        for (const auto& [j, c] : in) add_term(v, key_make({H.unit, H.unit, H.unit, j}), c);
        Layout L{0, 0, 0, x};
        v = cat_->assoc(v, L, 0, 1, 3, 4);
        v = cat_->assoc(v, L, 1, 2, 3, 4);
        if (t_first) v = cat_->t(v, L, 2, 3, 4);
        v = cat_->braid(v, L, 2, 3, 4, true);
        v = cat_->assoc(v, L, 1, 2, 3, 4, true);
        if (t_second) v = cat_->t(v, L, 1, 2, 3);
        v = cat_->braid(v, L, 1, 2, 3);
        v = cat_->assoc(v, L, 1, 2, 3, 4);
        v = cat_->assoc(v, L, 0, 1, 2, 4, true);
        return project_pairs(v, L);
    }

    HMap module_coaction(int x) const {
        const SlotType& X = type(x);
        const int n = base().rank();
        return build_map(X.carrier, tensor_module(X.carrier, base().carrier), budget_, [&](const SVec& in) {
            return tvec_to_svec(module_path(x, in, false, false), {X.rank, n});
        });
    }

    // 1/2 F^2 [(sigma t on (M, X)) after sigma - sigma after (sigma t on (M, X))].
    HMap module_cobracket(int x) const {
        const SlotType& X = type(x);
        const int n = base().rank();
        return build_map(X.carrier, tensor_module(X.carrier, base().carrier), budget_, [&](const SVec& in) {
            TVec out = scaled(module_path(x, in, false, true), frac(1, 2));
            add_scaled(out, module_path(x, in, true, false), frac(-1, 2));
            return tvec_to_svec(out, {X.rank, n});
        });
    }

private:
    std::shared_ptr<DeformedCategory> cat_;
    int budget_;
};

std::shared_ptr<DeformedCategory> dy_category(const CoPoissonHopfData& C, const Associator& phi) {
    auto base = std::make_shared<const HopfData>(C.hopf);
    auto cat = std::make_shared<DeformedCategory>(CategoryKind::DrinfeldYetter, base, phi.phi, phi.lambda);
    cat->add_type(slot_type(C.hopf.carrier, C.hopf.mu, c_minus_coaction(C)));
    return cat;
}

std::shared_ptr<DeformedCategory> yd_category(std::shared_ptr<const HopfData> H, const Associator& phi) {
    auto cat =
        std::make_shared<DeformedCategory>(CategoryKind::YetterDrinfeldG0, H, gt_curve_zero(phi).f, Rational(0));
    YDModuleData M = adjoint_minus(H);
    cat->add_type(slot_type(M.carrier, M.action, M.coaction));
    return cat;
}

void require_quantizable(const CoPoissonHopfData& C) {
    for (const auto& [i, j, x] : C.delta.triplets())
        if (x[0] != 0) throw AlgebraError("quantization needs an h-divisible cobracket");
}

void require_dequantizable(const HopfData& H) {
    const int n = H.rank();
    HMap S2 = hmap_compose(H.S, H.S);
    for (int j = 0; j < n; ++j)
        for (const auto& [i, x] : S2.column(j))
            if (x[0] != (i == j ? 1 : 0)) throw AlgebraError("dequantization needs S^2 = id mod h");
}

HopfData assemble(const HopfData& shape, const Reconstruction& R, int x) {
    HopfData out = shape;
    out.mu = R.action(x);
    out.Delta = R.coproduct();
    out.S = R.antipode();
    out.S_inv = antipode_inverse(out.S);
    out.set_budget(shape.budget());
    return out;
}

}  // namespace

HMap c_minus_coaction(const CoPoissonHopfData& C) {
    const HopfData& H = C.hopf;
    const int n = H.rank();
    return build_map(H.carrier, tensor_module(H.carrier, H.carrier), H.budget(), [&](const SVec& in) {
        TVec v = slot_apply(svec_to_tvec(in, {n}), H.Delta, {0}, {n}, {0, 1}, {n, n});
        v = slot_apply(v, C.delta, {1}, {n}, {1, 2}, {n, n});
        v = slot_apply(v, H.S_inv, {0}, {n}, {0}, {n});
        v = permute_slots(v, {1, 2, 0});
        v = slot_apply(v, H.mu, {1, 2}, {n, n}, {1}, {n});
        return tvec_to_svec(v, {n, n});
    });
}

DYHopfModule c_minus_module(std::shared_ptr<const CoPoissonHopfData> C) {
    DYHopfModule M;
    M.base = C;
    M.carrier = C->hopf.carrier;
    M.action = C->hopf.mu;
    M.coaction = c_minus_coaction(*C);
    return M;
}

HopfData quantize_minus(const CoPoissonHopfData& C, const Associator& phi) {
    require_quantizable(C);
    Reconstruction R(dy_category(C, phi), C.hopf.budget());
    return assemble(C.hopf, R, 0);
}

QuantizationResult quantize_minus(const PBWAlgebra& C, const Associator& phi) {
    QuantizationResult out;
    const int n = C.copoisson.hopf.rank(), N = C.order;
    out.log.push_back("C_- coaction built on " + std::to_string(n) + " basis elements");
    out.hopf = quantize_minus(C.copoisson, phi);
    out.log.push_back("gamma on M (x) M inverted by a Neumann series of length " + std::to_string(N - 1));
    out.log.push_back("associator words of length < " + std::to_string(N) + " inserted along beta and alpha");
    out.comparison = HMap::identity(C.copoisson.hopf.carrier);
    return out;
}

CoPoissonHopfData dequantize_minus(const HopfData& H, const Associator& phi) {
    require_dequantizable(H);
    auto base = std::make_shared<const HopfData>(H);
    Reconstruction R(yd_category(base, phi), H.budget());
    CoPoissonHopfData out;
    out.hopf = assemble(H, R, 0);
    out.delta = R.cobracket();
    out.delta.set_validity_degree(H.budget());
    out.quantizable = true;
    for (const auto& [i, j, x] : out.delta.triplets())
        if (x[0] != 0) out.quantizable = false;
    return out;
}

HopfData quantize_plus(const PoissonHopfData& P, const Associator& phi) {
    return dualize(quantize_minus(dualize(P), phi));
}

PoissonHopfData dequantize_plus(const HopfData& H, const Associator& phi) {
    return dualize(dequantize_minus(dualize(H), phi));
}

DYHopfModule dy_lift(const DYModule& V, const PBWAlgebra& C) {
    const PBWBasis& B = *C.basis;
    const int N = C.order, n = B.rank();
    auto base = std::make_shared<const CoPoissonHopfData>(C.copoisson);
    DYHopfModule M;
    M.base = base;
    M.carrier = HModule(N, V.basis, std::vector<int>(V.dim, 0));
    const HModule CV = tensor_module(base->hopf.carrier, M.carrier);
    M.action = HMap(CV, M.carrier, C.max_degree);
    for (int m = 0; m < n; ++m) {
        const std::vector<int>& e = B.exponents(m);
        for (int a = 0; a < V.dim; ++a) {
            QVec x{{a, Rational(1)}};
            for (int g = static_cast<int>(e.size()); g-- > 0;)
                for (int k = 0; k < e[g]; ++k) x = V.act(g, x);
            for (const auto& [b, c] : x)
                if (c != 0) M.action.set_entry(b, m * V.dim + a, TruncSeries(N, c));
        }
    }
    M.coaction = HMap(M.carrier, tensor_module(M.carrier, base->hopf.carrier), C.max_degree);
    for (int a = 0; a < V.dim; ++a)
        for (const auto& [bi, c] : V.coaction[a]) {
            int g = B.generator(bi.second);
            if (g < 0 || c == 0) continue;
            TruncSeries s = V.base.hbar_scaled ? TruncSeries::monomial(N, 1, c) : TruncSeries(N, c);
            M.coaction.set_entry(bi.first * n + g, a, M.coaction.entry(bi.first * n + g, a) + s);
        }
    return M;
}

YDModuleData quantize_module(const DYHopfModule& X, const Associator& phi, std::shared_ptr<const HopfData> QC) {
    require_quantizable(*X.base);
    auto cat = dy_category(*X.base, phi);
    int x = cat->add_type(slot_type(X.carrier, X.action, X.coaction));
    Reconstruction R(cat, X.base->hopf.budget());
    YDModuleData out;
    out.base = std::move(QC);
    out.carrier = X.carrier;
    out.action = R.action(x);
    out.coaction = R.module_coaction(x);
    return out;
}

DYHopfModule dequantize_module(const YDModuleData& X, const Associator& phi,
                               std::shared_ptr<const CoPoissonHopfData> DH) {
    require_dequantizable(*X.base);
    auto cat = yd_category(X.base, phi);
    int x = cat->add_type(slot_type(X.carrier, X.action, X.coaction));
    Reconstruction R(cat, X.base->budget());
    DYHopfModule out;
    out.base = std::move(DH);
    out.carrier = X.carrier;
    out.action = R.action(x);
    out.coaction = R.module_cobracket(x);
    return out;
}

}  // namespace qdq
