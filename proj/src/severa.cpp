#include "qdq/severa.hpp"


namespace qdq {

namespace {

DeformedCategory::Layout swapped(const DeformedCategory::Layout& L, int a, int b, int c) {
    DeformedCategory::Layout out(L.begin(), L.begin() + a);
    out.insert(out.end(), L.begin() + b, L.begin() + c);
    out.insert(out.end(), L.begin() + a, L.begin() + b);
    out.insert(out.end(), L.begin() + c, L.end());
    return out;
}

std::vector<int> swap_perm(int n, int a, int b, int c) {
    std::vector<int> perm;
    for (int s = 0; s < a; ++s) perm.push_back(s);
    for (int s = b; s < c; ++s) perm.push_back(s);
    for (int s = a; s < b; ++s) perm.push_back(s);
    for (int s = c; s < n; ++s) perm.push_back(s);
    return perm;
}

}  // namespace

TVec slot_apply(const TVec& v, const HMap& f, const std::vector<int>& in_slots, const std::vector<int>& in_ranks,
                const std::vector<int>& out_slots, const std::vector<int>& out_ranks) {
    TVec out;
    for (const auto& [key, c] : v) {
        int col = 0;
        std::uint64_t base = key;
        for (std::size_t s = 0; s < in_slots.size(); ++s) {
            col = col * in_ranks[s] + key_get(key, in_slots[s]);
            base = key_set(base, in_slots[s], 0);
        }
        for (const auto& [row, e] : f.column(col)) {
            std::uint64_t k = base;
            int r = row;
            for (std::size_t s = out_slots.size(); s-- > 0;) {
                k = key_set(k, out_slots[s], r % out_ranks[s]);
                r /= out_ranks[s];
            }
            add_term(out, k, series_mul(c, e));
        }
    }
    return out;
}

DeformedCategory::DeformedCategory(CategoryKind kind, std::shared_ptr<const HopfData> base, NCSeries assoc,
                                   Rational lambda)
    : kind_(kind), base_(std::move(base)), assoc_(std::move(assoc)), lambda_(std::move(lambda)) {
    assoc_inv_ = nc_inverse(assoc_);
}

int DeformedCategory::add_type(SlotType t) {
    types_.push_back(std::move(t));
    return static_cast<int>(types_.size()) - 1;
}

TVec DeformedCategory::dy_t(const TVec& v, const Layout& L, int i, int j) const {
    const int nb = base_->rank();
    const int tmp = static_cast<int>(L.size());
    const SlotType& Ti = types_[L[i]];
    const SlotType& Tj = types_[L[j]];
    // -v[0] (x) v[1].w - w[1].v (x) w[0]
    TVec a = slot_apply(v, Ti.coaction, {i}, {Ti.rank}, {i, tmp}, {Ti.rank, nb});
    a = slot_apply(a, Tj.action, {tmp, j}, {nb, Tj.rank}, {j}, {Tj.rank});
    TVec b = slot_apply(v, Tj.coaction, {j}, {Tj.rank}, {j, tmp}, {Tj.rank, nb});
    b = slot_apply(b, Ti.action, {tmp, i}, {nb, Ti.rank}, {i}, {Ti.rank});
    add_scaled(a, b, Rational(1));
    return scaled(a, Rational(-1));
}

TVec DeformedCategory::raw_yd_braid(const TVec& v, const Layout& L, int a, int b, int c) const {
    const HopfData& H = *base_;
    const int nh = H.rank();
    const int n = static_cast<int>(L.size());
    const int acc = n, tmp = n + 1;
    TVec w;
    for (const auto& [k, x] : v) add_term(w, key_set(k, acc, H.unit), x);
    // Coaction of the group [a,b): x1 (x) ... (x) xk -> ... (x) xk_1 ... x1_1.
    for (int i = a; i < b; ++i) {
        const SlotType& T = types_[L[i]];
        w = slot_apply(w, T.coaction, {i}, {T.rank}, {i, tmp}, {T.rank, nh});
        w = slot_apply(w, H.mu, {tmp, acc}, {nh, nh}, {acc}, {nh});
    }
    w = slot_apply(w, H.S, {acc}, {nh}, {acc}, {nh});
    for (int j = b; j < c; ++j) {
        const SlotType& T = types_[L[j]];
        if (j + 1 < c) {
            w = slot_apply(w, H.Delta, {acc}, {nh}, {tmp, acc}, {nh, nh});
            w = slot_apply(w, T.action, {tmp, j}, {nh, T.rank}, {j}, {T.rank});
        } else {
            w = slot_apply(w, T.action, {acc, j}, {nh, T.rank}, {j}, {T.rank});
        }
    }
    return permute_slots(w, swap_perm(n, a, b, c));
}

TVec DeformedCategory::t(const TVec& v, const Layout& L, int a, int b, int c) const {
    if (kind_ == CategoryKind::DrinfeldYetter) {
        TVec out;
        for (int i = a; i < b; ++i)
            for (int j = b; j < c; ++j) add_scaled(out, dy_t(v, L, i, j), Rational(1));
        return out;
    }
    // log(sigma_{Y,X} sigma_{X,Y}) as a series in X = sigma^2 - id.
    const Layout L2 = swapped(L, a, b, c);
    const int b2 = a + (c - b);
    auto X = [&](const TVec& x) {
        TVec y = raw_yd_braid(raw_yd_braid(x, L, a, b, c), L2, a, b2, c);
        add_scaled(y, x, Rational(-1));
        return y;
    };
    TVec out, power = v;
    for (int k = 1; k < order(); ++k) {
        power = X(power);
        if (power.empty()) break;
        add_scaled(out, power, frac(k % 2 ? 1 : -1, k));
    }
    return out;
}

TVec DeformedCategory::exp_op(const Op& X, const Rational& s, const TVec& v) const {
    TVec out = v, power = v;
    Rational coef = 1;
    for (int k = 1; k < order(); ++k) {
        power = X(power);
        if (power.empty()) break;
        coef = coef * s / k;
        add_scaled(out, power, coef);
    }
    return out;
}

TVec DeformedCategory::braid(const TVec& v, Layout& L, int a, int b, int c, bool inverse) const {
    const Layout L0 = L;
    auto tt = [&](const TVec& x) { return t(x, L0, a, b, c); };
    TVec out;
    if (kind_ == CategoryKind::DrinfeldYetter) {
        out = permute_slots(exp_op(tt, inverse ? Rational(-lambda_) : lambda_, v),
                            swap_perm(static_cast<int>(L.size()), a, b, c));
    } else {
        // sigma0 is symmetric, so its inverse on the swapped pair is itself.
        out = raw_yd_braid(exp_op(tt, frac(-1, 2), v), L0, a, b, c);
    }
    L = swapped(L0, a, b, c);
    return out;
}

TVec DeformedCategory::assoc(const TVec& v, const Layout& L, int a, int b, int c, int d, bool inverse) const {
    auto A = [&](const TVec& x) { return t(x, L, a, b, c); };
    auto B = [&](const TVec& x) { return t(x, L, b, c, d); };
    return evaluate(inverse ? assoc_inv_ : assoc_, A, B, v);
}

TVec DeformedCategory::evaluate(const NCSeries& f, const Op& A, const Op& B, const TVec& v) const {
    std::map<Word, TVec> cache;
    cache.emplace(Word{}, v);
    TVec out;
    for (const auto& [w, coef] : f.terms()) {
        if (static_cast<int>(w.size()) >= order()) continue;  // every letter carries h
        Word suffix;
        const TVec* cur = &cache.at(suffix);
        for (std::size_t i = w.size(); i-- > 0;) {
            suffix.insert(suffix.begin(), w[i]);
            auto it = cache.find(suffix);
            if (it == cache.end()) it = cache.emplace(suffix, w[i] == 0 ? A(*cur) : B(*cur)).first;
            cur = &it->second;
        }
        add_scaled(out, *cur, coef);
    }
    return out;
}

}  // namespace qdq
