#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qdq/freealg.hpp"
#include "qdq/hopfcore.hpp"

namespace qdq {

// Module structure carried by one tensor slot: action base (x) V -> V and
// coaction V -> V (x) base (a cobracket-coaction in the Drinfeld-Yetter case).
struct SlotType {
    HModule carrier;
    int rank = 0;
    HMap action;
    HMap coaction;
};

// Maps f: in_slots -> out_slots of a multi-slot tensor. Input slots missing
// from out_slots are cleared; the caller compacts with permute_slots.
TVec slot_apply(const TVec& v, const HMap& f, const std::vector<int>& in_slots, const std::vector<int>& in_ranks,
                const std::vector<int>& out_slots, const std::vector<int>& out_ranks);

enum class CategoryKind {
    // Drinfeld-Yetter modules over a coPoisson datum, symmetric with the flip,
    // deformed by an associator: a = Psi(t12, t23), sigma = flip exp(lambda t).
    DrinfeldYetter,
    // Yetter-Drinfeld modules over a Hopf datum deformed by the GT element
    // g(0): t = log sigma^2, sigma0 = sigma exp(-t/2), a = Psi(t12, t23).
    YetterDrinfeldG0,
};

// Vector-level evaluation of the structure morphisms of a deformed braided
// category. A layout lists the slot type of each tensor factor; groups are
// half-open slot ranges, and operators act on adjacent groups.
class DeformedCategory {
public:
    using Layout = std::vector<int>;
    using Op = std::function<TVec(const TVec&)>;

    DeformedCategory(CategoryKind kind, std::shared_ptr<const HopfData> base, NCSeries assoc, Rational lambda);

    int add_type(SlotType t);
    const SlotType& type(int i) const { return types_[i]; }
    const HopfData& base() const { return *base_; }
    int order() const { return base_->order(); }
    CategoryKind kind() const { return kind_; }

    // t between [a,b) and [b,c).
    TVec t(const TVec& v, const Layout& L, int a, int b, int c) const;
    // Braiding [a,b) (x) [b,c) -> [b,c) (x) [a,b); inverse applies sigma^{-1} of the
    // swapped pair. The layout is updated.
    TVec braid(const TVec& v, Layout& L, int a, int b, int c, bool inverse = false) const;
    // a_{X,Y,Z} for X = [a,b), Y = [b,c), Z = [c,d).
    TVec assoc(const TVec& v, const Layout& L, int a, int b, int c, int d, bool inverse = false) const;

    // f(A, B) v, words read as composites.
    TVec evaluate(const NCSeries& f, const Op& A, const Op& B, const TVec& v) const;

private:
    TVec raw_yd_braid(const TVec& v, const Layout& L, int a, int b, int c) const;
    TVec dy_t(const TVec& v, const Layout& L, int i, int j) const;
    TVec exp_op(const Op& X, const Rational& s, const TVec& v) const;

    CategoryKind kind_;
    std::shared_ptr<const HopfData> base_;
    NCSeries assoc_, assoc_inv_;
    Rational lambda_;
    std::vector<SlotType> types_;
};

}  // namespace qdq
