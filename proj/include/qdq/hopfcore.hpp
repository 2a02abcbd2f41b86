#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdq/report.hpp"
#include "qdq/truncmod.hpp"

namespace qdq {

// Rank-one module spanned by "1" in degree 0.
HModule ground_module(int order);

struct HopfData {
    HModule carrier;
    int unit = 0;
    // Generate the augmentation ideal as a left ideal.
    std::vector<int> aug_generators;
    HMap mu, eta, Delta, epsilon, S, S_inv;

    int order() const { return carrier.order; }
    int rank() const { return carrier.rank(); }
    int budget() const;
    void set_budget(int b);
};

struct CoPoissonHopfData {
    HopfData hopf;
    HMap delta;
    bool quantizable = false;  // delta is h-divisible
};

struct PoissonHopfData {
    HopfData hopf;
    HMap bracket;
    bool coquantizable = false;  // bracket is h-divisible
};

// ---------------------------------------------------------------------------
// Tensors over several slots. A structure map with domain A1 (x) ... (x) Ak is
// applied to consecutive slots; ranks give the mixed-radix layout of its
// domain and codomain indices.

TVec tv_basis(const std::vector<int>& idx, const TruncSeries& c);
TVec apply_at(const HMap& f, const std::vector<int>& in_ranks, const std::vector<int>& out_ranks, const TVec& v,
              int pos, int nslots);
// New slot i holds old slot perm[i].
TVec permute_slots(const TVec& v, const std::vector<int>& perm);
TVec svec_to_tvec(const SVec& v, const std::vector<int>& ranks);
SVec tvec_to_svec(const TVec& v, const std::vector<int>& ranks);
// Builds an HMap column by column; columns above the budget are computed on
// h^e e_j and divided back, so f only sees inputs of weight <= budget.
HMap build_map(const HModule& dom, const HModule& cod, int budget, const std::function<SVec(const SVec&)>& f);
// f and g agree on every column j modulo h^(N - max(0, deg j - budget)).
bool hmap_agree(const HMap& f, const HMap& g, int budget);
// Degrees of a tensor of slots, for budget bookkeeping.
int tv_degree(std::uint64_t key, const std::vector<const HModule*>& slots);

TVec mu_at(const HopfData& H, const TVec& v, int pos, int nslots);
TVec delta_at(const HopfData& H, const TVec& v, int pos, int nslots);
TVec antipode_at(const HopfData& H, const TVec& v, int pos, int nslots, bool inverse = false);
TVec counit_at(const HopfData& H, const TVec& v, int pos, int nslots);
TVec unit_at(const HopfData& H, const TVec& v, int pos, int nslots);

// Sweeps all basis tuples of total degree <= W, each scaled by h^max(0, d - budget).
void for_each_weighted_tuple(const std::vector<const HModule*>& slots, int budget,
                             const std::function<void(const TVec&, const std::string&)>& body);

// ---------------------------------------------------------------------------

Report hopf_verify(const HopfData& H, int budget);
Report copoisson_verify(const CoPoissonHopfData& C, int budget);
Report poisson_verify(const PoissonHopfData& P, int budget);

// S^{-1} = S (S^2)^{-1}; requires S^2 = id mod h.
HMap antipode_inverse(const HMap& S);

// C_x and P_x over Q[x]/(x^2), built from the h^0 parts (the h^1 part of an
// h-divisible cobracket or bracket).
HopfData first_order_hopf(const CoPoissonHopfData& C, bool antipode_correction = true);
HopfData first_order_hopf(const PoissonHopfData& P, bool antipode_correction = true);
Report first_order_model(const CoPoissonHopfData& C, bool antipode_correction = true);
Report first_order_model(const PoissonHopfData& P, bool antipode_correction = true);

// ---------------------------------------------------------------------------
// Yetter-Drinfeld modules (left action, right coaction).

struct YDModuleData {
    std::shared_ptr<const HopfData> base;
    HModule carrier;
    HMap action;    // H (x) V -> V
    HMap coaction;  // V -> V (x) H
};

Report yd_validate(const YDModuleData& V, int budget);
YDModuleData yd_tensor_under(const YDModuleData& V, const YDModuleData& W);
YDModuleData yd_tensor_over(const YDModuleData& V, const YDModuleData& W);
HMap yd_braiding_under(const YDModuleData& V, const YDModuleData& W);
HMap yd_braiding_under_inverse(const YDModuleData& V, const YDModuleData& W);  // W (x) V -> V (x) W
HMap yd_braiding_over(const YDModuleData& V, const YDModuleData& W);
HMap yd_braiding_over_inverse(const YDModuleData& V, const YDModuleData& W);
// Trivial action and coaction on a module.
YDModuleData yd_trivial(std::shared_ptr<const HopfData> H, const HModule& V);

// H_- = (H, mu, h -> h2 (x) h3 S^{-1}(h1)) and H_+ = (H, h (x) v -> h2 v S^{-1}(h1), Delta).
YDModuleData adjoint_minus(std::shared_ptr<const HopfData> H);
YDModuleData coadjoint_plus(std::shared_ptr<const HopfData> H);

// F_-(V) = V / span{(g - eps(g)) v} over the augmentation generators.
// Relations above the budget enter as h^e multiples, so truncation shows up as torsion.
QuotientResult fiber_minus(const YDModuleData& V);
// F_+(V) = ker(Delta_V - id (x) eta), as an inclusion into V.
HMap fiber_plus(const YDModuleData& V);
// F_-(H_- (x) X) -> X, [m (x) x] -> S(m).x, on representatives in H (x) X.
HMap fiber_minus_iso(const YDModuleData& X);
// X -> H_- (x) X, x -> 1 (x) x.
HMap fiber_minus_iso_inverse(const YDModuleData& X);
// F_+(X (x) H_+) -> X via id (x) eps, and X -> X (x) H, x -> (id (x) S) Delta_V(x).
HMap fiber_plus_iso(const YDModuleData& X);
HMap fiber_plus_iso_inverse(const YDModuleData& X);

// ---------------------------------------------------------------------------
// Duality: transposes of all tables on the dual basis.

HopfData dualize(const HopfData& H);
PoissonHopfData dualize(const CoPoissonHopfData& C);
CoPoissonHopfData dualize(const PoissonHopfData& P);

// ---------------------------------------------------------------------------
// Drinfeld-Yetter modules over a coPoisson Hopf datum: (V, mu_V, delta_V: V -> V (x) C).

struct DYHopfModule {
    std::shared_ptr<const CoPoissonHopfData> base;
    HModule carrier;
    HMap action;
    HMap coaction;
};

Report dy_hopf_validate(const DYHopfModule& V, int budget);

}  // namespace qdq
