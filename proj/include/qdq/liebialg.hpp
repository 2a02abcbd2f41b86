#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdq/associator.hpp"
#include "qdq/report.hpp"
#include "qdq/truncmod.hpp"

namespace qdq {

using QVec = std::map<int, Rational>;
using QPairVec = std::map<std::pair<int, int>, Rational>;

struct LieBialgebra {
    int dim = 0;
    std::vector<std::string> basis;
    // bracket[i][j] = [e_i, e_j]
    std::vector<std::vector<QVec>> bracket;
    // cobracket[i] = delta(e_i) as sum c e_j (x) e_k
    std::vector<QPairVec> cobracket;
    bool hbar_scaled = true;
    // PBW degrees of the generators; all 1 when empty.
    std::vector<int> degrees;

    int degree(int i) const { return degrees.empty() ? 1 : degrees[i]; }
    QVec br(const QVec& x, const QVec& y) const;
};

LieBialgebra make_lie_bialgebra(std::vector<std::string> basis,
                                const std::vector<std::tuple<int, int, int, Rational>>& bracket,
                                const std::vector<std::tuple<int, int, int, Rational>>& cobracket);
// [H,E] = 2E, delta(H) = 0, delta(E) = E(x)H - H(x)E; basis order (H, E).
LieBialgebra borel_sl2();
LieBialgebra abelian_bialgebra(int n);

Report validate_bialgebra(const LieBialgebra& b);

struct DYModule {
    LieBialgebra base;
    int dim = 0;
    std::vector<std::string> basis;
    // action[i][a] = e_i . v_a
    std::vector<std::vector<QVec>> action;
    // coaction[a] = rho(v_a) as sum c v_b (x) e_i, keyed (b, i)
    std::vector<QPairVec> coaction;

    QVec act(int i, const QVec& v) const;
    HModule module(int order) const;
};

DYModule trivial_dy_module(const LieBialgebra& b, int dim = 1);
// V = b with zero action and rho = delta.
DYModule cobracket_module(const LieBialgebra& b);
// Two-dimensional module over borel_sl2(): H = diag(1,-1), E = e_01,
// rho(v0) = v0(x)H/2 + 2 v1(x)E, rho(v1) = -v1(x)H/2.
DYModule borel_standard_module();

Report dy_validate(const DYModule& V);
DYModule dy_tensor(const DYModule& V, const DYModule& W);

// t_{V,W} on V (x) W, an h-multiple when the base is h-scaled.
HMap inf_braiding(const DYModule& V, const DYModule& W, int order);
// Flip V (x) W -> W (x) V.
HMap tensor_flip(const HModule& V, const HModule& W);
// f (x) id_W and id_V (x) f.
HMap extend_right(const HMap& f, const HModule& W);
HMap extend_left(const HModule& V, const HMap& f);

Report cartier_verify(const DYModule& V, const DYModule& W, const DYModule& Z, int order);

// Phi(A, B) on operators, words read as composites (AB = A after B).
HMap evaluate_on_operators(const NCSeries& f, const HMap& A, const HMap& B);

// a^Phi = Phi(t12, t23) on X (x) Y (x) Z.
HMap phi_associativity(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z, int order);
// sigma^Phi = flip after exp(lambda t): X (x) Y -> Y (x) X.
HMap phi_braiding(const Associator& phi, const DYModule& X, const DYModule& Y, int order);

Report hexagon_verify(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z, int order);
Report pentagon_verify(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z,
                       const DYModule& W, int order);

// Checks endo_log of the squared braiding against t (for lambda = 1/2) and that
// the f0-deformation of a^Phi is the identity.
Report operator_roundtrip(const Associator& phi, const DYModule& X, const DYModule& Y, const DYModule& Z, int order);

}  // namespace qdq
