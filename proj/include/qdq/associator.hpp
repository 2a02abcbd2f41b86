#pragma once

#include "qdq/freealg.hpp"
#include "qdq/report.hpp"

namespace qdq {

extern const std::vector<std::string> kAssociatorAlphabet;  // {"A", "B"}

struct Associator {
    NCSeries phi;
    Rational lambda{1, 2};
};

// (chi, f) with f stored as F(A, B) = f(e^A, e^B).
struct GTElement {
    Rational chi;
    NCSeries f;
};

// Degree-by-degree solve on Lyndon coordinates of log(phi); free parameters are set to zero.
Associator solve_associator(int D, const Rational& lambda);

DKElement pentagon_residual(const NCSeries& phi, int D);
// which = 1: exp(l L) = exp(l A) P(C,A) exp(l C) P(B,C) exp(l B) P(A,B)
// which = 2: exp(-l L) = P(C,A) exp(-l C) P(B,C) exp(-l B) P(A,B) exp(-l A)
// with (A, B, C) = (t12, t13, t23) and L = A + B + C.
DKElement hexagon_residual(const NCSeries& phi, const Rational& lambda, int D, int which);
NCSeries duality_residual(const NCSeries& phi);

Report verify_associator(const Associator& a, int D);

// f(u, v) for group-like u, v given through their logarithms.
NCSeries gt_eval(const NCSeries& f, const NCSeries& log_u, const NCSeries& log_v);

GTElement gt_identity(int D);
GTElement gt_mul(const GTElement& g1, const GTElement& g2);
// Second displayed form of the product: f2 f1(x^l2, f2^{-1} y^l2 f2).
GTElement gt_mul_alt(const GTElement& g1, const GTElement& g2);
Associator gt_act(const GTElement& g, const Associator& a);
// Second displayed form: Phi f(e^{2 l A}, Phi^{-1} e^{2 l B} Phi).
Associator gt_act_alt(const GTElement& g, const Associator& a);
GTElement gt_curve_zero(const Associator& a);

// Relation 1 directly, relation 2 in the free algebra via x3 = (x1 x2)^{-1},
// relation 3 through the pentagon of g acting on the reference associator.
Report gt_verify(const GTElement& g, int D, const Associator& reference);

}  // namespace qdq
