#pragma once

#include <map>
#include <memory>
#include <vector>

#include "qdq/hopfcore.hpp"
#include "qdq/liebialg.hpp"

namespace qdq {

// Ordered monomials e_1^{a_1} ... e_n^{a_n} of total degree <= W with memoized
// normal ordering. Elements of U carry series coefficients (SVec); elements of
// U (x) U are two-slot TVecs. Terms whose total degree exceeds W are dropped.
class PBWBasis {
public:
    PBWBasis(const LieBialgebra& b, int working_degree, int order);

    int rank() const { return static_cast<int>(exps_.size()); }
    int order() const { return order_; }
    int working_degree() const { return W_; }
    const std::vector<int>& exponents(int i) const { return exps_[i]; }
    int degree(int i) const { return deg_[i]; }
    // -1 when the monomial is not in the basis.
    int index(const std::vector<int>& e) const;
    int generator(int g) const;
    HModule module() const;

    // Classical product of two basis monomials; requires degree(i) + degree(j) <= W.
    const QVec& product(int i, int j);
    SVec mul(const SVec& x, const SVec& y);
    TVec tmul(const TVec& x, const TVec& y);

private:
    const QVec& mul_gen(int m, int g);

    LieBialgebra b_;
    int W_, order_;
    std::vector<std::vector<int>> exps_;
    std::vector<int> deg_;
    std::map<std::vector<int>, int> index_;
    std::map<std::pair<int, int>, QVec> gen_memo_, prod_memo_;
};

struct PBWAlgebra {
    LieBialgebra base;
    int max_degree = 0;  // D, the budget of every table
    int order = 1;       // N
    std::shared_ptr<PBWBasis> basis;
    CoPoissonHopfData copoisson;

    int working_degree() const { return max_degree + order - 1; }
};

// U(b) with the derivation-extended cobracket (h-scaled when b is).
PBWAlgebra u_enveloping(const LieBialgebra& b, int D, int N);

// S(g) with primitive generators and the Kirillov-Kostant bracket extending
// {x, y} = [x, y] (h-scaled when b is); graded, with the bracket lowering degree by one.
PoissonHopfData kks_symmetric(const LieBialgebra& b, int D, int N);

// U(b) for borel_sl2() with Delta(H) = H (x) 1 + 1 (x) H, Delta(E) = E (x) e^{hH} + 1 (x) E,
// S(E) = -E e^{-hH}, truncated at degree D + N - 1 with budget D.
HopfData quantized_borel(int D, int N);

}  // namespace qdq
