#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdq/freealg.hpp"
#include "qdq/hopfcore.hpp"
#include "qdq/liebialg.hpp"
#include "qdq/report.hpp"

namespace qdq {

// Lie coalgebra with a conilpotency witness: filtration levels such that every
// term e_j (x) e_k of delta(e_i) has level(j) + level(k) <= level(i).
struct LieCoalgebra {
    int dim = 0;
    std::vector<std::string> basis;
    std::vector<QPairVec> cobracket;
    std::vector<int> triangular_order;  // levels >= 1; empty means all 1

    int level(int i) const { return triangular_order.empty() ? 1 : triangular_order[i]; }
    // Degrees used for truncation: the witness levels when delta preserves them,
    // tensor length otherwise. delta never lowers either grading.
    int grade(int i) const;
    bool homogeneous() const;
};

LieCoalgebra make_lie_coalgebra(std::vector<std::string> basis,
                                const std::vector<std::tuple<int, int, int, Rational>>& cobracket,
                                std::vector<int> levels = {});
LieCoalgebra lie_coalgebra_of(const LieBialgebra& b, std::vector<int> levels = {});
// delta(e2) = e1 (x) e2 - e2 (x) e1 (no valid witness exists).
LieCoalgebra two_dim_coalgebra();
// delta(z) = x (x) y - y (x) x, levels (1, 1, 2).
LieCoalgebra heisenberg_coalgebra();
// Dual of the graded Heisenberg bialgebra: coalgebra as above, [x,y] = -y, [x,z] = -z.
LieBialgebra heisenberg_dual_bialgebra();

Report validate_lie_coalgebra(const LieCoalgebra& c);

using TensorVec = std::map<Word, Rational>;
using Monomial = std::vector<int>;  // exponent vector
using SymVec = std::map<Monomial, Rational>;
using SymPairVec = std::map<std::pair<Monomial, Monomial>, Rational>;

int word_grade(const LieCoalgebra& c, const Word& w);
int monomial_grade(const LieCoalgebra& c, const Monomial& m);
std::string monomial_label(const LieCoalgebra& c, const Monomial& m);

// psi(u) as coefficients of a (x) (p (x) q) (x) b, keyed by the word a p q b and |a|.
std::map<std::pair<Word, int>, Rational> psi_apply(const LieCoalgebra& c, const TensorVec& u);

// ker psi inside the words of grade <= D. Basis vectors are in reduced form:
// each has coefficient 1 on its own free word and 0 on the others.
struct UcBasis {
    LieCoalgebra c;
    int max_degree = 0;
    std::vector<TensorVec> elements;
    std::vector<Word> free_words;
    std::vector<int> degree;  // largest grade of a word in the element

    int size() const { return static_cast<int>(elements.size()); }
    // Coordinates of a vector of U^c (read off the free words).
    std::vector<Rational> coordinates(const TensorVec& u) const;
};

UcBasis uc_compute(const LieCoalgebra& c, int D);
// Closure under deconcatenation, containment in ker phi, the low degrees.
Report uc_verify(const UcBasis& U);

TensorVec shuffle_mul(const TensorVec& x, const TensorVec& y);
// Deconcatenation coproduct.
std::map<std::pair<Word, Word>, Rational> deconcatenate(const TensorVec& x);
// Projection to symmetric tensors: a word of length k maps to its monomial / k!.
SymVec pbw_star(const TensorVec& u, int dim);
SymVec sym_mul(const SymVec& a, const SymVec& b);
// Degreewise bijectivity and multiplicativity on all pairs within degree.
Report pbw_star_verify(const UcBasis& U);

// kappa_l: S^k -> c (x) S^{k+l}, computed lazily with memoization.
class Kappa {
public:
    Kappa(LieCoalgebra c, int D);
    // Terms (letter, monomial).
    const std::map<std::pair<int, Monomial>, Rational>& at(const Monomial& m, int l);
    // kappa^j(m) restricted to kappa_{<= lmax} in every step, as (letters, remainder).
    std::map<std::pair<Word, Monomial>, Rational> iterate(const Monomial& m, int j, int lmax, int final_degree = -1);
    const LieCoalgebra& coalgebra() const { return c_; }
    int max_degree() const { return D_; }

private:
    std::map<std::pair<int, Monomial>, Rational> r_delta(const Word& w) const;

    LieCoalgebra c_;
    int D_;
    std::map<std::pair<Monomial, int>, std::map<std::pair<int, Monomial>, Rational>> memo_;
};

// Delta on S(c) of grade <= D: sum_l 1/l! (mu_l (x) id) kappa^l.
class SCoproduct {
public:
    SCoproduct(const LieCoalgebra& c, int D);
    const SymPairVec& at(const Monomial& m);
    SymPairVec apply(const SymVec& v);
    const std::vector<Monomial>& monomials() const { return monos_; }
    const LieCoalgebra& coalgebra() const { return kappa_.coalgebra(); }
    int max_degree() const { return D_; }

private:
    Kappa kappa_;
    int D_;
    std::vector<Monomial> monos_;
    std::map<Monomial, SymPairVec> memo_;
};

// Coassociativity, both counit laws, and (pr1 (x) pr1)(Delta - flip Delta) = delta on letters.
Report s_coproduct_verify(SCoproduct& S);

// Hopf datum of U^c(c) on the reduced basis (shuffle product, deconcatenation),
// over Q[h]/h^N with budget D; computed at grade D + N - 1.
struct UcHopf {
    UcBasis basis;
    HopfData hopf;
};
UcHopf uc_hopf(const LieCoalgebra& c, int D, int N);

// coPrim(H) = ker eps / (ker eps)^2 of the classical limit, with the cobracket
// induced by Delta - flip Delta and, when given, the bracket from the h^1 part of
// an h-divisible Poisson bracket.
struct CoPrimResult {
    LieBialgebra lie;
    std::vector<SVec> representatives;
};
CoPrimResult coprim(const HopfData& H, const HMap* bracket = nullptr);

// U^c of the coalgebra of b with {xi_1..xi_k, eta_1..eta_l} = sum [xi_i, eta_j] (rest),
// transported through pbw_star; the bracket is h-scaled.
struct UcPoisson {
    UcBasis basis;
    PoissonHopfData poisson;
};
UcPoisson poisson_from_bialgebra(const LieBialgebra& b, const std::vector<int>& levels, int D, int N);

}  // namespace qdq
