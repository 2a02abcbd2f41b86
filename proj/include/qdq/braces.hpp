#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qdq/liebialg.hpp"
#include "qdq/report.hpp"

namespace qdq {

struct FinAlgebra {
    int dim = 0;
    std::vector<std::string> basis;
    // mult[i][j] = e_i e_j
    std::vector<std::vector<QVec>> mult;
    QVec unit;

    QVec mul(const QVec& a, const QVec& b) const;
};

FinAlgebra make_fin_algebra(std::vector<std::string> basis,
                            const std::vector<std::tuple<int, int, int, Rational>>& mult, QVec unit);
// Q[x]/(x^2) on the basis (1, x).
FinAlgebra dual_numbers();
Report validate_fin_algebra(const FinAlgebra& A);

// phi in C^k(A) = Hom(A^{(x)k}, A); values indexed by the inputs in mixed radix,
// first argument most significant. Shifted degree in C(A)[1] is k - 1.
struct Cochain {
    int arity = 0;
    std::vector<QVec> values;

    int degree() const { return arity - 1; }
    bool is_zero() const;
    // zero cochains compare equal whatever their arity
    bool operator==(const Cochain& o) const {
        return (arity == o.arity && values == o.values) || (is_zero() && o.is_zero());
    }
};

constexpr int kMaxArity = 8;

Cochain zero_cochain(const FinAlgebra& A, int arity);
Cochain multiplication_cochain(const FinAlgebra& A);
Cochain basis_cochain(const FinAlgebra& A, int arity, int input, int output);
Cochain random_cochain(const FinAlgebra& A, int arity, std::mt19937& rng);
Cochain cochain_add(const Cochain& a, const Cochain& b);
Cochain cochain_scale(const Cochain& a, const Rational& s);
// Value on basis inputs.
const QVec& cochain_at(const Cochain& phi, const std::vector<int>& args, int dim);

Cochain hochschild_delta(const FinAlgebra& A, const Cochain& phi);
Cochain cup(const FinAlgebra& A, const Cochain& phi, const Cochain& psi);
// phi{phi_1, ..., phi_n}; zero when n exceeds the arity of phi.
Cochain brace(const FinAlgebra& A, const Cochain& phi, const std::vector<Cochain>& args);
// phi{psi} - (-1)^{|phi||psi|} psi{phi}
Cochain gerstenhaber_bracket(const FinAlgebra& A, const Cochain& phi, const Cochain& psi);

// C^0..C^K with the dg structure; verify() samples with the given seed.
struct CochainComplexData {
    FinAlgebra base;
    int max_arity = 3;

    int component_dim(int k) const;
    Report verify(std::uint32_t seed, int samples = 5) const;
};

// ---------------------------------------------------------------------------

// Elements of T^c(C(A)[1]) on words of basis cochains.
using CochainWord = std::vector<int>;
using TcElement = std::map<CochainWord, Rational>;
using TcPair = std::map<std::pair<CochainWord, CochainWord>, Rational>;

class TamarkinBialgebra {
public:
    TamarkinBialgebra(FinAlgebra A, int max_arity, int cutoff);

    const FinAlgebra& algebra() const { return A_; }
    int max_arity() const { return K_; }
    int cutoff() const { return F_; }

    // Basis cochain ids, across all arities up to kMaxArity.
    int letter(int arity, int input, int output) const;
    Cochain letter_cochain(int id) const;
    int letter_degree(int id) const;
    int word_degree(const CochainWord& w) const;

    TcElement from_cochains(const std::vector<Cochain>& word, const Rational& c = 1) const;
    TcElement length_part(const TcElement& x, int len) const;

    // Coalgebra extension of m_{0,1} = m_{1,0} = id and m_{1,k} = braces.
    TcElement mul(const TcElement& x, const TcElement& y) const;
    TcElement shuffle(const TcElement& x, const TcElement& y) const;
    TcPair coproduct(const TcElement& x) const;
    TcElement antipode(const TcElement& x) const;
    // ad of the product cochain: reproduces delta and the cup product on cogenerators.
    TcElement differential(const TcElement& x) const;

private:
    TcElement mul_words(const CochainWord& x, const CochainWord& y) const;
    TcElement expand(const std::vector<Cochain>& letters, const Rational& c) const;

    FinAlgebra A_;
    int K_, F_;
    std::vector<int> offset_;  // first id of each arity
    Cochain mu_;
    mutable std::map<std::pair<CochainWord, CochainWord>, TcElement> mul_memo_;
    mutable std::map<CochainWord, TcElement> antipode_memo_;
};

TamarkinBialgebra tamarkin_product(const FinAlgebra& A, int max_arity, int cutoff);

// Coalgebra morphism, associativity, commutativity modulo lower filtration, the
// shuffle leading term, antipode and differential on seeded samples within the cutoff.
Report tamarkin_verify(const TamarkinBialgebra& T, std::uint32_t seed, int samples = 5);

// First-filtration antisymmetrization of m against the Gerstenhaber bracket on
// seeded pairs, and [mu, mu]_G = 0.
Report gerstenhaber_check(const FinAlgebra& A, std::uint32_t seed, int samples = 5, int max_arity = 3);

}  // namespace qdq
