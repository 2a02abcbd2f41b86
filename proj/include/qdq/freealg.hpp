#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdq/truncmod.hpp"

namespace qdq {

using Word = std::vector<int>;

std::string word_str(const Word& w, const std::vector<std::string>& alphabet);

// Truncated series in non-commuting letters: all words of length <= max_degree.
class NCSeries {
public:
    NCSeries() = default;
    NCSeries(std::vector<std::string> alphabet, int max_degree);

    static NCSeries scalar(std::vector<std::string> alphabet, int max_degree, const Rational& c);
    static NCSeries letter(std::vector<std::string> alphabet, int max_degree, int index);

    const std::vector<std::string>& alphabet() const { return alpha_; }
    int max_degree() const { return D_; }
    const std::map<Word, Rational>& terms() const { return t_; }

    Rational coeff(const Word& w) const;
    void add(const Word& w, const Rational& c);
    Rational constant() const { return coeff({}); }
    bool is_zero() const { return t_.empty(); }
    // Lowest length of a word with nonzero coefficient; max_degree()+1 for 0.
    int valuation() const;
    NCSeries degree_part(int d) const;
    NCSeries truncated(int d) const;
    NCSeries with_max_degree(int d) const;

    NCSeries& operator+=(const NCSeries& o);
    NCSeries& operator-=(const NCSeries& o);
    NCSeries& operator*=(const Rational& s);
    friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
    friend NCSeries operator*(NCSeries a, const Rational& s) { return a *= s; }
    friend NCSeries operator*(const Rational& s, NCSeries a) { return a *= s; }
    friend bool operator==(const NCSeries& a, const NCSeries& b) {
        return a.alpha_ == b.alpha_ && a.t_ == b.t_;
    }

    std::string str() const;

private:
    std::vector<std::string> alpha_;
    int D_ = 0;
    std::map<Word, Rational> t_;
};

NCSeries nc_mul(const NCSeries& a, const NCSeries& b);
inline NCSeries operator*(const NCSeries& a, const NCSeries& b) { return nc_mul(a, b); }
NCSeries nc_bracket(const NCSeries& a, const NCSeries& b);
NCSeries nc_exp(const NCSeries& a);
NCSeries nc_log(const NCSeries& a);
NCSeries nc_inverse(const NCSeries& a);
// a^s for a with constant term 1, via exp(s log a).
NCSeries nc_power(const NCSeries& a, const Rational& s);

// Element of A<<X>> (x) A<<X>>, truncated at total length max_degree.
struct TensorSeries {
    int max_degree = 0;
    std::map<std::pair<Word, Word>, Rational> terms;
    bool operator==(const TensorSeries& o) const { return terms == o.terms; }
};

TensorSeries coproduct(const NCSeries& a);
TensorSeries tensor_square(const NCSeries& a);
bool is_grouplike(const NCSeries& a);
bool is_primitive(const NCSeries& a);
// Dynkin-Specht-Wever: a homogeneous x of degree d is Lie iff theta(x) = d x.
bool is_lie(const NCSeries& a);

// Unique algebra morphism with letter i -> images[i], truncated at the images' degree.
NCSeries substitute(const NCSeries& a, const std::vector<NCSeries>& images);

// Evaluates a word series in an arbitrary algebra. Products of images are formed
// left to right over a prefix cache; words longer than max_len are skipped.
template <class Alg, class Mul, class Add, class Scale>
Alg nc_evaluate(const NCSeries& f, const std::vector<Alg>& images, const Alg& one, int max_len, Mul mul,
                Add add, Scale scale) {
    std::map<Word, Alg> prefix;
    prefix.emplace(Word{}, one);
    Alg acc = scale(one, Rational(0));
    for (const auto& [w, c] : f.terms()) {
        if (static_cast<int>(w.size()) > max_len) continue;
        Word p;
        const Alg* cur = &prefix.at(p);
        for (int letter : w) {
            p.push_back(letter);
            auto it = prefix.find(p);
            if (it == prefix.end()) it = prefix.emplace(p, mul(*cur, images.at(letter))).first;
            cur = &it->second;
        }
        acc = add(acc, scale(*cur, c));
    }
    return acc;
}

// T_G: A -> A, B -> G^{-1} B G on the two-letter alphabet.
NCSeries apply_T(const NCSeries& G, const NCSeries& x);
NCSeries apply_T_inverse(const NCSeries& G, const NCSeries& x);
NCSeries diamond(const NCSeries& G1, const NCSeries& G2);
NCSeries inv_diamond(const NCSeries& G);

struct LieBasisElement {
    Word lyndon;
    std::string bracket;
    NCSeries expansion;
};

std::vector<Word> lyndon_words(int letters, int length);
std::vector<LieBasisElement> lyndon_basis(const std::vector<std::string>& alphabet, int degree, int max_degree);
// Coordinates of a homogeneous Lie element in lyndon_basis; throws if not in the span.
std::vector<Rational> lie_coordinates(const NCSeries& x, const std::vector<LieBasisElement>& basis);

// ---------------------------------------------------------------------------
// Truncated U(t_3) and U(t_4) in normal form.
// U(t_3) = Q[c] (x) Q<x,y>, with x = t12, y = t13, c = t12 + t13 + t23 central.
// U(t_4) = Q<t14,t24,t34> (x) U(t_3), the free factor written to the left.

struct DKKey {
    Word f3;
    int c = 0;
    Word f2;
    int degree() const { return static_cast<int>(f3.size() + f2.size()) + c; }
    auto operator<=>(const DKKey&) const = default;
};

class DKElement {
public:
    DKElement() = default;
    DKElement(int strands, int max_degree);

    static DKElement one(int strands, int max_degree);
    static DKElement generator(int strands, int max_degree, int i, int j);

    int strands() const { return n_; }
    int max_degree() const { return D_; }
    const std::map<DKKey, Rational>& terms() const { return t_; }
    void add(const DKKey& k, const Rational& c);
    bool is_zero() const { return t_.empty(); }
    DKElement degree_part(int d) const;

    DKElement& operator+=(const DKElement& o);
    DKElement& operator-=(const DKElement& o);
    DKElement& operator*=(const Rational& s);
    friend DKElement operator+(DKElement a, const DKElement& b) { return a += b; }
    friend DKElement operator-(DKElement a, const DKElement& b) { return a -= b; }
    friend DKElement operator*(DKElement a, const Rational& s) { return a *= s; }
    friend bool operator==(const DKElement& a, const DKElement& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    std::string str() const;

private:
    int n_ = 3, D_ = 0;
    std::map<DKKey, Rational> t_;
};

DKElement dk_mul(const DKElement& a, const DKElement& b);
inline DKElement operator*(const DKElement& a, const DKElement& b) { return dk_mul(a, b); }
DKElement dk_exp(const DKElement& a);
// Normal form of a product of generators t_{i j} (pairs given 1-based, any order).
DKElement dk_normal_form(int strands, int max_degree, const std::vector<std::pair<int, int>>& word);
// Evaluate a two-letter (or more) series at DK elements.
DKElement dk_evaluate(const NCSeries& f, const std::vector<DKElement>& images);

}  // namespace qdq
