#include "qdq/freealg.hpp"

#include <algorithm>
#include <sstream>

namespace qdq {

std::string word_str(const Word& w, const std::vector<std::string>& alphabet) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += alphabet.at(w[i]);
    }
    return s;
}

NCSeries::NCSeries(std::vector<std::string> alphabet, int max_degree) : alpha_(std::move(alphabet)), D_(max_degree) {
    if (max_degree < 0) throw AlgebraError("negative truncation degree");
}

NCSeries NCSeries::scalar(std::vector<std::string> alphabet, int max_degree, const Rational& c) {
    NCSeries s(std::move(alphabet), max_degree);
    s.add({}, c);
    return s;
}

NCSeries NCSeries::letter(std::vector<std::string> alphabet, int max_degree, int index) {
    if (index < 0 || index >= static_cast<int>(alphabet.size())) throw AlgebraError("letter outside alphabet");
    NCSeries s(std::move(alphabet), max_degree);
    s.add({index}, 1);
    return s;
}

Rational NCSeries::coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Rational(0) : it->second;
}

void NCSeries::add(const Word& w, const Rational& c) {
    if (static_cast<int>(w.size()) > D_ || sgn(c) == 0) return;
    for (int l : w)
        if (l < 0 || l >= static_cast<int>(alpha_.size())) throw AlgebraError("letter outside alphabet");
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(w, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) t_.erase(it);
    }
}

int NCSeries::valuation() const {
    int v = D_ + 1;
    for (const auto& [w, c] : t_) v = std::min(v, static_cast<int>(w.size()));
    return v;
}

NCSeries NCSeries::degree_part(int d) const {
    NCSeries r(alpha_, D_);
    for (const auto& [w, c] : t_)
        if (static_cast<int>(w.size()) == d) r.t_.emplace(w, c);
    return r;
}

NCSeries NCSeries::truncated(int d) const {
    NCSeries r(alpha_, D_);
    for (const auto& [w, c] : t_)
        if (static_cast<int>(w.size()) <= d) r.t_.emplace(w, c);
    return r;
}

NCSeries NCSeries::with_max_degree(int d) const {
    NCSeries r(alpha_, d);
    for (const auto& [w, c] : t_) r.add(w, c);
    return r;
}

static void check_compatible(const NCSeries& a, const NCSeries& b) {
    if (a.alphabet() != b.alphabet()) throw AlgebraError("alphabet mismatch");
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
    check_compatible(*this, o);
    for (const auto& [w, c] : o.t_) add(w, c);
    return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
    check_compatible(*this, o);
    for (const auto& [w, c] : o.t_) add(w, -c);
    return *this;
}

NCSeries& NCSeries::operator*=(const Rational& s) {
    if (sgn(s) == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [w, c] : t_) c *= s;
    return *this;
}

std::string NCSeries::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (!w.empty()) os << "*" << word_str(w, alpha_);
    }
    return os.str();
}

NCSeries nc_mul(const NCSeries& a, const NCSeries& b) {
    check_compatible(a, b);
    const int D = std::min(a.max_degree(), b.max_degree());
    NCSeries r(a.alphabet(), D);
    for (const auto& [u, x] : a.terms()) {
        if (static_cast<int>(u.size()) > D) continue;
        for (const auto& [v, y] : b.terms()) {
            if (static_cast<int>(u.size() + v.size()) > D) continue;
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            r.add(w, x * y);
        }
    }
    return r;
}

NCSeries nc_bracket(const NCSeries& a, const NCSeries& b) { return a * b - b * a; }

NCSeries nc_exp(const NCSeries& a) {
    if (sgn(a.constant()) != 0) throw AlgebraError("nc_exp: constant term must vanish");
    NCSeries result = NCSeries::scalar(a.alphabet(), a.max_degree(), 1);
    NCSeries power = result;
    Rational fact = 1;
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * a;
        if (power.is_zero()) break;
        fact *= k;
        result += power * (1 / fact);
    }
    return result;
}

NCSeries nc_log(const NCSeries& a) {
    if (a.constant() != 1) throw AlgebraError("nc_log: constant term must be 1");
    NCSeries x = a - NCSeries::scalar(a.alphabet(), a.max_degree(), 1);
    NCSeries result(a.alphabet(), a.max_degree());
    NCSeries power = NCSeries::scalar(a.alphabet(), a.max_degree(), 1);
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * x;
        if (power.is_zero()) break;
        result += power * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return result;
}

NCSeries nc_inverse(const NCSeries& a) {
    Rational c0 = a.constant();
    if (sgn(c0) == 0) throw AlgebraError("nc_inverse: constant term must be nonzero");
    NCSeries one = NCSeries::scalar(a.alphabet(), a.max_degree(), 1);
    NCSeries x = a * (1 / c0) - one;
    NCSeries result = one;
    NCSeries power = one;
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * x * Rational(-1);
        if (power.is_zero()) break;
        result += power;
    }
    return result * (1 / c0);
}

NCSeries nc_power(const NCSeries& a, const Rational& s) { return nc_exp(nc_log(a) * s); }

TensorSeries coproduct(const NCSeries& a) {
    TensorSeries r;
    r.max_degree = a.max_degree();
    for (const auto& [w, c] : a.terms()) {
        const int n = static_cast<int>(w.size());
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Word l, rt;
            for (int i = 0; i < n; ++i) (mask >> i & 1u ? l : rt).push_back(w[i]);
            auto& slot = r.terms[{l, rt}];
            slot += c;
            if (sgn(slot) == 0) r.terms.erase({l, rt});
        }
    }
    return r;
}

TensorSeries tensor_square(const NCSeries& a) {
    TensorSeries r;
    r.max_degree = a.max_degree();
    for (const auto& [u, x] : a.terms())
        for (const auto& [v, y] : a.terms()) {
            if (static_cast<int>(u.size() + v.size()) > a.max_degree()) continue;
            auto& slot = r.terms[{u, v}];
            slot += x * y;
            if (sgn(slot) == 0) r.terms.erase({u, v});
        }
    return r;
}

bool is_grouplike(const NCSeries& a) { return a.constant() == 1 && coproduct(a) == tensor_square(a); }

bool is_primitive(const NCSeries& a) {
    if (sgn(a.constant()) != 0) return false;
    TensorSeries expect;
    expect.max_degree = a.max_degree();
    for (const auto& [w, c] : a.terms()) {
        expect.terms[{w, {}}] += c;
        expect.terms[{{}, w}] += c;
    }
    return coproduct(a) == expect;
}

namespace {

// Left-normed bracket [..[w1,w2],..,wn] expanded into words.
std::map<Word, Rational> dynkin_word(const Word& w) {
    std::map<Word, Rational> cur;
    cur[{w[0]}] = 1;
    for (size_t i = 1; i < w.size(); ++i) {
        std::map<Word, Rational> next;
        for (const auto& [u, c] : cur) {
            Word r = u, l{w[i]};
            r.push_back(w[i]);
            l.insert(l.end(), u.begin(), u.end());
            next[r] += c;
            next[l] -= c;
        }
        cur.clear();
        for (auto& [u, c] : next)
            if (sgn(c) != 0) cur.emplace(u, c);
    }
    return cur;
}

}  // namespace

bool is_lie(const NCSeries& a) {
    if (sgn(a.constant()) != 0) return false;
    NCSeries theta(a.alphabet(), a.max_degree());
    NCSeries scaled(a.alphabet(), a.max_degree());
    for (const auto& [w, c] : a.terms()) {
        for (const auto& [u, x] : dynkin_word(w)) theta.add(u, c * x);
        scaled.add(w, c * static_cast<long>(w.size()));
    }
    return theta == scaled;
}

NCSeries substitute(const NCSeries& a, const std::vector<NCSeries>& images) {
    if (images.size() != a.alphabet().size()) throw AlgebraError("substitute: one image per letter required");
    if (images.empty()) return a.truncated(0);
    for (const auto& im : images) {
        check_compatible(im, images[0]);
        if (sgn(im.constant()) != 0) throw AlgebraError("substitute: image has a constant term");
    }
    const int D = images[0].max_degree();
    NCSeries one = NCSeries::scalar(images[0].alphabet(), D, 1);
    return nc_evaluate(
        a, images, one, D, [](const NCSeries& x, const NCSeries& y) { return x * y; },
        [](const NCSeries& x, const NCSeries& y) { return x + y; },
        [](const NCSeries& x, const Rational& s) { return x * s; });
}

static void require_two_letters(const NCSeries& G) {
    if (G.alphabet().size() != 2) throw AlgebraError("T_G is defined on the two-letter alphabet");
}

NCSeries apply_T(const NCSeries& G, const NCSeries& x) {
    require_two_letters(G);
    check_compatible(G, x);
    const int D = std::min(G.max_degree(), x.max_degree());
    NCSeries Gd = G.with_max_degree(D);
    NCSeries A = NCSeries::letter(G.alphabet(), D, 0);
    NCSeries B = NCSeries::letter(G.alphabet(), D, 1);
    return substitute(x.with_max_degree(D), {A, nc_inverse(Gd) * B * Gd});
}

NCSeries apply_T_inverse(const NCSeries& G, const NCSeries& y) {
    // T_G - id raises degree, so the fixed-point iteration settles in max_degree steps.
    NCSeries x = y;
    for (int k = 0; k <= y.max_degree(); ++k) {
        NCSeries next = x + y - apply_T(G, x);
        if (next == x) break;
        x = next;
    }
    return x;
}

NCSeries diamond(const NCSeries& G1, const NCSeries& G2) {
    if (!is_grouplike(G1) || !is_grouplike(G2)) throw AlgebraError("diamond: arguments must be group-like");
    return G1 * apply_T(G1, G2);
}

NCSeries inv_diamond(const NCSeries& G) {
    if (!is_grouplike(G)) throw AlgebraError("inv_diamond: argument must be group-like");
    return apply_T_inverse(G, nc_inverse(G));
}

// ---------------------------------------------------------------------------

static bool is_lyndon(const Word& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) return false;
    return !w.empty();
}

std::vector<Word> lyndon_words(int letters, int length) {
    std::vector<Word> out;
    if (length < 1 || letters < 1) return out;
    Word w{-1};
    while (!w.empty()) {
        w.back() += 1;
        if (static_cast<int>(w.size()) == length) out.push_back(w);
        const size_t m = w.size();
        while (static_cast<int>(w.size()) < length) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == letters - 1) w.pop_back();
    }
    return out;
}

namespace {

struct Bracketed {
    std::string text;
    NCSeries poly;
};

Bracketed standard_bracket(const Word& w, const std::vector<std::string>& alphabet, int D) {
    if (w.size() == 1) return {alphabet.at(w[0]), NCSeries::letter(alphabet, D, w[0])};
    size_t split = 1;
    for (size_t i = 1; i < w.size(); ++i)
        if (is_lyndon(Word(w.begin() + i, w.end()))) {
            split = i;
            break;
        }
    Bracketed u = standard_bracket(Word(w.begin(), w.begin() + split), alphabet, D);
    Bracketed v = standard_bracket(Word(w.begin() + split, w.end()), alphabet, D);
    return {"[" + u.text + "," + v.text + "]", nc_bracket(u.poly, v.poly)};
}

}  // namespace

std::vector<LieBasisElement> lyndon_basis(const std::vector<std::string>& alphabet, int degree, int max_degree) {
    std::vector<LieBasisElement> out;
    for (const Word& w : lyndon_words(static_cast<int>(alphabet.size()), degree)) {
        Bracketed b = standard_bracket(w, alphabet, max_degree);
        out.push_back({w, b.text, b.poly});
    }
    return out;
}

std::vector<Rational> lie_coordinates(const NCSeries& x, const std::vector<LieBasisElement>& basis) {
    std::map<Word, int> rows;
    auto row_of = [&](const Word& w) {
        auto it = rows.find(w);
        if (it == rows.end()) it = rows.emplace(w, static_cast<int>(rows.size())).first;
        return it->second;
    };
    for (const auto& b : basis)
        for (const auto& [w, c] : b.expansion.terms()) row_of(w);
    for (const auto& [w, c] : x.terms()) row_of(w);
    RatMatrix M(static_cast<int>(rows.size()), static_cast<int>(basis.size()));
    std::vector<Rational> rhs(rows.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (const auto& [w, c] : basis[j].expansion.terms()) M(rows[w], static_cast<int>(j)) = c;
    for (const auto& [w, c] : x.terms()) rhs[rows[w]] = c;
    auto sol = solve_linear(M, rhs);
    if (!sol) throw AlgebraError("element is not in the span of the Lie basis");
    return *sol;
}

// ---------------------------------------------------------------------------

namespace {

enum T3Gen { kX = 0, kY = 1, kC = 2 };

using Deriv = std::vector<std::pair<Word, int>>;

// Image of each free letter t14, t24, t34 under ad(t12), ad(t13) and ad(c).
const std::vector<Deriv>& derivation_table(int gen) {
    static const std::vector<Deriv> x = {{{{0, 1}, 1}, {{1, 0}, -1}}, {{{1, 0}, 1}, {{0, 1}, -1}}, {}};
    static const std::vector<Deriv> y = {{{{0, 2}, 1}, {{2, 0}, -1}}, {}, {{{2, 0}, 1}, {{0, 2}, -1}}};
    static const std::vector<Deriv> z = {{}, {{{1, 2}, 1}, {{2, 1}, -1}}, {{{2, 1}, 1}, {{1, 2}, -1}}};
    static const std::vector<Deriv> c = [] {
        std::vector<Deriv> out(3);
        for (const auto* tab : {&x, &y, &z})
            for (int l = 0; l < 3; ++l) out[l].insert(out[l].end(), (*tab)[l].begin(), (*tab)[l].end());
        return out;
    }();
    static const std::vector<Deriv>* table[3] = {&x, &y, &c};
    return *table[gen];
}

}  // namespace

DKElement::DKElement(int strands, int max_degree) : n_(strands), D_(max_degree) {
    if (strands != 3 && strands != 4) throw AlgebraError("only 3 and 4 strands are supported");
}

DKElement DKElement::one(int strands, int max_degree) {
    DKElement e(strands, max_degree);
    e.add(DKKey{}, 1);
    return e;
}

DKElement DKElement::generator(int strands, int max_degree, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > strands || i == j) throw AlgebraError("generator index out of range");
    DKElement e(strands, max_degree);
    if (j == 4) {
        e.add(DKKey{{i - 1}, 0, {}}, 1);
    } else if (i == 1 && j == 2) {
        e.add(DKKey{{}, 0, {kX}}, 1);
    } else if (i == 1 && j == 3) {
        e.add(DKKey{{}, 0, {kY}}, 1);
    } else {
        e.add(DKKey{{}, 1, {}}, 1);
        e.add(DKKey{{}, 0, {kX}}, -1);
        e.add(DKKey{{}, 0, {kY}}, -1);
    }
    return e;
}

void DKElement::add(const DKKey& k, const Rational& c) {
    if (k.degree() > D_ || sgn(c) == 0) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) t_.erase(it);
    }
}

DKElement DKElement::degree_part(int d) const {
    DKElement r(n_, D_);
    for (const auto& [k, c] : t_)
        if (k.degree() == d) r.t_.emplace(k, c);
    return r;
}

DKElement& DKElement::operator+=(const DKElement& o) {
    if (o.n_ != n_) throw AlgebraError("strand count mismatch");
    for (const auto& [k, c] : o.t_) add(k, c);
    return *this;
}

DKElement& DKElement::operator-=(const DKElement& o) {
    if (o.n_ != n_) throw AlgebraError("strand count mismatch");
    for (const auto& [k, c] : o.t_) add(k, -c);
    return *this;
}

DKElement& DKElement::operator*=(const Rational& s) {
    if (sgn(s) == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [k, c] : t_) c *= s;
    return *this;
}

std::string DKElement::str() const {
    static const char* f3n[] = {"t14", "t24", "t34"};
    static const char* f2n[] = {"t12", "t13"};
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int l : k.f3) os << "*" << f3n[l];
        if (k.c) os << "*c" << (k.c > 1 ? "^" + std::to_string(k.c) : "");
        for (int l : k.f2) os << "*" << f2n[l];
    }
    return os.str();
}

namespace {

// g * e for a t_3 generator g, commuting g past the free t_4 factor.
DKElement left_mul_t3(int g, const DKElement& e) {
    DKElement r(e.strands(), e.max_degree());
    const auto& table = derivation_table(g);
    for (const auto& [k, c] : e.terms()) {
        DKKey moved = k;
        if (g == kC)
            moved.c += 1;
        else
            moved.f2.insert(moved.f2.begin(), g);
        r.add(moved, c);
        if (k.degree() + 1 > e.max_degree()) continue;
        for (size_t p = 0; p < k.f3.size(); ++p)
            for (const auto& [img, s] : table[k.f3[p]]) {
                DKKey d = k;
                d.f3.erase(d.f3.begin() + p);
                d.f3.insert(d.f3.begin() + p, img.begin(), img.end());
                r.add(d, c * s);
            }
    }
    return r;
}

}  // namespace

DKElement dk_mul(const DKElement& a, const DKElement& b) {
    if (a.strands() != b.strands()) throw AlgebraError("strand count mismatch");
    const int D = std::min(a.max_degree(), b.max_degree());
    DKElement r(a.strands(), D);
    std::map<std::pair<int, Word>, std::vector<std::pair<Word, Rational>>> grouped;
    for (const auto& [k, c] : a.terms()) grouped[{k.c, k.f2}].emplace_back(k.f3, c);
    for (const auto& [t3, heads] : grouped) {
        DKElement cur(b.strands(), D);
        for (const auto& [k, c] : b.terms())
            if (k.degree() + t3.first + static_cast<int>(t3.second.size()) <= D) cur.add(k, c);
        for (auto it = t3.second.rbegin(); it != t3.second.rend(); ++it) cur = left_mul_t3(*it, cur);
        for (int i = 0; i < t3.first; ++i) cur = left_mul_t3(kC, cur);
        for (const auto& [u, x] : heads)
            for (const auto& [k, y] : cur.terms()) {
                DKKey m = k;
                m.f3.insert(m.f3.begin(), u.begin(), u.end());
                r.add(m, x * y);
            }
    }
    return r;
}

DKElement dk_exp(const DKElement& a) {
    for (const auto& [k, c] : a.terms())
        if (k.degree() == 0) throw AlgebraError("dk_exp: constant term must vanish");
    DKElement result = DKElement::one(a.strands(), a.max_degree());
    DKElement power = result;
    Rational fact = 1;
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * a;
        if (power.is_zero()) break;
        fact *= k;
        result += power * (1 / fact);
    }
    return result;
}

DKElement dk_normal_form(int strands, int max_degree, const std::vector<std::pair<int, int>>& word) {
    if (static_cast<int>(word.size()) > max_degree) throw AlgebraError("dk_normal_form: degree overflow");
    DKElement r = DKElement::one(strands, max_degree);
    for (const auto& [i, j] : word) r = r * DKElement::generator(strands, max_degree, i, j);
    return r;
}

DKElement dk_evaluate(const NCSeries& f, const std::vector<DKElement>& images) {
    if (images.empty()) throw AlgebraError("dk_evaluate: no images");
    const DKElement& first = images[0];
    DKElement one = DKElement::one(first.strands(), first.max_degree());
    return nc_evaluate(
        f, images, one, first.max_degree(), [](const DKElement& x, const DKElement& y) { return x * y; },
        [](const DKElement& x, const DKElement& y) { return x + y; },
        [](const DKElement& x, const Rational& s) { return x * s; });
}

}  // namespace qdq
