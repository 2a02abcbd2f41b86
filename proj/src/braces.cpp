#include "qdq/braces.hpp"

#include <algorithm>
#include <functional>

namespace qdq {

namespace {

void qacc(QVec& v, int k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = v.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

template <class Map, class K>
void racc(Map& m, const K& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = m.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int sign_of(long long e) { return e % 2 ? -1 : 1; }

std::vector<int> digits(int index, int arity, int dim) {
    std::vector<int> a(arity);
    for (int i = arity - 1; i >= 0; --i) {
        a[i] = index % dim;
        index /= dim;
    }
    return a;
}

int undigits(const std::vector<int>& a, int dim) {
    int idx = 0;
    for (int x : a) idx = idx * dim + x;
    return idx;
}

// phi on arbitrary vector arguments, by multilinearity.
QVec evaluate(const Cochain& phi, const std::vector<QVec>& args, int dim) {
    QVec out;
    std::vector<int> idx(args.size());
    std::function<void(size_t, const Rational&)> rec = [&](size_t pos, const Rational& c) {
        if (pos == args.size()) {
            for (const auto& [k, x] : phi.values[undigits(idx, dim)]) qacc(out, k, c * x);
            return;
        }
        for (const auto& [a, x] : args[pos]) {
            idx[pos] = a;
            rec(pos + 1, c * x);
        }
    };
    rec(0, 1);
    return out;
}

QVec basis_vec(int a) { return QVec{{a, Rational(1)}}; }

struct Tally {
    int bad = 0;
    std::string first;
    void note(bool ok, const std::string& where) {
        if (ok) return;
        if (bad < 3) first += (first.empty() ? "" : "; ") + where;
        ++bad;
    }
    void report(Report& r, const std::string& name) const {
        r.add(name, bad == 0, bad ? std::to_string(bad) + " failures: " + first : "");
    }
};

}  // namespace

// ---------------------------------------------------------------------------

QVec FinAlgebra::mul(const QVec& a, const QVec& b) const {
    QVec out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            for (const auto& [k, z] : mult[i][j]) qacc(out, k, x * y * z);
    return out;
}

FinAlgebra make_fin_algebra(std::vector<std::string> basis,
                            const std::vector<std::tuple<int, int, int, Rational>>& mult, QVec unit) {
    FinAlgebra A;
    A.dim = static_cast<int>(basis.size());
    A.basis = std::move(basis);
    A.mult.assign(A.dim, std::vector<QVec>(A.dim));
    for (const auto& [i, j, k, c] : mult) {
        if (i < 0 || j < 0 || k < 0 || i >= A.dim || j >= A.dim || k >= A.dim)
            throw AlgebraError("structure constant index out of range");
        qacc(A.mult[i][j], k, c);
    }
    A.unit = std::move(unit);
    return A;
}

FinAlgebra dual_numbers() { return make_fin_algebra({"1", "x"}, {{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}}, {{0, 1}}); }

Report validate_fin_algebra(const FinAlgebra& A) {
    Report r;
    Tally assoc, unit;
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) {
                QVec a = basis_vec(i), b = basis_vec(j), c = basis_vec(k);
                assoc.note(A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c)),
                           A.basis[i] + A.basis[j] + A.basis[k]);
            }
    for (int i = 0; i < A.dim; ++i) {
        QVec a = basis_vec(i);
        unit.note(A.mul(A.unit, a) == a && A.mul(a, A.unit) == a, A.basis[i]);
    }
    assoc.report(r, "associativity");
    unit.report(r, "unit");
    return r;
}

// ---------------------------------------------------------------------------

bool Cochain::is_zero() const {
    for (const auto& v : values)
        if (!v.empty()) return false;
    return true;
}

Cochain zero_cochain(const FinAlgebra& A, int arity) {
    if (arity < 0 || arity > kMaxArity) throw AlgebraError("cochain arity " + std::to_string(arity) + " out of range");
    Cochain c;
    c.arity = arity;
    c.values.assign(ipow(A.dim, arity), {});
    return c;
}

Cochain multiplication_cochain(const FinAlgebra& A) {
    Cochain m = zero_cochain(A, 2);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) m.values[i * A.dim + j] = A.mult[i][j];
    return m;
}

Cochain basis_cochain(const FinAlgebra& A, int arity, int input, int output) {
    Cochain c = zero_cochain(A, arity);
    c.values.at(input)[output] = 1;
    return c;
}

Cochain random_cochain(const FinAlgebra& A, int arity, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    Cochain c = zero_cochain(A, arity);
    for (auto& v : c.values)
        for (int k = 0; k < A.dim; ++k) qacc(v, k, Rational(coef(rng)));
    return c;
}

Cochain cochain_add(const Cochain& a, const Cochain& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.arity != b.arity) throw AlgebraError("adding cochains of different arity");
    Cochain c = a;
    for (size_t i = 0; i < c.values.size(); ++i)
        for (const auto& [k, x] : b.values[i]) qacc(c.values[i], k, x);
    return c;
}

Cochain cochain_scale(const Cochain& a, const Rational& s) {
    Cochain c = a;
    for (auto& v : c.values) {
        if (s == 0) v.clear();
        for (auto& [k, x] : v) x *= s;
    }
    return c;
}

const QVec& cochain_at(const Cochain& phi, const std::vector<int>& args, int dim) {
    return phi.values.at(undigits(args, dim));
}

Cochain hochschild_delta(const FinAlgebra& A, const Cochain& phi) {
    const int k = phi.arity, d = A.dim;
    Cochain out = zero_cochain(A, k + 1);
    for (int idx = 0; idx < static_cast<int>(out.values.size()); ++idx) {
        std::vector<int> a = digits(idx, k + 1, d);
        QVec& v = out.values[idx];
        auto add = [&](const QVec& x, int s) {
            for (const auto& [m, c] : x) qacc(v, m, s * c);
        };
        add(A.mul(basis_vec(a[0]), cochain_at(phi, std::vector<int>(a.begin() + 1, a.end()), d)), 1);
        for (int i = 1; i <= k; ++i) {
            std::vector<QVec> args;
            for (int j = 0; j < k + 1; ++j) {
                if (j == i) continue;
                args.push_back(j == i - 1 ? A.mult[a[j]][a[j + 1]] : basis_vec(a[j]));
            }
            add(evaluate(phi, args, d), sign_of(i));
        }
        add(A.mul(cochain_at(phi, std::vector<int>(a.begin(), a.end() - 1), d), basis_vec(a[k])), sign_of(k + 1));
    }
    return out;
}

Cochain cup(const FinAlgebra& A, const Cochain& phi, const Cochain& psi) {
    const int k = phi.arity, l = psi.arity, d = A.dim;
    Cochain out = zero_cochain(A, k + l);
    for (int idx = 0; idx < static_cast<int>(out.values.size()); ++idx) {
        std::vector<int> a = digits(idx, k + l, d);
        out.values[idx] = A.mul(cochain_at(phi, std::vector<int>(a.begin(), a.begin() + k), d),
                                cochain_at(psi, std::vector<int>(a.begin() + k, a.end()), d));
    }
    return out;
}

Cochain brace(const FinAlgebra& A, const Cochain& phi, const std::vector<Cochain>& args) {
    const int k = phi.arity, n = static_cast<int>(args.size()), d = A.dim;
    int m = k;
    for (const auto& c : args) m += c.arity - 1;
    if (n > k) return zero_cochain(A, std::max(m, 0));
    if (n == 0) return phi;
    Cochain out = zero_cochain(A, m);
    // slots[j] = argument slot of phi receiving args[j], increasing
    std::vector<int> slots(n);
    std::function<void(int, int)> place = [&](int j, int from) {
        if (j == n) {
            for (int idx = 0; idx < static_cast<int>(out.values.size()); ++idx) {
                std::vector<int> a = digits(idx, m, d);
                std::vector<QVec> phi_args;
                long long exponent = 0;
                int pos = 0, next = 0;
                for (int s = 0; s < k; ++s) {
                    if (next < n && slots[next] == s) {
                        const Cochain& c = args[next];
                        exponent += static_cast<long long>(pos) * (c.arity - 1);
                        phi_args.push_back(cochain_at(c, std::vector<int>(a.begin() + pos, a.begin() + pos + c.arity), d));
                        pos += c.arity;
                        ++next;
                    } else {
                        phi_args.push_back(basis_vec(a[pos++]));
                    }
                }
                QVec v = evaluate(phi, phi_args, d);
                for (const auto& [t, x] : v) qacc(out.values[idx], t, sign_of(exponent) * x);
            }
            return;
        }
        for (int s = from; s <= k - (n - j); ++s) {
            slots[j] = s;
            place(j + 1, s + 1);
        }
    };
    place(0, 0);
    return out;
}

Cochain gerstenhaber_bracket(const FinAlgebra& A, const Cochain& phi, const Cochain& psi) {
    Cochain a = brace(A, phi, {psi}), b = brace(A, psi, {phi});
    return cochain_add(a, cochain_scale(b, -sign_of(static_cast<long long>(phi.degree()) * psi.degree())));
}

int CochainComplexData::component_dim(int k) const { return ipow(base.dim, k + 1); }

Report CochainComplexData::verify(std::uint32_t seed, int samples) const {
    Report r;
    const FinAlgebra& A = base;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ar(0, max_arity);
    const Cochain mu = multiplication_cochain(A);
    Tally dd, assoc, leibniz, dmu, prelie, inner, cupbrace;
    for (int s = 0; s < samples; ++s) {
        std::string tag = "sample " + std::to_string(s);
        Cochain f = random_cochain(A, ar(rng), rng), g = random_cochain(A, ar(rng), rng),
                h = random_cochain(A, ar(rng), rng);
        dd.note(hochschild_delta(A, hochschild_delta(A, f)).is_zero(), tag);
        assoc.note(cup(A, cup(A, f, g), h) == cup(A, f, cup(A, g, h)), tag);
        Cochain lhs = hochschild_delta(A, cup(A, f, g));
        Cochain rhs = cochain_add(cup(A, hochschild_delta(A, f), g),
                                  cochain_scale(cup(A, f, hochschild_delta(A, g)), sign_of(f.arity)));
        leibniz.note(lhs == rhs, tag);
        // (f{g}){h} - f{g{h}} = f{g,h} + (-1)^{|g||h|} f{h,g}
        Cochain pl = cochain_add(brace(A, brace(A, f, {g}), {h}), cochain_scale(brace(A, f, {brace(A, g, {h})}), -1));
        Cochain pr = cochain_add(brace(A, f, {g, h}),
                                 cochain_scale(brace(A, f, {h, g}), sign_of(static_cast<long long>(g.degree()) * h.degree())));
        prelie.note(pl == pr, tag);
        inner.note(hochschild_delta(A, f) == cochain_scale(gerstenhaber_bracket(A, mu, f), sign_of(f.degree() + 2)), tag);
        cupbrace.note(cup(A, f, g) ==
                          cochain_scale(brace(A, mu, {f, g}), sign_of(static_cast<long long>(f.arity) * (g.arity - 1))),
                      tag);
    }
    dmu.note(hochschild_delta(A, mu).is_zero(), "mu");
    dmu.note(brace(A, mu, {mu}).is_zero(), "mu{mu}");
    dd.report(r, "delta^2 = 0");
    assoc.report(r, "cup associativity");
    leibniz.report(r, "delta derivation of cup");
    dmu.report(r, "delta(mu) = 0 and mu{mu} = 0");
    prelie.report(r, "brace identity");
    inner.report(r, "delta = +-[mu, -]_G");
    cupbrace.report(r, "cup = +-mu{-,-}");
    return r;
}

// ---------------------------------------------------------------------------

TamarkinBialgebra::TamarkinBialgebra(FinAlgebra A, int max_arity, int cutoff)
    : A_(std::move(A)), K_(max_arity), F_(cutoff) {
    if (K_ < 0 || K_ > kMaxArity) throw AlgebraError("arity cap out of range");
    if (F_ < 1) throw AlgebraError("filtration cutoff must be positive");
    offset_.assign(kMaxArity + 2, 0);
    for (int a = 0; a <= kMaxArity; ++a) offset_[a + 1] = offset_[a] + ipow(A_.dim, a + 1);
    mu_ = multiplication_cochain(A_);
}

int TamarkinBialgebra::letter(int arity, int input, int output) const {
    return offset_.at(arity) + input * A_.dim + output;
}

Cochain TamarkinBialgebra::letter_cochain(int id) const {
    int a = 0;
    while (offset_[a + 1] <= id) ++a;
    int r = id - offset_[a];
    return basis_cochain(A_, a, r / A_.dim, r % A_.dim);
}

int TamarkinBialgebra::letter_degree(int id) const {
    int a = 0;
    while (offset_[a + 1] <= id) ++a;
    return a - 1;
}

int TamarkinBialgebra::word_degree(const CochainWord& w) const {
    int s = 0;
    for (int x : w) s += letter_degree(x);
    return s;
}

TcElement TamarkinBialgebra::expand(const std::vector<Cochain>& letters, const Rational& c) const {
    TcElement out;
    if (c == 0) return out;
    CochainWord w(letters.size());
    std::function<void(size_t, const Rational&)> rec = [&](size_t pos, const Rational& x) {
        if (pos == letters.size()) {
            racc(out, w, x);
            return;
        }
        const Cochain& l = letters[pos];
        for (size_t i = 0; i < l.values.size(); ++i)
            for (const auto& [k, y] : l.values[i]) {
                w[pos] = letter(l.arity, static_cast<int>(i), k);
                rec(pos + 1, x * y);
            }
    };
    rec(0, c);
    return out;
}

TcElement TamarkinBialgebra::from_cochains(const std::vector<Cochain>& word, const Rational& c) const {
    return expand(word, c);
}

TcElement TamarkinBialgebra::length_part(const TcElement& x, int len) const {
    TcElement out;
    for (const auto& [w, c] : x)
        if (static_cast<int>(w.size()) == len) out.emplace(w, c);
    return out;
}

TcElement TamarkinBialgebra::mul_words(const CochainWord& x, const CochainWord& y) const {
    auto key = std::pair{x, y};
    auto it = mul_memo_.find(key);
    if (it != mul_memo_.end()) return it->second;
    const int p = static_cast<int>(x.size()), q = static_cast<int>(y.size());
    std::vector<int> suffix(p + 1, 0);
    for (int i = p - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + letter_degree(x[i]);
    TcElement out;
    std::vector<Cochain> letters;
    // Pieces (empty, y_j) and (x_i, y_j..y_{j+r-1}); the sign moves each y-block
    // past the x letters that come after it.
    std::function<void(int, int, int)> rec = [&](int i, int j, int sign) {
        if (i == p && j == q) {
            for (const auto& [w, c] : expand(letters, Rational(sign))) racc(out, w, c);
            return;
        }
        if (j < q) {
            letters.push_back(letter_cochain(y[j]));
            rec(i, j + 1, sign * sign_of(static_cast<long long>(letter_degree(y[j])) * suffix[i]));
            letters.pop_back();
        }
        if (i < p) {
            Cochain xi = letter_cochain(x[i]);
            std::vector<Cochain> block;
            int bdeg = 0;
            for (int r = 0; j + r <= q && r <= xi.arity; ++r) {
                if (r > 0) {
                    block.push_back(letter_cochain(y[j + r - 1]));
                    bdeg += letter_degree(y[j + r - 1]);
                }
                letters.push_back(r == 0 ? xi : brace(A_, xi, block));
                rec(i + 1, j + r, sign * sign_of(static_cast<long long>(bdeg) * suffix[i + 1]));
                letters.pop_back();
            }
        }
    };
    rec(0, 0, 1);
    return mul_memo_.emplace(key, std::move(out)).first->second;
}

TcElement TamarkinBialgebra::mul(const TcElement& x, const TcElement& y) const {
    TcElement out;
    for (const auto& [a, c] : x)
        for (const auto& [b, d] : y)
            for (const auto& [w, e] : mul_words(a, b)) racc(out, w, c * d * e);
    return out;
}

TcElement TamarkinBialgebra::shuffle(const TcElement& x, const TcElement& y) const {
    TcElement out;
    for (const auto& [a, c] : x)
        for (const auto& [b, d] : y) {
            const int p = static_cast<int>(a.size()), q = static_cast<int>(b.size());
            std::vector<int> suffix(p + 1, 0);
            for (int i = p - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + letter_degree(a[i]);
            CochainWord w;
            std::function<void(int, int, int)> rec = [&](int i, int j, int sign) {
                if (i == p && j == q) {
                    racc(out, w, c * d * sign);
                    return;
                }
                if (i < p) {
                    w.push_back(a[i]);
                    rec(i + 1, j, sign);
                    w.pop_back();
                }
                if (j < q) {
                    w.push_back(b[j]);
                    rec(i, j + 1, sign * sign_of(static_cast<long long>(letter_degree(b[j])) * suffix[i]));
                    w.pop_back();
                }
            };
            rec(0, 0, 1);
        }
    return out;
}

TcPair TamarkinBialgebra::coproduct(const TcElement& x) const {
    TcPair out;
    for (const auto& [w, c] : x)
        for (size_t s = 0; s <= w.size(); ++s)
            racc(out, std::pair{CochainWord(w.begin(), w.begin() + s), CochainWord(w.begin() + s, w.end())}, c);
    return out;
}

TcElement TamarkinBialgebra::antipode(const TcElement& x) const {
    std::function<const TcElement&(const CochainWord&)> s_word = [&](const CochainWord& w) -> const TcElement& {
        auto it = antipode_memo_.find(w);
        if (it != antipode_memo_.end()) return it->second;
        TcElement out;
        if (w.empty()) {
            out.emplace(w, 1);
        } else {
            // m(S (x) id) Delta = eta eps
            for (size_t s = 0; s < w.size(); ++s) {
                TcElement head = s_word(CochainWord(w.begin(), w.begin() + s));
                TcElement tail{{CochainWord(w.begin() + s, w.end()), Rational(1)}};
                for (const auto& [v, c] : mul(head, tail)) racc(out, v, -c);
            }
        }
        return antipode_memo_.emplace(w, std::move(out)).first->second;
    };
    TcElement out;
    for (const auto& [w, c] : x)
        for (const auto& [v, d] : s_word(w)) racc(out, v, c * d);
    return out;
}

TcElement TamarkinBialgebra::differential(const TcElement& x) const {
    TcElement mu = expand({mu_}, 1);
    TcElement out = mul(mu, x);
    for (const auto& [w, c] : x)
        for (const auto& [v, d] : mul(TcElement{{w, c}}, mu)) racc(out, v, -sign_of(word_degree(w)) * d);
    return out;
}

TamarkinBialgebra tamarkin_product(const FinAlgebra& A, int max_arity, int cutoff) {
    return TamarkinBialgebra(A, max_arity, cutoff);
}

// ---------------------------------------------------------------------------

namespace {

// Sparse random cochain: a combination of a few basis cochains.
Cochain sparse_cochain(const FinAlgebra& A, int arity, std::mt19937& rng, int terms) {
    std::uniform_int_distribution<int> in(0, ipow(A.dim, arity) - 1), outd(0, A.dim - 1), coef(1, 3), sg(0, 1);
    Cochain c = zero_cochain(A, arity);
    for (int t = 0; t < terms; ++t) qacc(c.values[in(rng)], outd(rng), Rational(coef(rng) * (sg(rng) ? 1 : -1)));
    return c;
}

TcPair pair_mul(const TamarkinBialgebra& T, const TcPair& a, const TcPair& b) {
    // (m (x) m)(id (x) tau (x) id) on (a1 (x) a2) (x) (b1 (x) b2)
    TcPair out;
    for (const auto& [x, c] : a)
        for (const auto& [y, d] : b) {
            int s = sign_of(static_cast<long long>(T.word_degree(x.second)) * T.word_degree(y.first));
            TcElement l = T.mul({{x.first, 1}}, {{y.first, 1}});
            TcElement r = T.mul({{x.second, 1}}, {{y.second, 1}});
            for (const auto& [u, e] : l)
                for (const auto& [v, f] : r) racc(out, std::pair{u, v}, c * d * s * e * f);
        }
    return out;
}

}  // namespace

Report tamarkin_verify(const TamarkinBialgebra& T, std::uint32_t seed, int samples) {
    Report r;
    const FinAlgebra& A = T.algebra();
    const int F = T.cutoff(), K = T.max_arity();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ar(0, K), ar_small(0, std::min(K, 2));
    auto word = [&](int len, bool small) {
        std::vector<Cochain> ls;
        for (int i = 0; i < len; ++i) ls.push_back(sparse_cochain(A, small ? ar_small(rng) : ar(rng), rng, 2));
        return T.from_cochains(ls);
    };
    auto degree = [&](const TcElement& x) { return x.empty() ? 0 : T.word_degree(x.begin()->first); };

    // Length splits a + b <= F with a, b >= 1.
    std::vector<std::pair<int, int>> splits;
    for (int a = 1; a < F; ++a)
        for (int b = 1; a + b <= F; ++b) splits.emplace_back(a, b);

    Tally morph, assoc, comm, lead;
    for (const auto& [a, b] : splits)
        for (int s = 0; s < samples; ++s) {
            std::string tag = std::to_string(a) + "," + std::to_string(b) + " #" + std::to_string(s);
            TcElement X = word(a, false), Y = word(b, false);
            TcElement P = T.mul(X, Y);
            morph.note(T.coproduct(P) == pair_mul(T, T.coproduct(X), T.coproduct(Y)), tag);
            TcElement Q = T.mul(Y, X);
            int sg = sign_of(static_cast<long long>(degree(X)) * degree(Y));
            TcElement diff = P;
            for (const auto& [w, c] : Q) racc(diff, w, -sg * c);
            comm.note(T.length_part(diff, a + b).empty(), tag);
            lead.note(T.length_part(P, a + b) == T.shuffle(X, Y), tag);
        }
    for (int a = 1; a <= F; ++a)
        for (int b = 1; a + b <= F; ++b)
            for (int c = 1; a + b + c <= F; ++c)
                for (int s = 0; s < samples; ++s) {
                    TcElement X = word(a, false), Y = word(b, false), Z = word(c, false);
                    assoc.note(T.mul(T.mul(X, Y), Z) == T.mul(X, T.mul(Y, Z)),
                               std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
                }
    morph.report(r, "coalgebra morphism");
    assoc.report(r, "associativity");
    comm.report(r, "commutative modulo lower filtration");
    lead.report(r, "leading term is the graded shuffle");

    Tally anti, dsq, dder, dcoder, dcogen;
    for (int l = 1; l <= F; ++l)
        for (int s = 0; s < samples; ++s) {
            TcElement X = word(l, false);
            TcElement left, right;
            for (const auto& [uv, c] : T.coproduct(X)) {
                for (const auto& [w, d] : T.mul(T.antipode({{uv.first, 1}}), {{uv.second, 1}})) racc(left, w, c * d);
                for (const auto& [w, d] : T.mul({{uv.first, 1}}, T.antipode({{uv.second, 1}}))) racc(right, w, c * d);
            }
            anti.note(left.empty() && right.empty(), "length " + std::to_string(l));
        }
    for (int l = 1; l < F; ++l)
        for (int s = 0; s < samples; ++s) {
            std::string tag = "length " + std::to_string(l);
            TcElement X = word(l, true);
            dsq.note(T.differential(T.differential(X)).empty(), tag);
            TcPair lhs = T.coproduct(T.differential(X)), rhs;
            for (const auto& [uv, c] : T.coproduct(X)) {
                for (const auto& [w, d] : T.differential({{uv.first, 1}})) racc(rhs, std::pair{w, uv.second}, c * d);
                int sg = sign_of(T.word_degree(uv.first));
                for (const auto& [w, d] : T.differential({{uv.second, 1}})) racc(rhs, std::pair{uv.first, w}, sg * c * d);
            }
            dcoder.note(lhs == rhs, tag);
            if (l + 1 < F) {
                TcElement Y = word(1, true);
                TcElement dl = T.differential(T.mul(X, Y));
                TcElement dr = T.mul(T.differential(X), Y);
                for (const auto& [w, c] : T.mul(X, T.differential(Y))) racc(dr, w, sign_of(degree(X)) * c);
                dder.note(dl == dr, tag);
            }
        }
    for (int s = 0; s < samples; ++s) {
        Cochain f = sparse_cochain(A, ar_small(rng), rng, 2), g = sparse_cochain(A, ar_small(rng), rng, 2);
        TcElement d1 = T.length_part(T.differential(T.from_cochains({f})), 1);
        bool ok = d1 == T.from_cochains({hochschild_delta(A, f)}, sign_of(f.degree() + 2));
        TcElement d2 = T.length_part(T.differential(T.from_cochains({f, g})), 1);
        ok &= d2 == T.from_cochains({cup(A, f, g)}, sign_of(static_cast<long long>(f.arity) * (g.arity - 1)));
        dcogen.note(ok, "sample " + std::to_string(s));
    }
    anti.report(r, "antipode");
    dsq.report(r, "differential squares to zero");
    dcoder.report(r, "differential is a coderivation");
    dder.report(r, "differential is a derivation");
    dcogen.report(r, "differential restricts to delta and cup");
    return r;
}

Report gerstenhaber_check(const FinAlgebra& A, std::uint32_t seed, int samples, int max_arity) {
    Report r;
    TamarkinBialgebra T(A, max_arity, 2);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ar(0, max_arity);
    Tally first;
    for (int s = 0; s < samples; ++s) {
        Cochain f = random_cochain(A, ar(rng), rng), g = random_cochain(A, ar(rng), rng);
        TcElement F = T.from_cochains({f}), G = T.from_cochains({g});
        TcElement skew = T.mul(F, G);
        int sg = sign_of(static_cast<long long>(f.degree()) * g.degree());
        for (const auto& [w, c] : T.mul(G, F)) racc(skew, w, -sg * c);
        first.note(T.length_part(skew, 1) == T.from_cochains({gerstenhaber_bracket(A, f, g)}) &&
                       T.length_part(skew, 2).empty(),
                   "pair " + std::to_string(s) + " (arities " + std::to_string(f.arity) + "," +
                       std::to_string(g.arity) + ")");
    }
    first.report(r, "first-filtration antisymmetrization = Gerstenhaber bracket");

    const Cochain mu = multiplication_cochain(A);
    r.add("[mu, mu]_G = 0", gerstenhaber_bracket(A, mu, mu).is_zero());

    // 1-cochains: the bracket is the commutator of linear maps.
    Tally comm;
    for (int s = 0; s < samples; ++s) {
        Cochain f = random_cochain(A, 1, rng), g = random_cochain(A, 1, rng);
        Cochain expect = zero_cochain(A, 1);
        for (int a = 0; a < A.dim; ++a) {
            QVec fg, gf;
            for (const auto& [b, x] : g.values[a])
                for (const auto& [c, y] : f.values[b]) qacc(fg, c, x * y);
            for (const auto& [b, x] : f.values[a])
                for (const auto& [c, y] : g.values[b]) qacc(gf, c, x * y);
            for (const auto& [c, y] : gf) qacc(fg, c, -y);
            expect.values[a] = fg;
        }
        comm.note(gerstenhaber_bracket(A, f, g) == expect, "pair " + std::to_string(s));
    }
    comm.report(r, "1-cochains give the commutator");

    Tally even;
    for (int s = 0; s < samples; ++s) {
        Cochain f = random_cochain(A, 1 + 2 * (s % 2), rng);
        even.note(gerstenhaber_bracket(A, f, f).is_zero(), "arity " + std::to_string(f.arity));
    }
    even.report(r, "[phi, phi]_G = 0 for even shifted degree");
    return r;
}

}  // namespace qdq
