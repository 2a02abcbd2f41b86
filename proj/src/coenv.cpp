#include "qdq/coenv.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace qdq {

namespace {

void qacc(std::map<Word, Rational>& m, const Word& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = m.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) m.erase(it);
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

Rational factorial(int k) {
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Monomial word_monomial(const Word& w, int dim) {
    Monomial m(dim, 0);
    for (int x : w) ++m[x];
    return m;
}

int mono_length(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Counts failing items and keeps the first few for the detail string.
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

bool LieCoalgebra::homogeneous() const {
    if (triangular_order.empty()) return false;
    for (int i = 0; i < dim; ++i)
        for (const auto& [jk, c] : cobracket[i])
            if (level(jk.first) + level(jk.second) != level(i)) return false;
    return true;
}

int LieCoalgebra::grade(int i) const { return homogeneous() ? level(i) : 1; }

LieCoalgebra make_lie_coalgebra(std::vector<std::string> basis,
                                const std::vector<std::tuple<int, int, int, Rational>>& cobracket,
                                std::vector<int> levels) {
    LieCoalgebra c;
    c.dim = static_cast<int>(basis.size());
    c.basis = std::move(basis);
    c.cobracket.assign(c.dim, {});
    for (const auto& [i, j, k, x] : cobracket) {
        if (i < 0 || j < 0 || k < 0 || i >= c.dim || j >= c.dim || k >= c.dim)
            throw AlgebraError("cobracket index out of range");
        racc(c.cobracket[i], std::pair{j, k}, x);
    }
    if (!levels.empty() && static_cast<int>(levels.size()) != c.dim)
        throw AlgebraError("one level per basis vector expected");
    c.triangular_order = std::move(levels);
    return c;
}

LieCoalgebra lie_coalgebra_of(const LieBialgebra& b, std::vector<int> levels) {
    LieCoalgebra c;
    c.dim = b.dim;
    c.basis = b.basis;
    c.cobracket = b.cobracket;
    c.triangular_order = std::move(levels);
    return c;
}

LieCoalgebra two_dim_coalgebra() { return make_lie_coalgebra({"e1", "e2"}, {{1, 0, 1, 1}, {1, 1, 0, -1}}); }

LieCoalgebra heisenberg_coalgebra() {
    return make_lie_coalgebra({"x", "y", "z"}, {{2, 0, 1, 1}, {2, 1, 0, -1}}, {1, 1, 2});
}

LieBialgebra heisenberg_dual_bialgebra() {
    return make_lie_bialgebra({"x", "y", "z"}, {{0, 1, 1, -1}, {1, 0, 1, 1}, {0, 2, 2, -1}, {2, 0, 2, 1}},
                              {{2, 0, 1, 1}, {2, 1, 0, -1}});
}

Report validate_lie_coalgebra(const LieCoalgebra& c) {
    Report r;
    Tally anti, cojac, witness;
    const int n = c.dim;
    for (int i = 0; i < n; ++i) {
        QPairVec s = c.cobracket[i];
        for (const auto& [jk, x] : c.cobracket[i]) racc(s, std::pair{jk.second, jk.first}, x);
        anti.note(s.empty(), c.basis[i]);
    }
    for (int i = 0; i < n; ++i) {
        std::map<std::tuple<int, int, int>, Rational> s;
        for (const auto& [jk, x] : c.cobracket[i])
            for (const auto& [pq, y] : c.cobracket[jk.first]) {
                auto [p, q] = pq;
                int k = jk.second;
                for (auto t : {std::tuple{p, q, k}, std::tuple{q, k, p}, std::tuple{k, p, q}}) racc(s, t, x * y);
            }
        cojac.note(s.empty(), c.basis[i]);
    }
    for (int i = 0; i < n; ++i) {
        if (c.level(i) < 1) witness.note(false, c.basis[i] + " has level < 1");
        for (const auto& [jk, x] : c.cobracket[i])
            witness.note(c.level(jk.first) + c.level(jk.second) <= c.level(i),
                         c.basis[i] + " -> " + c.basis[jk.first] + " (x) " + c.basis[jk.second]);
    }
    anti.report(r, "cobracket antisymmetry");
    cojac.report(r, "coJacobi");
    witness.report(r, "conilpotency witness");
    return r;
}

int word_grade(const LieCoalgebra& c, const Word& w) {
    int g = 0;
    for (int x : w) g += c.grade(x);
    return g;
}

int monomial_grade(const LieCoalgebra& c, const Monomial& m) {
    int g = 0;
    for (int i = 0; i < c.dim; ++i) g += m[i] * c.grade(i);
    return g;
}

std::string monomial_label(const LieCoalgebra& c, const Monomial& m) {
    std::string s;
    for (int i = 0; i < c.dim; ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += ' ';
        s += c.basis[i];
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------

std::map<std::pair<Word, int>, Rational> psi_apply(const LieCoalgebra& c, const TensorVec& u) {
    std::map<std::pair<Word, int>, Rational> out;
    for (const auto& [w, a] : u) {
        const int L = static_cast<int>(w.size());
        for (int s = 0; s + 1 < L; ++s) {
            racc(out, std::pair{w, s}, a);
            Word v = w;
            std::swap(v[s], v[s + 1]);
            racc(out, std::pair{v, s}, -a);
        }
        for (int i = 0; i < L; ++i)
            for (const auto& [pq, d] : c.cobracket[w[i]]) {
                Word v(w.begin(), w.begin() + i);
                v.push_back(pq.first);
                v.push_back(pq.second);
                v.insert(v.end(), w.begin() + i + 1, w.end());
                racc(out, std::pair{v, i}, -a * d);
            }
    }
    return out;
}

std::vector<Rational> UcBasis::coordinates(const TensorVec& u) const {
    std::vector<Rational> x(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) {
        auto it = u.find(free_words[i]);
        if (it != u.end()) x[i] = it->second;
    }
    return x;
}

UcBasis uc_compute(const LieCoalgebra& c, int D) {
    if (D < 0) throw AlgebraError("negative degree");
    UcBasis U;
    U.c = c;
    U.max_degree = D;

    std::vector<Word> words;
    std::function<void(Word&, int)> grow = [&](Word& w, int g) {
        words.push_back(w);
        for (int x = 0; x < c.dim; ++x) {
            if (g + c.grade(x) > D) continue;
            w.push_back(x);
            grow(w, g + c.grade(x));
            w.pop_back();
        }
    };
    Word w0;
    grow(w0, 0);
    const int nw = static_cast<int>(words.size());

    // Rows of psi, one per output (a p q b, |a|); the rows for q p are the negatives.
    std::map<std::pair<Word, int>, std::map<int, Rational>> rows;
    for (int j = 0; j < nw; ++j)
        for (const auto& [key, x] : psi_apply(c, TensorVec{{words[j], 1}})) {
            const Word& v = key.first;
            int s = key.second;
            if (v[s] > v[s + 1]) continue;
            racc(rows[key], j, x);
        }

    // Independent blocks of unknowns.
    std::vector<int> parent(nw);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [key, row] : rows) {
        if (row.empty()) continue;
        int r0 = find(row.begin()->first);
        for (const auto& [j, x] : row) parent[find(j)] = r0;
    }
    std::map<int, std::vector<int>> blocks;
    for (int j = 0; j < nw; ++j) blocks[find(j)].push_back(j);
    std::map<int, std::vector<const std::map<int, Rational>*>> block_rows;
    for (const auto& [key, row] : rows)
        if (!row.empty()) block_rows[find(row.begin()->first)].push_back(&row);

    std::vector<std::pair<Word, TensorVec>> found;
    for (auto& [root, cols] : blocks) {
        // Non-decreasing words go last so that they end up as the free variables.
        auto rank_key = [&](int j) {
            const Word& w = words[j];
            return std::tuple{std::is_sorted(w.begin(), w.end()), w.size(), w};
        };
        std::sort(cols.begin(), cols.end(), [&](int a, int b) { return rank_key(a) < rank_key(b); });
        std::map<int, int> local;
        for (size_t k = 0; k < cols.size(); ++k) local[cols[k]] = static_cast<int>(k);
        const auto& br = block_rows[root];
        RatMatrix M(static_cast<int>(br.size()), static_cast<int>(cols.size()));
        for (size_t r = 0; r < br.size(); ++r)
            for (const auto& [j, x] : *br[r]) M(static_cast<int>(r), local.at(j)) = x;
        RatMatrix R = M;
        std::vector<int> piv = R.rref();
        std::vector<int> free_cols;
        for (int k = 0; k < static_cast<int>(cols.size()); ++k)
            if (std::find(piv.begin(), piv.end(), k) == piv.end()) free_cols.push_back(k);
        auto null = M.nullspace();
        for (size_t f = 0; f < null.size(); ++f) {
            const auto& v = null[f];
            TensorVec t;
            for (size_t k = 0; k < cols.size(); ++k)
                if (v[k] != 0) t.emplace(words[cols[k]], v[k]);
            Word free = words[cols[free_cols[f]]];
            found.emplace_back(free, std::move(t));
        }
    }
    std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
        int ga = word_grade(c, a.first), gb = word_grade(c, b.first);
        if (ga != gb) return ga < gb;
        return a.first < b.first;
    });
    for (auto& [free, t] : found) {
        int deg = 0;
        for (const auto& [w, x] : t) deg = std::max(deg, word_grade(c, w));
        U.free_words.push_back(free);
        U.elements.push_back(std::move(t));
        U.degree.push_back(deg);
    }
    return U;
}

std::map<std::pair<Word, Word>, Rational> deconcatenate(const TensorVec& x) {
    std::map<std::pair<Word, Word>, Rational> out;
    for (const auto& [w, a] : x)
        for (size_t s = 0; s <= w.size(); ++s)
            racc(out, std::pair{Word(w.begin(), w.begin() + s), Word(w.begin() + s, w.end())}, a);
    return out;
}

Report uc_verify(const UcBasis& U) {
    Report r;
    const LieCoalgebra& c = U.c;
    Tally kernel, closed;
    for (int i = 0; i < U.size(); ++i) {
        kernel.note(psi_apply(c, U.elements[i]).empty(), std::to_string(i));
        std::map<Word, TensorVec> left, right;
        for (const auto& [ab, x] : deconcatenate(U.elements[i])) {
            qacc(left[ab.second], ab.first, x);
            qacc(right[ab.first], ab.second, x);
        }
        bool ok = true;
        for (const auto& [b, v] : left) ok &= psi_apply(c, v).empty();
        for (const auto& [a, v] : right) ok &= psi_apply(c, v).empty();
        closed.note(ok, std::to_string(i));
    }
    kernel.report(r, "psi vanishes");
    closed.report(r, "closed under deconcatenation");

    bool unit = false;
    for (int i = 0; i < U.size(); ++i) unit |= U.elements[i] == TensorVec{{Word{}, 1}};
    r.add("unit in degree 0", unit);

    // p(U^c) = c
    RatMatrix P(U.size(), c.dim);
    for (int i = 0; i < U.size(); ++i)
        for (const auto& [w, x] : U.elements[i])
            if (w.size() == 1) P(i, w[0]) = x;
    int rk = P.rank();
    r.add("projection onto c is onto", rk == c.dim,
          rk == c.dim ? "" : "rank " + std::to_string(rk) + " of " + std::to_string(c.dim));
    return r;
}

// ---------------------------------------------------------------------------

TensorVec shuffle_mul(const TensorVec& x, const TensorVec& y) {
    std::map<std::pair<Word, Word>, TensorVec> memo;
    std::function<const TensorVec&(const Word&, const Word&)> sh = [&](const Word& a,
                                                                       const Word& b) -> const TensorVec& {
        auto key = std::pair{a, b};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        TensorVec out;
        if (a.empty() || b.empty()) {
            out.emplace(a.empty() ? b : a, 1);
        } else {
            for (int side = 0; side < 2; ++side) {
                const Word& first = side ? b : a;
                Word rest(first.begin() + 1, first.end());
                const TensorVec& sub = side ? sh(a, rest) : sh(rest, b);
                for (const auto& [w, c] : sub) {
                    Word v{first[0]};
                    v.insert(v.end(), w.begin(), w.end());
                    qacc(out, v, c);
                }
            }
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    TensorVec out;
    for (const auto& [a, p] : x)
        for (const auto& [b, q] : y)
            for (const auto& [w, c] : sh(a, b)) qacc(out, w, p * q * c);
    return out;
}

SymVec pbw_star(const TensorVec& u, int dim) {
    SymVec out;
    for (const auto& [w, x] : u) racc(out, word_monomial(w, dim), x / factorial(static_cast<int>(w.size())));
    return out;
}

SymVec sym_mul(const SymVec& a, const SymVec& b) {
    SymVec out;
    for (const auto& [m, x] : a)
        for (const auto& [n, y] : b) {
            Monomial s = m;
            for (size_t i = 0; i < s.size(); ++i) s[i] += n[i];
            racc(out, s, x * y);
        }
    return out;
}

namespace {

std::vector<Monomial> monomials_upto(const LieCoalgebra& c, int D) {
    std::vector<Monomial> out;
    Monomial m(c.dim, 0);
    std::function<void(int, int)> rec = [&](int i, int g) {
        if (i == c.dim) {
            out.push_back(m);
            return;
        }
        for (int e = 0; g + e * c.grade(i) <= D; ++e) {
            m[i] = e;
            rec(i + 1, g + e * c.grade(i));
        }
        m[i] = 0;
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        int ga = monomial_grade(c, a), gb = monomial_grade(c, b);
        return ga != gb ? ga < gb : a > b;
    });
    return out;
}

// Matrix of pbw_star on the basis of U (columns) against the monomials (rows).
RatMatrix pbw_matrix(const UcBasis& U, const std::vector<Monomial>& monos) {
    std::map<Monomial, int> row;
    for (size_t i = 0; i < monos.size(); ++i) row.emplace(monos[i], static_cast<int>(i));
    RatMatrix M(static_cast<int>(monos.size()), U.size());
    for (int j = 0; j < U.size(); ++j)
        for (const auto& [m, x] : pbw_star(U.elements[j], U.c.dim)) {
            auto it = row.find(m);
            if (it == row.end()) throw AlgebraError("pbw_star leaves the truncation");
            M(it->second, j) = x;
        }
    return M;
}

}  // namespace

Report pbw_star_verify(const UcBasis& U) {
    Report r;
    const LieCoalgebra& c = U.c;
    Tally bij;
    for (int d = 0; d <= U.max_degree; ++d) {
        UcBasis Ud = d == U.max_degree ? U : uc_compute(c, d);
        auto monos = monomials_upto(c, d);
        int rk = pbw_matrix(Ud, monos).rank();
        bool ok = Ud.size() == static_cast<int>(monos.size()) && rk == Ud.size();
        bij.note(ok, "degree " + std::to_string(d) + ": dim U " + std::to_string(Ud.size()) + ", dim S " +
                         std::to_string(monos.size()) + ", rank " + std::to_string(rk));
    }
    bij.report(r, "degreewise bijective");

    Tally mult, closed;
    for (int i = 0; i < U.size(); ++i)
        for (int j = i; j < U.size(); ++j) {
            if (U.degree[i] + U.degree[j] > U.max_degree) continue;
            TensorVec p = shuffle_mul(U.elements[i], U.elements[j]);
            std::string where = std::to_string(i) + "*" + std::to_string(j);
            closed.note(psi_apply(c, p).empty(), where);
            mult.note(pbw_star(p, c.dim) == sym_mul(pbw_star(U.elements[i], c.dim), pbw_star(U.elements[j], c.dim)),
                      where);
        }
    closed.report(r, "closed under shuffle");
    mult.report(r, "multiplicative");
    return r;
}

// ---------------------------------------------------------------------------

Kappa::Kappa(LieCoalgebra c, int D) : c_(std::move(c)), D_(D) {}

std::map<std::pair<int, Monomial>, Rational> Kappa::r_delta(const Word& w) const {
    std::map<std::pair<int, Monomial>, Rational> out;
    const int m = static_cast<int>(w.size());
    const Rational norm = Rational(1) / factorial(m + 1);
    Monomial base = word_monomial(w, c_.dim);
    for (int i = 0; i < m; ++i) {
        Rational weight = norm * (m - i);
        for (const auto& [pq, d] : c_.cobracket[w[i]]) {
            Monomial rest = base;
            --rest[w[i]];
            ++rest[pq.second];
            if (c_.grade(pq.first) + monomial_grade(c_, rest) > D_) continue;
            racc(out, std::pair{pq.first, rest}, weight * d);
        }
    }
    return out;
}

const std::map<std::pair<int, Monomial>, Rational>& Kappa::at(const Monomial& m, int l) {
    auto key = std::pair{m, l};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::map<std::pair<int, Monomial>, Rational> out;
    const int k = mono_length(m);
    if (k > 0 && l == -1) {
        for (int g = 0; g < c_.dim; ++g) {
            if (m[g] == 0) continue;
            Monomial rest = m;
            --rest[g];
            racc(out, std::pair{g, rest}, Rational(m[g]));
        }
    } else if (k > 0 && l >= 0 && k + l - 1 >= 0) {
        // kappa_l = R_delta (id (x) pr1) kappa^{k+l-1}, each step using kappa_{<= l-1}
        for (const auto& [wm, x] : iterate(m, k + l - 1, l - 1, 1)) {
            Word w = wm.first;
            for (int g = 0; g < c_.dim; ++g)
                if (wm.second[g] == 1) w.push_back(g);
            for (const auto& [gm, y] : r_delta(w)) racc(out, gm, x * y);
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

std::map<std::pair<Word, Monomial>, Rational> Kappa::iterate(const Monomial& m, int j, int lmax, int final_degree) {
    std::map<std::pair<Word, Monomial>, Rational> states{{{Word{}, m}, Rational(1)}};
    for (int step = 0; step < j; ++step) {
        const int remaining = j - step - 1;
        std::map<std::pair<Word, Monomial>, Rational> next;
        for (const auto& [wm, x] : states) {
            const int k = mono_length(wm.second);
            const int g0 = word_grade(c_, wm.first);
            for (int l = -1; l <= lmax; ++l) {
                if (final_degree >= 0 && k + l - remaining > final_degree) break;
                for (const auto& [gm, y] : at(wm.second, l)) {
                    if (g0 + c_.grade(gm.first) + monomial_grade(c_, gm.second) > D_) continue;
                    Word w = wm.first;
                    w.push_back(gm.first);
                    racc(next, std::pair{w, gm.second}, x * y);
                }
            }
        }
        states = std::move(next);
    }
    if (final_degree >= 0)
        for (auto it = states.begin(); it != states.end();)
            it = mono_length(it->first.second) == final_degree ? std::next(it) : states.erase(it);
    return states;
}

SCoproduct::SCoproduct(const LieCoalgebra& c, int D) : kappa_(c, D), D_(D), monos_(monomials_upto(c, D)) {}

const SymPairVec& SCoproduct::at(const Monomial& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    const LieCoalgebra& c = kappa_.coalgebra();
    SymPairVec out;
    std::map<std::pair<Word, Monomial>, Rational> states{{{Word{}, m}, Rational(1)}};
    for (int l = 0; !states.empty(); ++l) {
        Rational inv = Rational(1) / factorial(l);
        for (const auto& [wm, x] : states) racc(out, std::pair{word_monomial(wm.first, c.dim), wm.second}, x * inv);
        std::map<std::pair<Word, Monomial>, Rational> next;
        for (const auto& [wm, x] : states) {
            const int g0 = word_grade(c, wm.first);
            for (int l2 = -1; l2 <= D_; ++l2)
                for (const auto& [gm, y] : kappa_.at(wm.second, l2)) {
                    if (g0 + c.grade(gm.first) + monomial_grade(c, gm.second) > D_) continue;
                    Word w = wm.first;
                    w.push_back(gm.first);
                    racc(next, std::pair{w, gm.second}, x * y);
                }
        }
        states = std::move(next);
    }
    return memo_.emplace(m, std::move(out)).first->second;
}

SymPairVec SCoproduct::apply(const SymVec& v) {
    SymPairVec out;
    for (const auto& [m, x] : v)
        for (const auto& [ab, y] : at(m)) racc(out, ab, x * y);
    return out;
}

Report s_coproduct_verify(SCoproduct& S) {
    Report r;
    const LieCoalgebra& c = S.coalgebra();
    const int D = S.max_degree();
    const Monomial one(c.dim, 0);
    Tally left, right, coassoc, first;
    using Triple = std::tuple<Monomial, Monomial, Monomial>;
    for (const Monomial& m : S.monomials()) {
        const SymPairVec d = S.at(m);
        SymVec l, rr;
        for (const auto& [ab, x] : d) {
            if (ab.first == one) racc(l, ab.second, x);
            if (ab.second == one) racc(rr, ab.first, x);
        }
        const std::string name = monomial_label(c, m);
        left.note(l == SymVec{{m, 1}}, name);
        right.note(rr == SymVec{{m, 1}}, name);

        std::map<Triple, Rational> lhs, rhs;
        for (const auto& [ab, x] : d) {
            const int ga = monomial_grade(c, ab.first), gb = monomial_grade(c, ab.second);
            for (const auto& [pq, y] : S.at(ab.first))
                if (monomial_grade(c, pq.first) + monomial_grade(c, pq.second) + gb <= D)
                    racc(lhs, Triple{pq.first, pq.second, ab.second}, x * y);
            for (const auto& [pq, y] : S.at(ab.second))
                if (ga + monomial_grade(c, pq.first) + monomial_grade(c, pq.second) <= D)
                    racc(rhs, Triple{ab.first, pq.first, pq.second}, x * y);
        }
        coassoc.note(lhs == rhs, name);
    }
    for (int i = 0; i < c.dim; ++i) {
        Monomial m = one;
        m[i] = 1;
        if (monomial_grade(c, m) > D) continue;
        QPairVec got;
        for (const auto& [ab, x] : S.at(m)) {
            if (mono_length(ab.first) != 1 || mono_length(ab.second) != 1) continue;
            int p = static_cast<int>(std::find(ab.first.begin(), ab.first.end(), 1) - ab.first.begin());
            int q = static_cast<int>(std::find(ab.second.begin(), ab.second.end(), 1) - ab.second.begin());
            racc(got, std::pair{p, q}, x);
            racc(got, std::pair{q, p}, -x);
        }
        first.note(got == c.cobracket[i], c.basis[i]);
    }
    left.report(r, "left counit");
    right.report(r, "right counit");
    coassoc.report(r, "coassociativity");
    first.report(r, "first order cobracket");
    return r;
}

// ---------------------------------------------------------------------------

UcHopf uc_hopf(const LieCoalgebra& c, int D, int N) {
    const int W = D + N - 1;
    UcHopf out;
    out.basis = uc_compute(c, W);
    const UcBasis& U = out.basis;
    const int n = U.size();

    std::vector<std::string> labels;
    std::map<std::string, int> seen;
    for (int i = 0; i < n; ++i) {
        std::string s = monomial_label(c, word_monomial(U.free_words[i], c.dim));
        int k = seen[s]++;
        labels.push_back(k ? s + "#" + std::to_string(k) : s);
    }
    HModule C(N, labels, U.degree);
    HModule CC = tensor_module(C, C);
    HModule K = ground_module(N);
    auto series = [&](const Rational& x) { return TruncSeries(N, x); };
    auto to_svec = [&](const TensorVec& t) {
        SVec v;
        std::vector<Rational> x = U.coordinates(t);
        for (int i = 0; i < n; ++i)
            if (x[i] != 0) v.emplace(i, series(x[i]));
        return v;
    };

    HopfData& H = out.hopf;
    H.carrier = C;
    H.unit = -1;
    for (int i = 0; i < n; ++i)
        if (U.free_words[i].empty()) H.unit = i;
    if (H.unit < 0) throw AlgebraError("U^c has no unit");
    for (int i = 0; i < n; ++i)
        if (i != H.unit) H.aug_generators.push_back(i);

    H.mu = HMap(CC, C);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (U.degree[p] + U.degree[q] <= W) H.mu.column(p * n + q) = to_svec(shuffle_mul(U.elements[p], U.elements[q]));
    H.eta = HMap(K, C);
    H.eta.set_entry(H.unit, 0, series(1));
    H.epsilon = HMap(C, K);
    H.Delta = HMap(C, CC);
    H.S = HMap(C, C);
    std::map<Word, int> free_index;
    for (int i = 0; i < n; ++i) free_index.emplace(U.free_words[i], i);
    for (int p = 0; p < n; ++p) {
        const TensorVec& u = U.elements[p];
        auto e = u.find(Word{});
        if (e != u.end()) H.epsilon.set_entry(0, p, series(e->second));
        for (const auto& [ab, x] : deconcatenate(u)) {
            auto a = free_index.find(ab.first), b = free_index.find(ab.second);
            if (a == free_index.end() || b == free_index.end()) continue;
            H.Delta.set_entry(a->second * n + b->second, p, series(x));
        }
        TensorVec s;
        for (const auto& [w, x] : u) qacc(s, Word(w.rbegin(), w.rend()), w.size() % 2 ? Rational(-x) : x);
        H.S.column(p) = to_svec(s);
    }
    H.S_inv = H.S;
    H.set_budget(D);
    return out;
}

CoPrimResult coprim(const HopfData& H, const HMap* bracket) {
    const int n = H.rank(), B = H.budget();
    const HModule& C = H.carrier;
    std::vector<int> low;
    for (int i = 0; i < n; ++i)
        if (i != H.unit && C.degree(i) <= B) low.push_back(i);
    auto eps = [&](int i) { return H.epsilon.entry(0, i)[0]; };
    // Coordinates on all of C of e_i - eps(e_i) 1.
    auto aug = [&](int i) {
        std::vector<Rational> v(n);
        v[i] += 1;
        v[H.unit] -= eps(i);
        return v;
    };

    // Generators of (ker eps)^2 within the budget.
    std::vector<std::vector<Rational>> sq;
    for (int a : low)
        for (int b : low) {
            if (C.degree(a) + C.degree(b) > B) continue;
            std::vector<Rational> va = aug(a), vb = aug(b), prod(n);
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    if (va[p] == 0 || vb[q] == 0) continue;
                    for (const auto& [k, x] : H.mu.column(p * n + q)) prod[k] += va[p] * vb[q] * x[0];
                }
            sq.push_back(prod);
        }
    auto rank_of = [&](const std::vector<std::vector<Rational>>& cols) {
        RatMatrix M(n, static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i < n; ++i) M(i, static_cast<int>(j)) = cols[j][i];
        return M.rank();
    };
    std::vector<std::vector<Rational>> span = sq;
    int rk = rank_of(span);
    std::vector<int> reps;
    std::vector<int> sorted = low;
    std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) { return C.degree(a) < C.degree(b); });
    for (int i : sorted) {
        span.push_back(aug(i));
        int r2 = rank_of(span);
        if (r2 > rk) {
            reps.push_back(i);
            rk = r2;
        } else {
            span.pop_back();
        }
    }
    const int m = static_cast<int>(reps.size());
    // Projection: solve v = sum sq + sum reps, keep the rep coordinates.
    RatMatrix A(n, static_cast<int>(span.size()));
    for (size_t j = 0; j < span.size(); ++j)
        for (int i = 0; i < n; ++i) A(i, static_cast<int>(j)) = span[j][i];
    const int off = static_cast<int>(span.size()) - m;
    std::vector<QVec> pi(n);
    for (int i = 0; i < n; ++i) {
        if (i == H.unit) continue;
        if (C.degree(i) > B) continue;
        auto x = solve_linear(A, aug(i));
        if (!x) throw AlgebraError("coprim: basis vector outside the computed span");
        for (int k = 0; k < m; ++k)
            if ((*x)[off + k] != 0) pi[i][k] = (*x)[off + k];
    }

    CoPrimResult out;
    LieBialgebra& L = out.lie;
    L.dim = m;
    L.bracket.assign(m, std::vector<QVec>(m));
    L.cobracket.assign(m, {});
    for (int k = 0; k < m; ++k) {
        L.basis.push_back(C.labels[reps[k]]);
        L.degrees.push_back(std::max(1, C.degree(reps[k])));
        out.representatives.push_back(SVec{{reps[k], TruncSeries(H.order(), 1)}});
    }
    for (int k = 0; k < m; ++k) {
        for (const auto& [ab, x] : H.Delta.column(reps[k])) {
            int a = ab / n, b = ab % n;
            for (const auto& [p, u] : pi[a])
                for (const auto& [q, v] : pi[b]) {
                    racc(L.cobracket[k], std::pair{p, q}, x[0] * u * v);
                    racc(L.cobracket[k], std::pair{q, p}, -x[0] * u * v);
                }
        }
    }
    if (bracket) {
        bool divisible = true;
        for (int a : reps)
            for (int b : reps)
                for (const auto& [i, x] : bracket->column(a * n + b)) divisible &= x[0] == 0;
        const int power = divisible && H.order() > 1 ? 1 : 0;
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
                for (const auto& [i, x] : bracket->column(reps[k] * n + reps[l]))
                    for (const auto& [p, u] : pi[i]) racc(L.bracket[k][l], p, x[power] * u);
    }
    return out;
}

UcPoisson poisson_from_bialgebra(const LieBialgebra& b, const std::vector<int>& levels, int D, int N) {
    LieCoalgebra c = lie_coalgebra_of(b, levels);
    UcHopf H = uc_hopf(c, D, N);
    UcPoisson out;
    out.basis = H.basis;
    const UcBasis& U = out.basis;
    const int n = U.size(), W = D + N - 1;

    auto monos = monomials_upto(c, W);
    RatMatrix M = pbw_matrix(U, monos);
    if (M.rank() != n || n != static_cast<int>(monos.size()))
        throw AlgebraError("pbw_star is not invertible; the coalgebra is not conilpotent");
    std::map<Monomial, std::vector<Rational>> preimage;
    for (size_t i = 0; i < monos.size(); ++i) {
        std::vector<Rational> rhs(monos.size());
        rhs[i] = 1;
        preimage.emplace(monos[i], *solve_linear(M, rhs));
    }

    PoissonHopfData& P = out.poisson;
    P.hopf = H.hopf;
    P.coquantizable = true;
    const HModule& C = P.hopf.carrier;
    P.bracket = HMap(tensor_module(C, C), C, D);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (U.degree[p] + U.degree[q] > W) continue;
            SymVec s;
            for (const auto& [m1, x] : pbw_star(U.elements[p], c.dim))
                for (const auto& [m2, y] : pbw_star(U.elements[q], c.dim))
                    for (int i = 0; i < c.dim; ++i)
                        for (int j = 0; j < c.dim; ++j) {
                            if (m1[i] == 0 || m2[j] == 0) continue;
                            for (const auto& [k, z] : b.bracket[i][j]) {
                                Monomial r = m1;
                                --r[i];
                                for (int t = 0; t < c.dim; ++t) r[t] += m2[t];
                                --r[j];
                                ++r[k];
                                racc(s, r, x * y * z * m1[i] * m2[j]);
                            }
                        }
            SVec col;
            for (const auto& [m, x] : s) {
                auto it = preimage.find(m);
                if (it == preimage.end()) continue;
                for (int k = 0; k < n; ++k)
                    if (it->second[k] != 0) add_term(col, k, TruncSeries::monomial(N, 1, x * it->second[k]));
            }
            P.bracket.column(p * n + q) = col;
        }
    return out;
}

}  // namespace qdq
