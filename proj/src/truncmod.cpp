#include "qdq/truncmod.hpp"

#include <algorithm>
#include <sstream>

namespace qdq {

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw AlgebraError("malformed rational: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

TruncSeries::TruncSeries(int order) : c_(order) {
    if (order < 1) throw AlgebraError("truncation order must be positive");
}

TruncSeries::TruncSeries(int order, const Rational& constant) : TruncSeries(order) { c_[0] = constant; }

TruncSeries::TruncSeries(int order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (order < 1 || static_cast<int>(c_.size()) != order)
        throw AlgebraError("coefficient count does not match order");
    for (auto& x : c_) x.canonicalize();
}

TruncSeries TruncSeries::monomial(int order, int power, const Rational& c) {
    TruncSeries s(order);
    if (power < order) s.c_[power] = c;
    return s;
}

bool TruncSeries::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

int TruncSeries::valuation() const {
    for (int k = 0; k < order(); ++k)
        if (sgn(c_[k]) != 0) return k;
    return order();
}

static void check_same(const TruncSeries& a, const TruncSeries& b) {
    if (a.order() != b.order()) throw AlgebraError("truncation order mismatch");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    check_same(*this, o);
    for (int k = 0; k < order(); ++k) c_[k] += o.c_[k];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    check_same(*this, o);
    for (int k = 0; k < order(); ++k) c_[k] -= o.c_[k];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

TruncSeries TruncSeries::shifted(int k) const {
    TruncSeries r(order());
    for (int i = 0; i + k < order(); ++i) r.c_[i + k] = c_[i];
    return r;
}

TruncSeries TruncSeries::unshifted(int k) const {
    for (int i = 0; i < std::min(k, order()); ++i)
        if (sgn(c_[i]) != 0) throw AlgebraError("series not divisible by h^k");
    TruncSeries r(order());
    for (int i = k; i < order(); ++i) r.c_[i - k] = c_[i];
    return r;
}

TruncSeries TruncSeries::reduced(int k) const {
    TruncSeries r = *this;
    for (int i = k; i < order(); ++i) r.c_[i] = 0;
    return r;
}

std::string TruncSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < order(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[k].get_str();
        if (k == 1) os << "h";
        if (k > 1) os << "h^" << k;
    }
    if (first) os << "0";
    return os.str();
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    check_same(a, b);
    const int n = a.order();
    TruncSeries r(n);
    for (int i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; i + j < n; ++j)
            if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
    }
    return r;
}

TruncSeries series_invert(const TruncSeries& a) {
    if (sgn(a[0]) == 0) throw AlgebraError("series_invert: non-unit (constant term 0)");
    const int n = a.order();
    TruncSeries r(n);
    Rational inv0 = 1 / a[0];
    r[0] = inv0;
    for (int k = 1; k < n; ++k) {
        Rational s = 0;
        for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
        r[k] = -s * inv0;
    }
    return r;
}

TruncSeries series_exp(const TruncSeries& a) {
    if (sgn(a[0]) != 0) throw AlgebraError("series_exp: constant term must vanish");
    const int n = a.order();
    TruncSeries result(n, Rational(1));
    TruncSeries power(n, Rational(1));
    Rational fact = 1;
    for (int k = 1; k < n; ++k) {
        power = series_mul(power, a);
        fact *= k;
        result += power * (Rational(1) / fact);
    }
    return result;
}

TruncSeries series_log(const TruncSeries& a) {
    if (a[0] != 1) throw AlgebraError("series_log: constant term must be 1");
    const int n = a.order();
    TruncSeries x = a;
    x[0] = 0;
    TruncSeries result(n);
    TruncSeries power(n, Rational(1));
    for (int k = 1; k < n; ++k) {
        power = series_mul(power, x);
        result += power * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return result;
}

std::uint64_t key_make(const std::vector<int>& idx) {
    if (static_cast<int>(idx.size()) > kMaxSlots) throw AlgebraError("too many tensor slots");
    std::uint64_t k = 0;
    for (size_t s = 0; s < idx.size(); ++s) {
        if (idx[s] < 0 || static_cast<std::uint64_t>(idx[s]) > kSlotMask)
            throw AlgebraError("basis index exceeds packed key range");
        k = key_set(k, static_cast<int>(s), idx[s]);
    }
    return k;
}

std::vector<int> key_split(std::uint64_t k, int slots) {
    std::vector<int> r(slots);
    for (int s = 0; s < slots; ++s) r[s] = key_get(k, s);
    return r;
}

// ---------------------------------------------------------------------------

HModule::HModule(int order_, std::vector<std::string> labels_, std::vector<int> degrees_)
    : order(order_), labels(std::move(labels_)), degrees(std::move(degrees_)) {
    if (!degrees.empty() && degrees.size() != labels.size())
        throw AlgebraError("degree tags do not match labels");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw AlgebraError("duplicate basis label");
}

int HModule::index_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw AlgebraError("unknown basis label: " + label);
    return static_cast<int>(it - labels.begin());
}

HModule tensor_module(const HModule& a, const HModule& b) {
    if (a.order != b.order) throw AlgebraError("tensor of modules with different orders");
    std::vector<std::string> labels;
    std::vector<int> degrees;
    bool tagged = !a.degrees.empty() || !b.degrees.empty();
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) {
            labels.push_back(a.labels[i] + "|" + b.labels[j]);
            if (tagged) degrees.push_back(std::max(a.degree(i), 0) + std::max(b.degree(j), 0));
        }
    return HModule(a.order, std::move(labels), std::move(degrees));
}

HMap::HMap(HModule dom, HModule cod, int validity)
    : dom_(std::move(dom)), cod_(std::move(cod)), cols_(dom_.rank()), validity_(validity) {
    if (dom_.order != cod_.order) throw AlgebraError("HMap: domain/codomain orders differ");
}

HMap HMap::identity(const HModule& m) {
    HMap id(m, m);
    for (int i = 0; i < m.rank(); ++i) id.cols_[i][i] = TruncSeries(m.order, Rational(1));
    return id;
}

HMap HMap::zero(const HModule& dom, const HModule& cod) { return HMap(dom, cod); }

void HMap::set_entry(int row, int col, const TruncSeries& v) {
    if (row < 0 || row >= cod_.rank() || col < 0 || col >= dom_.rank())
        throw AlgebraError("HMap entry outside declared bases");
    if (v.is_zero())
        cols_[col].erase(row);
    else
        cols_[col][row] = v;
}

TruncSeries HMap::entry(int row, int col) const {
    auto it = cols_[col].find(row);
    return it == cols_[col].end() ? TruncSeries(dom_.order) : it->second;
}

std::vector<std::tuple<int, int, TruncSeries>> HMap::triplets() const {
    std::vector<std::tuple<int, int, TruncSeries>> out;
    for (int j = 0; j < dom_.rank(); ++j)
        for (const auto& [i, v] : cols_[j]) out.emplace_back(i, j, v);
    return out;
}

int weight_of(const HModule& m, const SVec& v) {
    int w = INT_MIN;
    for (const auto& [i, c] : v) {
        int d = std::max(m.degree(i), 0);
        int val = c.valuation();
        if (val < c.order()) w = std::max(w, d - val);
    }
    return w;
}

SVec HMap::apply(const SVec& v) const {
    if (validity_ != kUnbounded && weight_of(dom_, v) > validity_)
        throw BudgetError("HMap applied past its validity degree");
    SVec out;
    for (const auto& [j, c] : v) {
        if (j < 0 || j >= dom_.rank()) throw AlgebraError("vector index outside domain");
        for (const auto& [i, e] : cols_[j]) add_term(out, i, series_mul(e, c));
    }
    return out;
}

bool HMap::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

bool HMap::operator==(const HMap& o) const {
    return dom_.same_basis(o.dom_) && cod_.same_basis(o.cod_) && cols_ == o.cols_;
}

static SVec basis_vec(int order, int j) {
    SVec v;
    v[j] = TruncSeries(order, Rational(1));
    return v;
}

HMap hmap_compose(const HMap& g, const HMap& f) {
    if (!g.domain().same_basis(f.codomain())) throw AlgebraError("hmap_compose: basis mismatch");
    int validity = std::min(f.validity_degree(), g.validity_degree());
    HMap r(f.domain(), g.codomain(), validity);
    for (int j = 0; j < f.domain().rank(); ++j) {
        // Columns above the budget are computed from h^e e_j, which has weight <= budget,
        // and divided back; they are then exact mod h^(N-e).
        int e = validity == kUnbounded ? 0 : std::max(0, std::max(f.domain().degree(j), 0) - validity);
        if (e >= f.domain().order) continue;
        SVec img = f.apply(shifted(basis_vec(f.domain().order, j), e));
        SVec out = g.apply(img);
        for (auto& [i, x] : out) add_term(r.column(j), i, x.unshifted(e));
    }
    return r;
}

HMap hmap_tensor(const HMap& f, const HMap& g) {
    if (f.domain().order != g.domain().order) throw AlgebraError("hmap_tensor: order mismatch");
    HModule dom = tensor_module(f.domain(), g.domain());
    HModule cod = tensor_module(f.codomain(), g.codomain());
    HMap r(dom, cod, std::min(f.validity_degree(), g.validity_degree()));
    const int gd = g.domain().rank(), gc = g.codomain().rank();
    for (int a = 0; a < f.domain().rank(); ++a)
        for (int b = 0; b < gd; ++b) {
            SVec& col = r.column(a * gd + b);
            for (const auto& [i, x] : f.column(a))
                for (const auto& [k, y] : g.column(b)) add_term(col, i * gc + k, series_mul(x, y));
        }
    return r;
}

HMap hmap_add(const HMap& f, const HMap& g) {
    if (!f.domain().same_basis(g.domain()) || !f.codomain().same_basis(g.codomain()))
        throw AlgebraError("hmap_add: basis mismatch");
    HMap r = f;
    r.set_validity_degree(std::min(f.validity_degree(), g.validity_degree()));
    for (int j = 0; j < g.domain().rank(); ++j)
        for (const auto& [i, x] : g.column(j)) add_term(r.column(j), i, x);
    return r;
}

HMap hmap_scale(const HMap& f, const Rational& s) {
    HMap r(f.domain(), f.codomain(), f.validity_degree());
    for (int j = 0; j < f.domain().rank(); ++j) r.column(j) = scaled(f.column(j), s);
    return r;
}

HMap hmap_neg(const HMap& f) { return hmap_scale(f, -1); }

static HMap endo_remainder(const HMap& f, const char* who) {
    if (!f.domain().same_basis(f.codomain())) throw AlgebraError(std::string(who) + ": not an endomorphism");
    HMap r = hmap_add(f, hmap_neg(HMap::identity(f.domain())));
    const int v = f.validity_degree();
    for (int j = 0; j < r.domain().rank(); ++j) {
        // Columns too far above the validity degree carry no information.
        if (v != kUnbounded && std::max(f.domain().degree(j), 0) - v >= f.domain().order) r.column(j).clear();
        for (const auto& [i, x] : r.column(j))
            if (sgn(x[0]) != 0) throw AlgebraError(std::string(who) + ": f - id is not h-divisible");
    }
    return r;
}

static void check_divisible(const HMap& f, const char* who) {
    for (int j = 0; j < f.domain().rank(); ++j)
        for (const auto& [i, x] : f.column(j))
            if (sgn(x[0]) != 0) throw AlgebraError(std::string(who) + ": argument is not h-divisible");
}

HMap neumann_invert(const HMap& f) {
    HMap r = endo_remainder(f, "neumann_invert");
    HMap minus_r = hmap_neg(r);
    HMap sum = HMap::identity(f.domain());
    HMap power = HMap::identity(f.domain());
    for (int k = 1; k < f.domain().order; ++k) {
        power = hmap_compose(minus_r, power);
        sum = hmap_add(sum, power);
    }
    sum.set_validity_degree(f.validity_degree());
    return sum;
}

HMap endo_log(const HMap& f) {
    HMap r = endo_remainder(f, "endo_log");
    HMap sum = HMap::zero(f.domain(), f.domain());
    HMap power = HMap::identity(f.domain());
    for (int k = 1; k < f.domain().order; ++k) {
        power = hmap_compose(r, power);
        sum = hmap_add(sum, hmap_scale(power, Rational(k % 2 == 1 ? 1 : -1, k)));
    }
    sum.set_validity_degree(f.validity_degree());
    return sum;
}

HMap endo_exp(const HMap& f) {
    if (!f.domain().same_basis(f.codomain())) throw AlgebraError("endo_exp: not an endomorphism");
    check_divisible(f, "endo_exp");
    HMap sum = HMap::identity(f.domain());
    HMap power = HMap::identity(f.domain());
    Rational fact = 1;
    for (int k = 1; k < f.domain().order; ++k) {
        power = hmap_compose(f, power);
        fact *= k;
        sum = hmap_add(sum, hmap_scale(power, 1 / fact));
    }
    sum.set_validity_degree(f.validity_degree());
    return sum;
}

// ---------------------------------------------------------------------------
// Diagonalisation over the local ring Q[h]/(h^N): every nonzero entry is a
// unit times h^k, so pivoting on minimal valuation gives P A Q = diag(h^k_i).

namespace {

struct SmithForm {
    int n = 0, m = 0, order = 1;
    std::vector<std::vector<TruncSeries>> D, P, Pinv, Q;
    std::vector<int> exps;  // valuation of each diagonal pivot, in pivot order
};

std::vector<std::vector<TruncSeries>> ident(int n, int order) {
    std::vector<std::vector<TruncSeries>> I(n, std::vector<TruncSeries>(n, TruncSeries(order)));
    for (int i = 0; i < n; ++i) I[i][i] = TruncSeries(order, Rational(1));
    return I;
}

// q with p*q = h^v mod h^N, where v = valuation(p).
TruncSeries pivot_factor(const TruncSeries& x, const TruncSeries& p) {
    const int v = p.valuation();
    TruncSeries unit = p.unshifted(v);
    TruncSeries w = x.unshifted(v);
    return series_mul(w, series_invert(unit));
}

SmithForm smith(std::vector<std::vector<TruncSeries>> A, int n, int m, int order) {
    SmithForm S;
    S.n = n;
    S.m = m;
    S.order = order;
    S.P = ident(n, order);
    S.Pinv = ident(n, order);
    S.Q = ident(m, order);
    for (int s = 0; s < std::min(n, m); ++s) {
        int bi = -1, bj = -1, bv = order;
        for (int i = s; i < n; ++i)
            for (int j = s; j < m; ++j) {
                int v = A[i][j].valuation();
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        std::swap(A[s], A[bi]);
        std::swap(S.P[s], S.P[bi]);
        for (int r = 0; r < n; ++r) std::swap(S.Pinv[r][s], S.Pinv[r][bi]);
        for (int r = 0; r < n; ++r) std::swap(A[r][s], A[r][bj]);
        for (int r = 0; r < m; ++r) std::swap(S.Q[r][s], S.Q[r][bj]);
        const TruncSeries p = A[s][s];
        for (int r = 0; r < n; ++r) {
            if (r == s || A[r][s].is_zero()) continue;
            TruncSeries f = pivot_factor(A[r][s], p);
            for (int c = 0; c < m; ++c) A[r][c] -= series_mul(f, A[s][c]);
            for (int c = 0; c < n; ++c) S.P[r][c] -= series_mul(f, S.P[s][c]);
            for (int c = 0; c < n; ++c) S.Pinv[c][s] += series_mul(f, S.Pinv[c][r]);
        }
        for (int c = 0; c < m; ++c) {
            if (c == s || A[s][c].is_zero()) continue;
            TruncSeries f = pivot_factor(A[s][c], p);
            for (int r = 0; r < n; ++r) A[r][c] -= series_mul(f, A[r][s]);
            for (int r = 0; r < m; ++r) S.Q[r][c] -= series_mul(f, S.Q[r][s]);
        }
        S.exps.push_back(bv);
    }
    S.D = std::move(A);
    return S;
}

}  // namespace

SVec QuotientResult::project(const SVec& v) const {
    SVec out;
    for (const auto& [i, x] : projection.apply(v)) add_term(out, i, x.reduced(torsion[i]));
    return out;
}

QuotientResult submodule_quotient(const HModule& V, const std::vector<SVec>& gens) {
    const int n = V.rank(), m = static_cast<int>(gens.size()), N = V.order;
    std::vector<std::vector<TruncSeries>> A(n, std::vector<TruncSeries>(m, TruncSeries(N)));
    for (int j = 0; j < m; ++j)
        for (const auto& [i, x] : gens[j]) {
            if (i < 0 || i >= n) throw AlgebraError("generator outside module");
            A[i][j] = x;
        }
    SmithForm S = smith(A, n, m, N);
    const int r = static_cast<int>(S.exps.size());

    std::vector<int> kept, torsion;
    for (int s = 0; s < n; ++s) {
        int e = s < r ? S.exps[s] : N;
        if (e == 0) continue;
        kept.push_back(s);
        torsion.push_back(e);
    }
    std::vector<std::string> labels;
    std::vector<int> degrees;
    bool identity_like = (r == 0);
    for (size_t q = 0; q < kept.size(); ++q) {
        labels.push_back(identity_like ? V.labels[kept[q]] : "q" + std::to_string(q));
        if (identity_like && !V.degrees.empty()) degrees.push_back(V.degrees[kept[q]]);
    }
    QuotientResult res;
    res.quotient = HModule(N, labels, degrees);
    res.torsion = torsion;
    res.projection = HMap(V, res.quotient);
    for (size_t q = 0; q < kept.size(); ++q)
        for (int c = 0; c < n; ++c) {
            TruncSeries x = S.P[kept[q]][c].reduced(torsion[q]);
            if (!x.is_zero()) res.projection.set_entry(static_cast<int>(q), c, x);
        }
    bool free = std::all_of(torsion.begin(), torsion.end(), [&](int e) { return e == N; });
    if (free) {
        HMap sec(res.quotient, V);
        for (size_t q = 0; q < kept.size(); ++q)
            for (int row = 0; row < n; ++row) {
                const TruncSeries& x = S.Pinv[row][kept[q]];
                if (!x.is_zero()) sec.set_entry(row, static_cast<int>(q), x);
            }
        res.section = std::move(sec);
    }
    return res;
}

std::vector<SVec> hmap_kernel(const HMap& f) {
    const int n = f.codomain().rank(), m = f.domain().rank(), N = f.domain().order;
    std::vector<std::vector<TruncSeries>> A(n, std::vector<TruncSeries>(m, TruncSeries(N)));
    for (int j = 0; j < m; ++j)
        for (const auto& [i, x] : f.column(j)) A[i][j] = x;
    SmithForm S = smith(A, n, m, N);
    const int r = static_cast<int>(S.exps.size());
    std::vector<SVec> gens;
    for (int s = 0; s < m; ++s) {
        int shift = 0;
        if (s < r) {
            if (S.exps[s] == 0) continue;
            shift = N - S.exps[s];
        }
        SVec g;
        for (int row = 0; row < m; ++row) add_term(g, row, S.Q[row][s].shifted(shift));
        if (!g.empty()) gens.push_back(std::move(g));
    }
    return gens;
}

// ---------------------------------------------------------------------------

std::vector<int> RatMatrix::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int p = -1;
        for (int i = row; i < r_; ++i)
            if (sgn((*this)(i, col)) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
        Rational inv = 1 / (*this)(row, col);
        for (int j = col; j < c_; ++j) (*this)(row, j) *= inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || sgn((*this)(i, col)) == 0) continue;
            Rational f = (*this)(i, col);
            for (int j = col; j < c_; ++j)
                if (sgn((*this)(row, j)) != 0) (*this)(i, j) -= f * (*this)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int RatMatrix::rank() const {
    RatMatrix t = *this;
    return static_cast<int>(t.rref().size());
}

std::vector<std::vector<Rational>> RatMatrix::nullspace() const {
    RatMatrix t = *this;
    std::vector<int> piv = t.rref();
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < c_; ++free) {
        if (is_piv[free]) continue;
        std::vector<Rational> v(c_);
        v[free] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -t(static_cast<int>(k), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational RatMatrix::determinant() const {
    if (r_ != c_) throw AlgebraError("determinant of non-square matrix");
    RatMatrix t = *this;
    Rational det = 1;
    for (int col = 0; col < c_; ++col) {
        int p = -1;
        for (int i = col; i < r_; ++i)
            if (sgn(t(i, col)) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != col) {
            for (int j = 0; j < c_; ++j) std::swap(t(p, j), t(col, j));
            det = -det;
        }
        det *= t(col, col);
        for (int i = col + 1; i < r_; ++i) {
            if (sgn(t(i, col)) == 0) continue;
            Rational f = t(i, col) / t(col, col);
            for (int j = col; j < c_; ++j) t(i, j) -= f * t(col, j);
        }
    }
    return det;
}

std::optional<std::vector<Rational>> solve_linear(const RatMatrix& A, const std::vector<Rational>& b) {
    RatMatrix aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    std::vector<int> piv = aug.rref();
    std::vector<Rational> x(A.cols());
    for (size_t k = 0; k < piv.size(); ++k) {
        if (piv[k] == A.cols()) return std::nullopt;
        x[piv[k]] = aug(static_cast<int>(k), A.cols());
    }
    return x;
}

}  // namespace qdq
