#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qdq {

using Rational = mpq_class;

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation would read a table entry past its validity degree.
struct BudgetError : AlgebraError {
    using AlgebraError::AlgebraError;
};

// Canonical p/q (mpq_class(p, q) is not reduced on construction).
inline Rational frac(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

// Element of Q[h]/(h^N).
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int order);
    TruncSeries(int order, const Rational& constant);
    TruncSeries(int order, std::vector<Rational> coeffs);

    static TruncSeries monomial(int order, int power, const Rational& c = 1);

    int order() const { return static_cast<int>(c_.size()); }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational& operator[](int k) { return c_[k]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    // Smallest k with nonzero coefficient; order() for the zero series.
    int valuation() const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const Rational& s);
    TruncSeries operator-() const;
    // Multiply by h^k.
    TruncSeries shifted(int k) const;
    // Divide by h^k; the low coefficients must vanish. Top k coefficients become 0.
    TruncSeries unshifted(int k) const;
    // Reduce mod h^k (coefficients at and above k are zeroed, order kept).
    TruncSeries reduced(int k) const;

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const Rational& s) { return a *= s; }
    friend TruncSeries operator*(const Rational& s, TruncSeries a) { return a *= s; }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<Rational> c_;
};

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_invert(const TruncSeries& a);
TruncSeries series_exp(const TruncSeries& a);
TruncSeries series_log(const TruncSeries& a);

inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return series_mul(a, b); }

// ---------------------------------------------------------------------------
// Sparse vectors. SVec is indexed by basis position, TVec by a packed
// multi-index (see key_* helpers), used for tensors with several slots.

using SVec = std::map<int, TruncSeries>;
using TVec = std::map<std::uint64_t, TruncSeries>;

constexpr int kSlotBits = 10;
constexpr std::uint64_t kSlotMask = (1u << kSlotBits) - 1;
constexpr int kMaxSlots = 6;

inline int key_get(std::uint64_t k, int slot) {
    return static_cast<int>((k >> (kSlotBits * slot)) & kSlotMask);
}
inline std::uint64_t key_set(std::uint64_t k, int slot, int v) {
    k &= ~(kSlotMask << (kSlotBits * slot));
    return k | (static_cast<std::uint64_t>(v) << (kSlotBits * slot));
}
std::uint64_t key_make(const std::vector<int>& idx);
std::vector<int> key_split(std::uint64_t k, int slots);

template <class Map, class K>
void add_term(Map& m, const K& k, const TruncSeries& c) {
    if (c.is_zero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) m.erase(it);
    }
}

template <class Map>
void add_scaled(Map& into, const Map& v, const TruncSeries& c) {
    for (const auto& [k, x] : v) add_term(into, k, series_mul(x, c));
}

template <class Map>
void add_scaled(Map& into, const Map& v, const Rational& c) {
    if (c == 0) return;
    for (const auto& [k, x] : v) add_term(into, k, x * c);
}

template <class Map>
Map scaled(const Map& v, const Rational& c) {
    Map out;
    add_scaled(out, v, c);
    return out;
}

template <class Map>
Map shifted(const Map& v, int k) {
    Map out;
    for (const auto& [key, x] : v) add_term(out, key, x.shifted(k));
    return out;
}

template <class Map>
Map difference(const Map& a, const Map& b) {
    Map out = a;
    for (const auto& [k, x] : b) add_term(out, k, -x);
    return out;
}

// ---------------------------------------------------------------------------

struct HModule {
    int order = 1;
    std::vector<std::string> labels;
    std::vector<int> degrees;  // -1 marks an untagged label

    HModule() = default;
    HModule(int order, std::vector<std::string> labels, std::vector<int> degrees = {});

    int rank() const { return static_cast<int>(labels.size()); }
    int degree(int i) const { return degrees.empty() ? -1 : degrees[i]; }
    int index_of(const std::string& label) const;
    bool same_basis(const HModule& o) const { return order == o.order && labels == o.labels; }
};

HModule tensor_module(const HModule& a, const HModule& b);

constexpr int kUnbounded = INT_MAX;

// Linear map between truncated modules, stored column by column.
// validity_degree bounds the weight (degree minus h-power) of inputs on which
// the map is known to be exact.
class HMap {
public:
    HMap() = default;
    HMap(HModule dom, HModule cod, int validity = kUnbounded);

    static HMap identity(const HModule& m);
    static HMap zero(const HModule& dom, const HModule& cod);

    const HModule& domain() const { return dom_; }
    const HModule& codomain() const { return cod_; }
    int validity_degree() const { return validity_; }
    void set_validity_degree(int v) { validity_ = v; }

    const SVec& column(int j) const { return cols_[j]; }
    SVec& column(int j) { return cols_[j]; }
    void set_entry(int row, int col, const TruncSeries& v);
    TruncSeries entry(int row, int col) const;
    std::vector<std::tuple<int, int, TruncSeries>> triplets() const;

    SVec apply(const SVec& v) const;
    bool is_zero() const;
    bool operator==(const HMap& o) const;

private:
    HModule dom_, cod_;
    std::vector<SVec> cols_;
    int validity_ = kUnbounded;
};

// Weight of h^k * e_i is degree(i) - k; untagged labels have weight 0.
int weight_of(const HModule& m, const SVec& v);

HMap hmap_compose(const HMap& g, const HMap& f);  // g after f
HMap hmap_tensor(const HMap& f, const HMap& g);
HMap hmap_add(const HMap& f, const HMap& g);
HMap hmap_scale(const HMap& f, const Rational& s);
HMap hmap_neg(const HMap& f);
HMap neumann_invert(const HMap& f);
HMap endo_log(const HMap& f);
HMap endo_exp(const HMap& f);

struct QuotientResult {
    HModule quotient;
    // Annihilator exponent of each quotient generator; order() for free ones.
    std::vector<int> torsion;
    HMap projection;
    std::optional<HMap> section;

    // projection followed by reduction of each torsion coordinate
    SVec project(const SVec& v) const;
};

QuotientResult submodule_quotient(const HModule& V, const std::vector<SVec>& gens);

// Generators of the kernel of f over Q[h]/(h^N).
std::vector<SVec> hmap_kernel(const HMap& f);

// ---------------------------------------------------------------------------
// Dense exact linear algebra over Q.

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref();
    int rank() const;
    std::vector<std::vector<Rational>> nullspace() const;
    Rational determinant() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

// Solves A x = b over Q with free variables set to zero; nullopt if inconsistent.
std::optional<std::vector<Rational>> solve_linear(const RatMatrix& A, const std::vector<Rational>& b);

}  // namespace qdq
