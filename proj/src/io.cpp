#include "qdq/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qdq {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

int int_field(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

void expect_kind(const Json& j, const std::string& kind) {
    const Json& k = field(j, "kind", kind);
    if (!k.is_string() || k.get<std::string>() != kind)
        throw InputError("expected kind '" + kind + "', got " + k.dump());
}

std::vector<std::string> labels_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of labels");
    std::vector<std::string> out;
    std::map<std::string, int> seen;
    for (const Json& x : j) {
        if (!x.is_string()) throw InputError(where + ": labels must be strings");
        if (!seen.emplace(x.get<std::string>(), 0).second)
            throw InputError(where + ": duplicate label " + x.get<std::string>());
        out.push_back(x.get<std::string>());
    }
    return out;
}

std::vector<int> ints_from(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of integers");
    std::vector<int> out;
    for (const Json& x : j) {
        if (!x.is_number_integer()) throw InputError(where + ": expected integers");
        out.push_back(x.get<int>());
    }
    return out;
}

class LabelIndex {
public:
    LabelIndex(const std::vector<std::string>& labels, std::string where) : where_(std::move(where)) {
        for (int i = 0; i < static_cast<int>(labels.size()); ++i) idx_[labels[i]] = i;
    }
    int operator()(const Json& j) const {
        if (!j.is_string()) throw InputError(where_ + ": expected a basis label, got " + j.dump());
        auto it = idx_.find(j.get<std::string>());
        if (it == idx_.end()) throw InputError(where_ + ": unknown basis label " + j.dump());
        return it->second;
    }

private:
    std::map<std::string, int> idx_;
    std::string where_;
};

using Quad = std::tuple<int, int, int, Rational>;

std::vector<Quad> quads_from(const Json& j, const LabelIndex& a, const LabelIndex& b, const LabelIndex& c,
                             const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of [label, label, label, coeff]");
    std::vector<Quad> out;
    for (const Json& e : j) {
        if (!e.is_array() || e.size() != 4) throw InputError(where + ": bad entry " + e.dump());
        out.emplace_back(a(e[0]), b(e[1]), c(e[2]), rational_from_json(e[3], where));
    }
    return out;
}

Json quad(const std::string& a, const std::string& b, const std::string& c, const Rational& x) {
    return Json::array({a, b, c, rational_json(x)});
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw InputError(where + ": expected a rational string, got " + j.dump());
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos && s.find_first_not_of("0+-", slash + 1) == std::string::npos)
        throw InputError(where + ": zero denominator in " + s);
    try {
        return parse_rational(s);
    } catch (const AlgebraError&) {
        throw InputError(where + ": malformed rational '" + s + "'");
    }
}

Json report_json(const Report& r) {
    Json a = Json::array();
    for (const auto& c : r.checks) {
        Json e{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        a.push_back(std::move(e));
    }
    return a;
}

// ---------------------------------------------------------------------------

Json associator_json(const Associator& a) {
    Json terms = Json::array();
    for (const auto& [w, c] : a.phi.terms()) {
        Json word = Json::array();
        for (int l : w) word.push_back(a.phi.alphabet()[l]);
        terms.push_back({{"word", std::move(word)}, {"coeff", rational_json(c)}});
    }
    return {{"kind", "associator"},
            {"lambda", rational_json(a.lambda)},
            {"degree", a.phi.max_degree()},
            {"alphabet", a.phi.alphabet()},
            {"terms", std::move(terms)}};
}

Associator associator_from_json(const Json& j) {
    expect_kind(j, "associator");
    const std::string where = "associator";
    int D = int_field(j, "degree", where);
    if (D < 1) throw InputError("associator.degree must be positive");
    if (auto it = j.find("alphabet"); it != j.end() && labels_from(*it, where + ".alphabet") != kAssociatorAlphabet)
        throw InputError("associator.alphabet must be [\"A\", \"B\"]");
    Associator a;
    a.lambda = rational_from_json(field(j, "lambda", where), where + ".lambda");
    a.phi = NCSeries(kAssociatorAlphabet, D);
    LabelIndex letter(kAssociatorAlphabet, where + ".terms");
    const Json& terms = field(j, "terms", where);
    if (!terms.is_array()) throw InputError("associator.terms: expected an array");
    for (const Json& t : terms) {
        const Json& w = field(t, "word", where + ".terms");
        if (!w.is_array()) throw InputError("associator.terms: word must be an array of letters");
        if (static_cast<int>(w.size()) > D) throw InputError("associator.terms: word longer than degree");
        Word word;
        for (const Json& l : w) word.push_back(letter(l));
        a.phi.add(word, rational_from_json(field(t, "coeff", where + ".terms"), where + ".terms"));
    }
    return a;
}

std::string associator_fingerprint(const Associator& a) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : associator_json(a).dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------

Json bialgebra_json(const LieBialgebra& b) {
    Json br = Json::array(), co = Json::array();
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (const auto& [k, c] : b.bracket[i][j]) br.push_back(quad(b.basis[i], b.basis[j], b.basis[k], c));
    for (int i = 0; i < b.dim; ++i)
        for (const auto& [jk, c] : b.cobracket[i])
            co.push_back(quad(b.basis[i], b.basis[jk.first], b.basis[jk.second], c));
    Json out{{"kind", "lie_bialgebra"}, {"basis", b.basis}, {"bracket", br}, {"cobracket", co}};
    if (!b.degrees.empty()) out["degrees"] = b.degrees;
    out["hbar_scaled"] = b.hbar_scaled;
    return out;
}

LieBialgebra bialgebra_from_json(const Json& j) {
    expect_kind(j, "lie_bialgebra");
    auto basis = labels_from(field(j, "basis", "lie_bialgebra"), "lie_bialgebra.basis");
    LabelIndex L(basis, "lie_bialgebra");
    auto br = quads_from(field(j, "bracket", "lie_bialgebra"), L, L, L, "lie_bialgebra.bracket");
    auto co = quads_from(field(j, "cobracket", "lie_bialgebra"), L, L, L, "lie_bialgebra.cobracket");
    LieBialgebra b = make_lie_bialgebra(basis, br, co);
    if (auto it = j.find("degrees"); it != j.end()) {
        b.degrees = ints_from(*it, "lie_bialgebra.degrees");
        if (static_cast<int>(b.degrees.size()) != b.dim) throw InputError("lie_bialgebra.degrees: one per basis vector");
        for (int d : b.degrees)
            if (d < 1) throw InputError("lie_bialgebra.degrees must be positive");
    }
    if (auto it = j.find("hbar_scaled"); it != j.end()) {
        if (!it->is_boolean()) throw InputError("lie_bialgebra.hbar_scaled: expected a boolean");
        b.hbar_scaled = it->get<bool>();
    }
    return b;
}

Json coalgebra_json(const LieCoalgebra& c) {
    Json co = Json::array();
    for (int i = 0; i < c.dim; ++i)
        for (const auto& [jk, x] : c.cobracket[i])
            co.push_back(quad(c.basis[i], c.basis[jk.first], c.basis[jk.second], x));
    Json out{{"kind", "lie_coalgebra"}, {"basis", c.basis}, {"cobracket", co}};
    if (!c.triangular_order.empty()) out["levels"] = c.triangular_order;
    return out;
}

LieCoalgebra coalgebra_from_json(const Json& j) {
    expect_kind(j, "lie_coalgebra");
    auto basis = labels_from(field(j, "basis", "lie_coalgebra"), "lie_coalgebra.basis");
    LabelIndex L(basis, "lie_coalgebra");
    auto co = quads_from(field(j, "cobracket", "lie_coalgebra"), L, L, L, "lie_coalgebra.cobracket");
    std::vector<int> levels;
    if (auto it = j.find("levels"); it != j.end()) {
        levels = ints_from(*it, "lie_coalgebra.levels");
        if (levels.size() != basis.size()) throw InputError("lie_coalgebra.levels: one per basis vector");
        for (int l : levels)
            if (l < 1) throw InputError("lie_coalgebra.levels must be positive");
    }
    return make_lie_coalgebra(basis, co, levels);
}

// ---------------------------------------------------------------------------

Json dy_module_json(const DYModule& V) {
    const auto& g = V.base.basis;
    Json act = Json::array(), coact = Json::array();
    for (int i = 0; i < V.base.dim; ++i)
        for (int a = 0; a < V.dim; ++a)
            for (const auto& [b, c] : V.action[i][a]) act.push_back(quad(g[i], V.basis[a], V.basis[b], c));
    for (int a = 0; a < V.dim; ++a)
        for (const auto& [bi, c] : V.coaction[a]) coact.push_back(quad(V.basis[a], V.basis[bi.first], g[bi.second], c));
    return {{"kind", "dy_module"}, {"base", bialgebra_json(V.base)}, {"basis", V.basis},
            {"action", act},       {"coaction", coact}};
}

DYModule dy_module_from_json(const Json& j) {
    expect_kind(j, "dy_module");
    DYModule V = trivial_dy_module(bialgebra_from_json(field(j, "base", "dy_module")),
                                   static_cast<int>(labels_from(field(j, "basis", "dy_module"), "dy_module.basis").size()));
    V.basis = labels_from(j["basis"], "dy_module.basis");
    LabelIndex G(V.base.basis, "dy_module"), M(V.basis, "dy_module");
    for (const auto& [i, a, b, c] : quads_from(field(j, "action", "dy_module"), G, M, M, "dy_module.action")) {
        Rational& s = V.action[i][a][b];
        s += c;
        if (s == 0) V.action[i][a].erase(b);
    }
    for (const auto& [a, b, i, c] : quads_from(field(j, "coaction", "dy_module"), M, M, G, "dy_module.coaction")) {
        Rational& s = V.coaction[a][{b, i}];
        s += c;
        if (s == 0) V.coaction[a].erase({b, i});
    }
    return V;
}

Json fin_algebra_json(const FinAlgebra& A) {
    Json mult = Json::array(), unit = Json::object();
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (const auto& [k, c] : A.mult[i][j]) mult.push_back(quad(A.basis[i], A.basis[j], A.basis[k], c));
    for (const auto& [k, c] : A.unit) unit[A.basis[k]] = rational_json(c);
    return {{"kind", "fin_algebra"}, {"basis", A.basis}, {"mult", mult}, {"unit", unit}};
}

FinAlgebra fin_algebra_from_json(const Json& j) {
    expect_kind(j, "fin_algebra");
    auto basis = labels_from(field(j, "basis", "fin_algebra"), "fin_algebra.basis");
    if (basis.empty()) throw InputError("fin_algebra.basis: empty");
    LabelIndex L(basis, "fin_algebra");
    auto mult = quads_from(field(j, "mult", "fin_algebra"), L, L, L, "fin_algebra.mult");
    const Json& u = field(j, "unit", "fin_algebra");
    if (!u.is_object()) throw InputError("fin_algebra.unit: expected an object {label: coeff}");
    QVec unit;
    for (const auto& [k, v] : u.items()) {
        Rational c = rational_from_json(v, "fin_algebra.unit");
        if (c != 0) unit[L(Json(k))] = c;
    }
    return make_fin_algebra(basis, mult, unit);
}

// ---------------------------------------------------------------------------

Json hmap_json(const HMap& f) {
    Json entries = Json::array();
    for (const auto& [i, j, x] : f.triplets()) {
        Json cs = Json::array();
        for (const Rational& c : x.coeffs()) cs.push_back(rational_json(c));
        entries.push_back(Json::array({f.codomain().labels[i], f.domain().labels[j], std::move(cs)}));
    }
    Json v = f.validity_degree() == kUnbounded ? Json(nullptr) : Json(f.validity_degree());
    return {{"validity", v}, {"entries", std::move(entries)}};
}

HMap hmap_from_json(const Json& j, const HModule& dom, const HModule& cod, const std::string& where) {
    const Json& v = field(j, "validity", where);
    int validity = kUnbounded;
    if (!v.is_null()) {
        if (!v.is_number_integer()) throw InputError(where + ".validity: expected an integer or null");
        validity = v.get<int>();
    }
    HMap f(dom, cod, validity);
    LabelIndex rows(cod.labels, where), cols(dom.labels, where);
    const Json& entries = field(j, "entries", where);
    if (!entries.is_array()) throw InputError(where + ".entries: expected an array");
    for (const Json& e : entries) {
        if (!e.is_array() || e.size() != 3 || !e[2].is_array()) throw InputError(where + ": bad entry " + e.dump());
        if (static_cast<int>(e[2].size()) > dom.order)
            throw InputError(where + ": series longer than the truncation order in " + e.dump());
        std::vector<Rational> cs(dom.order);
        for (std::size_t k = 0; k < e[2].size(); ++k) cs[k] = rational_from_json(e[2][k], where);
        f.set_entry(rows(e[0]), cols(e[1]), TruncSeries(dom.order, cs));
    }
    return f;
}

Json hopf_json(const HopfData& H) {
    Json aug = Json::array();
    for (int g : H.aug_generators) aug.push_back(H.carrier.labels[g]);
    return {{"kind", "hopf_data"},
            {"order", H.order()},
            {"carrier", {{"labels", H.carrier.labels}, {"degrees", H.carrier.degrees}}},
            {"unit", H.carrier.labels[H.unit]},
            {"aug_generators", aug},
            {"mu", hmap_json(H.mu)},
            {"eta", hmap_json(H.eta)},
            {"Delta", hmap_json(H.Delta)},
            {"epsilon", hmap_json(H.epsilon)},
            {"S", hmap_json(H.S)},
            {"S_inv", hmap_json(H.S_inv)}};
}

Json copoisson_json(const CoPoissonHopfData& C) {
    Json j = hopf_json(C.hopf);
    j["kind"] = "copoisson_hopf_data";
    j["delta"] = hmap_json(C.delta);
    j["quantizable"] = C.quantizable;
    return j;
}

namespace {

HopfData hopf_body(const Json& j, const std::string& where) {
    int N = int_field(j, "order", where);
    if (N < 1) throw InputError(where + ".order must be positive");
    const Json& carrier = field(j, "carrier", where);
    auto labels = labels_from(field(carrier, "labels", where + ".carrier"), where + ".carrier.labels");
    auto degrees = ints_from(field(carrier, "degrees", where + ".carrier"), where + ".carrier.degrees");
    if (!degrees.empty() && degrees.size() != labels.size())
        throw InputError(where + ".carrier.degrees: one per label");
    for (const auto& l : labels)
        if (l.find('|') != std::string::npos) throw InputError(where + ".carrier: '|' is reserved in labels");
    HopfData H;
    H.carrier = HModule(N, labels, degrees);
    HModule A2 = tensor_module(H.carrier, H.carrier), k = ground_module(N);
    LabelIndex L(labels, where);
    H.unit = L(field(j, "unit", where));
    const Json& aug = field(j, "aug_generators", where);
    if (!aug.is_array()) throw InputError(where + ".aug_generators: expected an array");
    for (const Json& g : aug) H.aug_generators.push_back(L(g));
    H.mu = hmap_from_json(field(j, "mu", where), A2, H.carrier, where + ".mu");
    H.eta = hmap_from_json(field(j, "eta", where), k, H.carrier, where + ".eta");
    H.Delta = hmap_from_json(field(j, "Delta", where), H.carrier, A2, where + ".Delta");
    H.epsilon = hmap_from_json(field(j, "epsilon", where), H.carrier, k, where + ".epsilon");
    H.S = hmap_from_json(field(j, "S", where), H.carrier, H.carrier, where + ".S");
    H.S_inv = hmap_from_json(field(j, "S_inv", where), H.carrier, H.carrier, where + ".S_inv");
    return H;
}

}  // namespace

HopfData hopf_from_json(const Json& j) {
    const Json& k = field(j, "kind", "hopf_data");
    if (k == "copoisson_hopf_data") return copoisson_from_json(j).hopf;
    expect_kind(j, "hopf_data");
    return hopf_body(j, "hopf_data");
}

CoPoissonHopfData copoisson_from_json(const Json& j) {
    expect_kind(j, "copoisson_hopf_data");
    CoPoissonHopfData C;
    C.hopf = hopf_body(j, "copoisson_hopf_data");
    C.delta = hmap_from_json(field(j, "delta", "copoisson_hopf_data"), C.hopf.carrier,
                             tensor_module(C.hopf.carrier, C.hopf.carrier), "copoisson_hopf_data.delta");
    C.quantizable = true;
    for (int i = 0; i < C.delta.domain().rank(); ++i)
        for (const auto& [r, x] : C.delta.column(i))
            if (x[0] != 0) C.quantizable = false;
    return C;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace qdq
