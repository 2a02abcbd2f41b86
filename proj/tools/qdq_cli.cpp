#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qdq/associator.hpp"
#include "qdq/braces.hpp"
#include "qdq/coenv.hpp"
#include "qdq/io.hpp"
#include "qdq/pbw.hpp"
#include "qdq/quantize.hpp"

using namespace qdq;

namespace {

struct JobConfig {
    std::string command;
    std::string file, bialgebra, associator, hopf, module, coalgebra, algebra;
    std::optional<int> degree, order;
    std::string lambda = "1/2";
    std::uint32_t seed = 1;
    std::string out;
    std::string format = "json";
    int arity = 3, filtration = 3, samples = 5;
    bool quantized_borel = false;
};

struct Outcome {
    Report report;
    Json params = Json::object();
    Json result = Json::object();
    std::optional<Associator> phi;
};

// Accepts either a bare object or a report produced by this tool.
Json unwrap(const Json& j) {
    if (j.is_object() && j.contains("tool") && j.contains("result")) return j["result"];
    return j;
}

Json load(const std::string& path, const char* what) {
    if (path.empty()) throw InputError(std::string("missing --") + what);
    return unwrap(load_json(path));
}

int degree_or(const JobConfig& job, int d) {
    int D = job.degree.value_or(d);
    if (D < 1) throw InputError("--degree must be at least 1");
    return D;
}

int order_or(const JobConfig& job, int n) {
    int N = job.order.value_or(n);
    if (N < 1) throw InputError("--order must be at least 1");
    return N;
}

Rational job_lambda(const JobConfig& job) { return rational_from_json(Json(job.lambda), "--lambda"); }

// Words of length >= N in the associator act as zero at order N.
Associator job_associator(const JobConfig& job, int N) {
    const int need = std::max(N - 1, 2);
    if (job.associator.empty()) return solve_associator(need, job_lambda(job));
    Associator a = associator_from_json(load(job.associator, "associator"));
    if (a.phi.max_degree() < need)
        throw InputError("associator degree " + std::to_string(a.phi.max_degree()) + " is below " +
                         std::to_string(need) + " needed at order " + std::to_string(N));
    return a;
}

HMap mod_h(const HMap& f) {
    HMap out(f.domain(), f.codomain(), f.validity_degree());
    for (const auto& [i, j, x] : f.triplets()) out.set_entry(i, j, x.reduced(1));
    return out;
}

HMap flip_after(const HMap& f, int n) {
    HMap out(f.domain(), f.codomain(), f.validity_degree());
    for (const auto& [i, j, x] : f.triplets()) out.set_entry((i % n) * n + i / n, j, x);
    return out;
}

bool agree_through(const HMap& f, const HMap& g, int k, int budget) {
    for (int j = 0; j < f.domain().rank(); ++j) {
        if (f.domain().degree(j) > budget) continue;
        for (const auto& [i, x] : difference(f.column(j), g.column(j)))
            if (!x.reduced(k + 1).is_zero()) return false;
    }
    return true;
}

void classical_checks(Report& r, const HopfData& A, const HopfData& B, int D) {
    r.add("mod h: product", hmap_agree(mod_h(A.mu), mod_h(B.mu), D));
    r.add("mod h: coproduct", hmap_agree(mod_h(A.Delta), mod_h(B.Delta), D));
    r.add("mod h: antipode", hmap_agree(mod_h(A.S), mod_h(B.S), D));
}

int hopf_degree(const JobConfig& job, const HopfData& H) {
    if (job.degree) return degree_or(job, 1);
    if (H.budget() != kUnbounded) return H.budget();
    int d = 0;
    for (int i = 0; i < H.rank(); ++i) d = std::max(d, H.carrier.degree(i));
    return std::max(d, 1);
}

// ---------------------------------------------------------------------------

Outcome solve_associator_cmd(const JobConfig& job) {
    Outcome o;
    int D = degree_or(job, 5);
    Associator a = solve_associator(D, job_lambda(job));
    o.params["degree"] = D;
    o.report = verify_associator(a, D);
    o.result = associator_json(a);
    o.phi = a;
    return o;
}

Outcome verify_associator_cmd(const JobConfig& job) {
    Outcome o;
    Associator a = associator_from_json(load(job.file, "file"));
    int D = job.degree ? std::min(degree_or(job, 1), a.phi.max_degree()) : a.phi.max_degree();
    o.params["degree"] = D;
    o.report = verify_associator(a, D);
    o.phi = a;
    return o;
}

Outcome quantize_cmd(const JobConfig& job) {
    Outcome o;
    LieBialgebra b = bialgebra_from_json(load(job.bialgebra, "bialgebra"));
    int D = degree_or(job, 3), N = order_or(job, 3);
    o.params["degree"] = D;
    o.params["order"] = N;
    o.report.merge(validate_bialgebra(b), "bialgebra: ");
    Associator phi = job_associator(job, N);
    o.phi = phi;
    PBWAlgebra U = u_enveloping(b, D, N);
    HopfData Q = quantize_minus(U.copoisson, phi);
    o.report.merge(hopf_verify(Q, D));
    classical_checks(o.report, Q, U.copoisson.hopf, D);
    HMap skew = hmap_add(Q.Delta, hmap_neg(flip_after(Q.Delta, Q.rank())));
    o.report.add("(Delta - Delta^op)/h = delta mod h", agree_through(skew, U.copoisson.delta, 1, D));
    o.result = hopf_json(Q);
    return o;
}

Outcome dequantize_cmd(const JobConfig& job) {
    Outcome o;
    HopfData H;
    if (job.quantized_borel) {
        H = quantized_borel(degree_or(job, 3), order_or(job, 3));
    } else {
        H = hopf_from_json(load(job.hopf, "hopf"));
        if (job.order && *job.order != H.order()) throw InputError("--order differs from the order of the Hopf data");
    }
    int D = hopf_degree(job, H), N = H.order();
    o.params["degree"] = D;
    o.params["order"] = N;
    Associator phi = job_associator(job, N);
    o.phi = phi;
    CoPoissonHopfData C = dequantize_minus(H, phi);
    o.report.merge(copoisson_verify(C, D));
    o.report.add("cobracket is h-divisible", C.quantizable);
    classical_checks(o.report, C.hopf, H, D);
    o.result = copoisson_json(C);
    try {
        o.result["prim"] = bialgebra_json(prim(C.hopf, &C.delta));
    } catch (const AlgebraError& e) {
        o.result["prim"] = std::string("unavailable: ") + e.what();
    }
    return o;
}

Outcome roundtrip_cmd(const JobConfig& job) {
    Outcome o;
    LieBialgebra b = bialgebra_from_json(load(job.bialgebra, "bialgebra"));
    int D = degree_or(job, 3), N = order_or(job, 2);
    o.params["degree"] = D;
    o.params["order"] = N;
    o.report.merge(validate_bialgebra(b), "bialgebra: ");
    Associator phi = job_associator(job, N);
    o.phi = phi;
    RoundTripResult rt = roundtrip_check(u_enveloping(b, D, N), phi);
    o.report.merge(rt.report);
    o.report.add("witness found", rt.witness_found);
    if (rt.witness_found) o.result["witness"] = hmap_json(rt.witness);
    o.result["dequantized"] = copoisson_json(rt.dequantized);
    return o;
}

Outcome quantize_module_cmd(const JobConfig& job) {
    Outcome o;
    DYModule V = dy_module_from_json(load(job.module, "module"));
    int D = degree_or(job, 3), N = order_or(job, 2);
    o.params["degree"] = D;
    o.params["order"] = N;
    o.report.merge(dy_validate(V), "module: ");
    Associator phi = job_associator(job, N);
    o.phi = phi;
    PBWAlgebra U = u_enveloping(V.base, D, N);
    DYHopfModule X = dy_lift(V, U);
    o.report.merge(dy_hopf_validate(X, D), "lift: ");
    auto QC = std::make_shared<const HopfData>(quantize_minus(U.copoisson, phi));
    YDModuleData Y = quantize_module(X, phi, QC);
    o.report.merge(yd_validate(Y, D), "quantized: ");

    RoundTripResult rt = roundtrip_check(U, phi);
    o.report.add("algebra round-trip witness found", rt.witness_found);
    if (rt.witness_found) {
        auto DQ = std::make_shared<const CoPoissonHopfData>(rt.dequantized);
        DYHopfModule Z = dequantize_module(Y, phi, DQ);
        o.report.merge(dy_hopf_validate(Z, D), "dequantized: ");
        ModuleComparison cmp = compare_dy_modules(X, pull_back(Z, rt.witness, X.base), D);
        o.report.add("D(Q(X)) isomorphic to X", cmp.found);
        if (cmp.found) o.result["comparison"] = hmap_json(cmp.theta);
    }
    o.result["carrier"] = Y.carrier.labels;
    o.result["action"] = hmap_json(Y.action);
    o.result["coaction"] = hmap_json(Y.coaction);
    return o;
}

Json tensor_json(const LieCoalgebra& c, const TensorVec& t) {
    Json j = Json::object();
    for (const auto& [w, x] : t) j[w.empty() ? "1" : word_str(w, c.basis)] = rational_json(x);
    return j;
}

Json sym_json(const LieCoalgebra& c, const SymVec& s) {
    Json j = Json::object();
    for (const auto& [m, x] : s) j[monomial_label(c, m)] = rational_json(x);
    return j;
}

Outcome pbw_star_cmd(const JobConfig& job) {
    Outcome o;
    LieCoalgebra c = coalgebra_from_json(load(job.coalgebra, "coalgebra"));
    int D = degree_or(job, 4);
    o.params["degree"] = D;
    o.report.merge(validate_lie_coalgebra(c), "coalgebra: ");
    UcBasis U = uc_compute(c, D);
    o.report.merge(uc_verify(U));
    o.report.merge(pbw_star_verify(U));
    Json table = Json::array();
    for (int i = 0; i < U.size(); ++i)
        table.push_back({{"free_word", U.free_words[i].empty() ? "1" : word_str(U.free_words[i], c.basis)},
                         {"degree", U.degree[i]},
                         {"element", tensor_json(c, U.elements[i])},
                         {"pbw_star", sym_json(c, pbw_star(U.elements[i], c.dim))}});
    o.result["basis"] = std::move(table);
    return o;
}

Outcome coenv_cmd(const JobConfig& job) {
    Outcome o;
    int D = degree_or(job, 4);
    o.params["degree"] = D;
    if (!job.bialgebra.empty()) {
        LieBialgebra b = bialgebra_from_json(load(job.bialgebra, "bialgebra"));
        int N = order_or(job, 2);
        o.params["order"] = N;
        o.report.merge(validate_bialgebra(b), "bialgebra: ");
        UcPoisson P = poisson_from_bialgebra(b, b.degrees, D, N);
        o.report.merge(poisson_verify(P.poisson, D));
        CoPrimResult cp = coprim(P.poisson.hopf, &P.poisson.bracket);
        o.report.add("coPrim recovers the bialgebra",
                     cp.lie.dim == b.dim && cp.lie.bracket == b.bracket && cp.lie.cobracket == b.cobracket);
        o.result = hopf_json(P.poisson.hopf);
        o.result["kind"] = "poisson_hopf_data";
        o.result["bracket"] = hmap_json(P.poisson.bracket);
        return o;
    }
    LieCoalgebra c = coalgebra_from_json(load(job.coalgebra, "coalgebra"));
    o.report.merge(validate_lie_coalgebra(c), "coalgebra: ");
    SCoproduct S(c, D);
    o.report.merge(s_coproduct_verify(S));
    Json table = Json::array();
    for (const Monomial& m : S.monomials()) {
        Json terms = Json::array();
        for (const auto& [lr, x] : S.at(m))
            terms.push_back(Json::array({monomial_label(c, lr.first), monomial_label(c, lr.second), rational_json(x)}));
        table.push_back({{"monomial", monomial_label(c, m)}, {"coproduct", std::move(terms)}});
    }
    o.result["coproduct"] = std::move(table);
    return o;
}

std::string cochain_label(const FinAlgebra& A, int arity, int input, int output) {
    std::string args;
    for (int k = arity - 1, rest = input; k >= 0; --k) {
        int p = 1;
        for (int i = 0; i < k; ++i) p *= A.dim;
        args += (args.empty() ? "" : ",") + A.basis[rest / p];
        rest %= p;
    }
    return "C" + std::to_string(arity) + "(" + args + ")->" + A.basis[output];
}

Outcome braces_demo_cmd(const JobConfig& job) {
    Outcome o;
    FinAlgebra A = fin_algebra_from_json(load(job.algebra, "algebra"));
    if (job.arity < 1 || job.arity > 3) throw InputError("--arity must be 1, 2 or 3");
    if (job.filtration < 1 || job.filtration > 3) throw InputError("--filtration must be 1, 2 or 3");
    if (job.samples < 1) throw InputError("--samples must be positive");
    o.params["arity"] = job.arity;
    o.params["filtration"] = job.filtration;
    o.params["samples"] = job.samples;
    o.report.merge(validate_fin_algebra(A), "algebra: ");
    o.report.merge(CochainComplexData{A, job.arity}.verify(job.seed, job.samples), "complex: ");
    TamarkinBialgebra T = tamarkin_product(A, job.arity, job.filtration);
    o.report.merge(tamarkin_verify(T, job.seed, job.samples), "tamarkin: ");
    o.report.merge(gerstenhaber_check(A, job.seed, job.samples, job.arity), "gerstenhaber: ");

    // [,]_G on basis cochains of arity <= 2
    const int kmax = std::min(job.arity, 2);
    std::vector<std::tuple<int, int, int>> letters;
    for (int k = 0; k <= kmax; ++k) {
        int n = 1;
        for (int i = 0; i < k; ++i) n *= A.dim;
        for (int in = 0; in < n; ++in)
            for (int out = 0; out < A.dim; ++out) letters.emplace_back(k, in, out);
    }
    Json table = Json::array();
    for (const auto& [k1, i1, o1] : letters)
        for (const auto& [k2, i2, o2] : letters) {
            Cochain br = gerstenhaber_bracket(A, basis_cochain(A, k1, i1, o1), basis_cochain(A, k2, i2, o2));
            if (br.is_zero()) continue;
            Json value = Json::array();
            for (int in = 0; in < static_cast<int>(br.values.size()); ++in)
                for (const auto& [out, x] : br.values[in])
                    value.push_back(Json::array({cochain_label(A, br.arity, in, out), rational_json(x)}));
            table.push_back({{"left", cochain_label(A, k1, i1, o1)},
                             {"right", cochain_label(A, k2, i2, o2)},
                             {"bracket", std::move(value)}});
        }
    o.result["bracket_table"] = std::move(table);
    return o;
}

Outcome verify_cmd(const JobConfig& job) {
    Outcome o;
    Json j = load(job.file, "file");
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError(job.file + ": no 'kind' field");
    const std::string kind = j["kind"];
    o.params["kind"] = kind;
    if (kind == "associator") {
        Associator a = associator_from_json(j);
        o.params["degree"] = a.phi.max_degree();
        o.report = verify_associator(a, a.phi.max_degree());
        o.phi = a;
    } else if (kind == "lie_bialgebra") {
        o.report = validate_bialgebra(bialgebra_from_json(j));
    } else if (kind == "lie_coalgebra") {
        o.report = validate_lie_coalgebra(coalgebra_from_json(j));
    } else if (kind == "dy_module") {
        o.report = dy_validate(dy_module_from_json(j));
    } else if (kind == "fin_algebra") {
        o.report = validate_fin_algebra(fin_algebra_from_json(j));
    } else if (kind == "hopf_data") {
        HopfData H = hopf_from_json(j);
        int D = hopf_degree(job, H);
        o.params["degree"] = D;
        o.params["order"] = H.order();
        o.report = hopf_verify(H, D);
    } else if (kind == "copoisson_hopf_data") {
        CoPoissonHopfData C = copoisson_from_json(j);
        int D = hopf_degree(job, C.hopf);
        o.params["degree"] = D;
        o.params["order"] = C.hopf.order();
        o.report = copoisson_verify(C, D);
    } else {
        throw InputError("unsupported kind '" + kind + "'");
    }
    return o;
}

// ---------------------------------------------------------------------------

Json document(const JobConfig& job, const Outcome& o) {
    Json params = o.params;
    params["seed"] = job.seed;
    if (o.phi) params["lambda"] = rational_json(o.phi->lambda);
    Json doc{{"tool", "qdq"}, {"version", kToolVersion}, {"command", job.command}, {"parameters", params}};
    if (o.phi)
        doc["associator"] = {{"fingerprint", associator_fingerprint(*o.phi)},
                             {"degree", o.phi->phi.max_degree()},
                             {"lambda", rational_json(o.phi->lambda)}};
    doc["checks"] = report_json(o.report);
    doc["status"] = o.report.ok() ? "pass" : "fail";
    if (!o.result.empty()) doc["result"] = o.result;
    return doc;
}

std::string text_document(const Json& doc, const Report& r) {
    std::string s = "qdq " + doc["version"].get<std::string>() + " " + doc["command"].get<std::string>() + "\n";
    for (const auto& [k, v] : doc["parameters"].items()) s += "  " + k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    if (doc.contains("associator"))
        s += "  associator " + doc["associator"]["fingerprint"].get<std::string>() + " (degree " +
             doc["associator"]["degree"].dump() + ")\n";
    s += r.text();
    s += "status: " + doc["status"].get<std::string>() + "\n";
    return s;
}

int run(const JobConfig& job) {
    Outcome o;
    if (job.command == "solve-associator") o = solve_associator_cmd(job);
    else if (job.command == "verify-associator") o = verify_associator_cmd(job);
    else if (job.command == "quantize") o = quantize_cmd(job);
    else if (job.command == "dequantize") o = dequantize_cmd(job);
    else if (job.command == "roundtrip") o = roundtrip_cmd(job);
    else if (job.command == "quantize-module") o = quantize_module_cmd(job);
    else if (job.command == "pbw-star") o = pbw_star_cmd(job);
    else if (job.command == "coenv") o = coenv_cmd(job);
    else if (job.command == "braces-demo") o = braces_demo_cmd(job);
    else if (job.command == "verify") o = verify_cmd(job);
    else throw InputError("unknown command " + job.command);

    Json doc = document(job, o);
    std::string body = job.format == "text" ? text_document(doc, o.report) : doc.dump(2) + "\n";
    if (job.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(job.out);
        if (!f) throw InputError("cannot write " + job.out);
        f << body;
        std::cout << "status: " << doc["status"].get<std::string>() << ", wrote " << job.out << "\n";
    }
    return o.report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantization and dequantization of Lie bialgebras over truncated power series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    JobConfig job;

    auto common = [&](CLI::App* s, bool truncation = true) {
        if (truncation) {
            s->add_option("--degree", job.degree, "truncation degree D");
            s->add_option("--order", job.order, "order N of Q[h]/h^N");
        }
        s->add_option("--lambda", job.lambda, "associator parameter when one is solved");
        s->add_option("--seed", job.seed, "seed for sampled property checks");
        s->add_option("--out", job.out, "write the report here instead of stdout");
        s->add_option("--format", job.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };

    auto* solve = app.add_subcommand("solve-associator", "solve an associator degree by degree");
    common(solve);
    auto* verify_assoc = app.add_subcommand("verify-associator", "pentagon, hexagon, duality, group-likeness");
    verify_assoc->add_option("file", job.file)->required();
    common(verify_assoc);
    auto* quant = app.add_subcommand("quantize", "Q_- of U(b)");
    quant->add_option("--bialgebra", job.bialgebra)->required();
    quant->add_option("--associator", job.associator);
    common(quant);
    auto* dequant = app.add_subcommand("dequantize", "D_- of a Hopf datum");
    dequant->add_option("--hopf", job.hopf);
    dequant->add_flag("--quantized-borel", job.quantized_borel, "use the built-in truncated quantized Borel");
    dequant->add_option("--associator", job.associator);
    common(dequant);
    auto* round = app.add_subcommand("roundtrip", "D_-(Q_-(U(b))) against U(b)");
    round->add_option("--bialgebra", job.bialgebra)->required();
    round->add_option("--associator", job.associator);
    common(round);
    auto* qmod = app.add_subcommand("quantize-module", "transport a Drinfeld-Yetter module and back");
    qmod->add_option("--module", job.module)->required();
    qmod->add_option("--associator", job.associator);
    common(qmod);
    auto* pbw = app.add_subcommand("pbw-star", "U^c of a Lie coalgebra and pbw_star");
    pbw->add_option("--coalgebra", job.coalgebra)->required();
    common(pbw);
    auto* coenv = app.add_subcommand("coenv", "coproduct on S(c), or the Poisson structure of a bialgebra");
    auto* co_in = coenv->add_option("--coalgebra", job.coalgebra);
    auto* bi_in = coenv->add_option("--bialgebra", job.bialgebra);
    co_in->excludes(bi_in);
    common(coenv);
    auto* braces = app.add_subcommand("braces-demo", "braces, the Tamarkin product and the Gerstenhaber bracket");
    braces->add_option("--algebra", job.algebra)->required();
    braces->add_option("--arity", job.arity, "maximal cochain arity K");
    braces->add_option("--filtration", job.filtration, "tensor length cutoff F");
    braces->add_option("--samples", job.samples, "seeded samples per identity");
    common(braces, false);
    auto* verify = app.add_subcommand("verify", "check the axioms of any supported JSON object");
    verify->add_option("file", job.file)->required();
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    job.command = app.get_subcommands().front()->get_name();
    if (job.command == "dequantize" && job.hopf.empty() == !job.quantized_borel) {
        std::cerr << "error: dequantize needs exactly one of --hopf and --quantized-borel\n";
        return 2;
    }
    if (job.command == "coenv" && job.coalgebra.empty() && job.bialgebra.empty()) {
        std::cerr << "error: coenv needs --coalgebra or --bialgebra\n";
        return 2;
    }
    try {
        return run(job);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
    } catch (const AlgebraError& e) {
        std::cerr << "input rejected: " << e.what() << "\n";
    }
    return 2;
}
