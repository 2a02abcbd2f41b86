#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qdq/associator.hpp"
#include "qdq/braces.hpp"
#include "qdq/coenv.hpp"
#include "qdq/hopfcore.hpp"
#include "qdq/liebialg.hpp"
#include "qdq/report.hpp"

namespace qdq {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Malformed or schema-violating input.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rationals travel as strings "p/q" (integers accepted on input).
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where);

Json report_json(const Report& r);

// {"kind": "associator", "lambda", "degree", "alphabet", "terms": [{"word": [letters], "coeff"}]}
Json associator_json(const Associator& a);
Associator associator_from_json(const Json& j);
// FNV-1a over the canonical serialization, 16 hex digits.
std::string associator_fingerprint(const Associator& a);

// {"kind": "lie_bialgebra", "basis", "bracket": [[a, b, c, coeff]], "cobracket": [[a, b, c, coeff]],
//  "degrees"?, "hbar_scaled"?}; [a, b] contains coeff c, delta(a) contains coeff b (x) c.
Json bialgebra_json(const LieBialgebra& b);
LieBialgebra bialgebra_from_json(const Json& j);

// {"kind": "lie_coalgebra", "basis", "cobracket", "levels"?}
Json coalgebra_json(const LieCoalgebra& c);
LieCoalgebra coalgebra_from_json(const Json& j);

// {"kind": "dy_module", "base": lie_bialgebra, "basis", "action": [[g, v, w, coeff]],
//  "coaction": [[v, w, g, coeff]]}; g.v contains coeff w, rho(v) contains coeff w (x) g.
Json dy_module_json(const DYModule& V);
DYModule dy_module_from_json(const Json& j);

// {"kind": "fin_algebra", "basis", "mult": [[a, b, c, coeff]], "unit": {label: coeff}}
Json fin_algebra_json(const FinAlgebra& A);
FinAlgebra fin_algebra_from_json(const Json& j);

// Sparse table keyed by labels: {"validity", "entries": [[row, col, [h^0, h^1, ...]]]}.
Json hmap_json(const HMap& f);
HMap hmap_from_json(const Json& j, const HModule& dom, const HModule& cod, const std::string& where);

// {"kind": "hopf_data", "order", "carrier": {"labels", "degrees"}, "unit", "aug_generators",
//  "mu", "eta", "Delta", "epsilon", "S", "S_inv"}; coPoisson data add "delta" and kind "copoisson_hopf_data".
Json hopf_json(const HopfData& H);
Json copoisson_json(const CoPoissonHopfData& C);
HopfData hopf_from_json(const Json& j);
CoPoissonHopfData copoisson_from_json(const Json& j);

// Parses a file; throws InputError with the parser diagnostic.
Json load_json(const std::string& path);

}  // namespace qdq
