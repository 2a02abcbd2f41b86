#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qdq/associator.hpp"
#include "qdq/hopfcore.hpp"
#include "qdq/liebialg.hpp"
#include "qdq/pbw.hpp"

namespace qdq {

// C_- coaction c -> c2' (x) c2'' S^{-1}(c1), where c1 (x) delta(c2) = c1 (x) c2' (x) c2''.
HMap c_minus_coaction(const CoPoissonHopfData& C);
DYHopfModule c_minus_module(std::shared_ptr<const CoPoissonHopfData> C);

// Hopf structure on the fiber of C_- in the associator-deformed Drinfeld-Yetter
// category, transported to the carrier of C. Requires an h-divisible cobracket.
HopfData quantize_minus(const CoPoissonHopfData& C, const Associator& phi);

struct QuantizationResult {
    HopfData hopf;
    HMap comparison;  // identity of carriers
    std::vector<std::string> log;
};
QuantizationResult quantize_minus(const PBWAlgebra& C, const Associator& phi);

// Fiber of H_- in Yetter-Drinfeld modules deformed by g(0), with the cobracket
// 1/2 (id - flip) of the (sigma0 t)-twisted coproduct. Requires S^2 = id mod h.
CoPoissonHopfData dequantize_minus(const HopfData& H, const Associator& phi);

// Plus side through duality; exact for graded data only.
HopfData quantize_plus(const PoissonHopfData& P, const Associator& phi);
PoissonHopfData dequantize_plus(const HopfData& H, const Associator& phi);

// A Drinfeld-Yetter module of b as a module over the coPoisson datum U(b).
DYHopfModule dy_lift(const DYModule& V, const PBWAlgebra& C);

// F(M (x) X) for X a Drinfeld-Yetter module over C, as a Yetter-Drinfeld module
// over QC = quantize_minus(C), on the carrier of X.
YDModuleData quantize_module(const DYHopfModule& X, const Associator& phi, std::shared_ptr<const HopfData> QC);
// F(M (x) X) for X a Yetter-Drinfeld module over H, as a Drinfeld-Yetter module
// over DH = dequantize_minus(H).
DYHopfModule dequantize_module(const YDModuleData& X, const Associator& phi,
                               std::shared_ptr<const CoPoissonHopfData> DH);

// ---------------------------------------------------------------------------

// f: A -> B commutes with products, units, coproducts, counits and antipodes.
Report hopf_morphism_verify(const HMap& f, const HopfData& A, const HopfData& B, int budget);
// Additionally (f (x) f) delta_A = delta_B f.
Report copoisson_morphism_verify(const HMap& f, const CoPoissonHopfData& A, const CoPoissonHopfData& B, int budget);

// Reduction mod h as order-one data.
HopfData classical_limit(const HopfData& H);
// Primitive elements of the classical limit with the commutator bracket and,
// when delta is given, the cobracket read off from its h^1 part.
LieBialgebra prim(const HopfData& H, const HMap* delta = nullptr);

struct RoundTripResult {
    Report report;
    bool witness_found = false;
    HMap witness;  // U(b) -> D_-(Q_-(U(b)))
    CoPoissonHopfData dequantized;
};
// Runs D_- after Q_- and solves for a Hopf and coPoisson isomorphism = id mod h,
// order by order in h, determined by the images of the generators.
RoundTripResult roundtrip_check(const PBWAlgebra& C, const Associator& phi);

// The grading automorphism E -> cE of the Borel, on a carrier whose labels are
// monomials "H^a E^b".
HMap borel_scaling(const HModule& carrier, const Rational& c, int budget);

// Solves for theta: X -> Y, theta = id mod h, intertwining the actions and the
// coactions of two modules with the same carrier over the same base.
struct ModuleComparison {
    bool found = false;
    HMap theta;
    Report report;
};
ModuleComparison compare_dy_modules(const DYHopfModule& X, const DYHopfModule& Y, int budget);
// Y over D pulled back to C along a Hopf isomorphism psi: C -> D.
DYHopfModule pull_back(const DYHopfModule& Y, const HMap& psi, std::shared_ptr<const CoPoissonHopfData> C);

}  // namespace qdq
