#pragma once

#include "kunz/fpmodule.hpp"

namespace kunz {

// The e-th relative Frobenius of alpha: R -> A.  The carrier of F^e_* A is A
// itself; the twist lives entirely in psi.  B is the pushout A tensor_R F^e_* R
// with the R-copy glued along u_j |-> u_j^q.
struct FrobeniusData {
    unsigned e = 1;
    std::uint64_t q = 0;
    AlgebraMap alpha;
    TensorProduct b;  // B with its two coprojections; based over R
    AlgebraMap psi;   // B -> A: A-copy variable z |-> z^q, R-copy r' |-> alpha(r')
};

FrobeniusData build_frobenius(const AlgebraMap& alpha, unsigned e, Budget& budget);

// psi is surjective iff each target variable lies in the subalgebra generated
// by q-th powers and base images; the certificates express how.
struct SurjectivityReport {
    bool surjective = false;
    std::vector<Poly> subalgebra_gens;  // {z_i^q} followed by {alpha_j}, in A
    std::vector<SubalgebraCert> certs;  // one per target variable
};

SurjectivityReport frobenius_surjective(const FrobeniusData& fd, Budget& budget);

struct InjectivityReport {
    bool injective = false;
    IdealHandle kernel; // of psi, as an ideal of B
};

InjectivityReport frobenius_injective(const FrobeniusData& fd, Budget& budget);

bool frobenius_iso(const FrobeniusData& fd, Budget& budget);

// Verdicts across e = 1..e_max; iso must not depend on e.
struct IterateReport {
    unsigned e_max = 0;
    std::vector<bool> surjective, injective, iso;
    bool coherent = false;
};

IterateReport iterate_consistency(const AlgebraMap& alpha, unsigned e_max, Budget& budget);

// F^e_* A as a B-module: the exponent box {z^v : 0 <= v_i < q} generates, and
// the relation rows present it when the box stays within max_generators.
struct FstarModule {
    bool generators_materialized = false;
    std::vector<Monomial> generators; // in A's ambient variables
    bool presentation_computed = false;
    ModulePresentation presentation;  // over B
};

FstarModule fstar_module_generators(const FrobeniusData& fd, std::size_t max_generators,
                                    Budget& budget);

} // namespace kunz
