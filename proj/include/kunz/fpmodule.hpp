#pragma once

#include "kunz/algebra.hpp"

namespace kunz {

// Finitely presented module over a presented ring: the cokernel of the map
// ring^k -> ring^free_rank whose columns are `relations`.
struct ModulePresentation {
    RingPtr ring;
    std::uint32_t free_rank = 0;
    std::vector<std::vector<Poly>> relations; // each entry has free_rank components
};

// Validates shapes and normal-forms every entry.
ModulePresentation make_module(RingPtr ring, std::uint32_t free_rank,
                               std::vector<std::vector<Poly>> relations, Budget& budget);

// Module GB of the relation submodule together with I * e_i for every ring
// relation, position-over-term over grevlex.
ModuleBasis module_relations_gb(const ModulePresentation& m, Budget& budget);

// Is v in the submodule of ring^rank spanned by m.relations (over the
// quotient ring)?
bool submodule_membership(const ModulePresentation& m, const std::vector<Poly>& v, Budget& budget);

// Zero as a quotient: every unit vector lies in the relation submodule.
bool module_is_zero(const ModulePresentation& m, Budget& budget);

struct ModuleDim {
    bool finite = false;
    std::uint64_t dim = 0;
};

// F_p-dimension of the cokernel via the module staircase.
ModuleDim module_fp_dimension(const ModulePresentation& m, Budget& budget);

// Ideal of (free_rank - j)-minors of the presentation matrix.  Conventions:
// (1) for j >= free_rank, (0) when the minor size exceeds the column count.
IdealHandle fitting_ideal(const ModulePresentation& m, std::uint32_t j, Budget& budget);

// Fitt_{r-1} = (0) and Fitt_r = (1): finitely presented + this test is
// projectivity of constant rank r.
bool module_is_projective_of_rank(const ModulePresentation& m, std::uint32_t r, Budget& budget);

// F_p-dimension of Hom_ring(coker(src), coker(dst)) by dense linear algebra
// over the target staircase.  Throws NotArtinian when dst is not a finite
// F_p-space.
std::uint64_t module_hom_dimension(const ModulePresentation& src, const ModulePresentation& dst,
                                   Budget& budget);

} // namespace kunz
