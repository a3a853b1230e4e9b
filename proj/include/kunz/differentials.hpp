#pragma once

#include "kunz/fpmodule.hpp"

namespace kunz {

// Kahler differentials of alpha: R -> A, presented as the cokernel of the
// jacobian.  When alpha is the declared structure map of its target, the free
// module runs over the fiber variables only; for a general map every ambient
// variable gets a dx slot and the images of alpha contribute extra columns
// (their differentials vanish relative to the source).
struct OmegaPresentation {
    ModulePresentation module;
    std::vector<std::size_t> positions; // ambient variable index behind each dx slot
};

OmegaPresentation omega(const AlgebraMap& alpha, Budget& budget);

// Zero differentials characterize the formally unramified maps.
bool omega_is_zero(const AlgebraMap& alpha, Budget& budget);

// F_p-dimension of Hom_A(Omega_alpha, M) = Der_R(A, M).  Throws NotArtinian
// when M is not a finite F_p-space.
std::uint64_t derivation_space_dimension(const AlgebraMap& alpha, const ModulePresentation& M,
                                         Budget& budget);

} // namespace kunz
