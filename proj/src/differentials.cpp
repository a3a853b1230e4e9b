#include "kunz/differentials.hpp"

namespace kunz {

namespace {

const MonomialOrder kGrevlex = MonomialOrder::grevlex();

// Does alpha coincide with the structure map recorded on its target?
bool is_structure_map(const AlgebraMap& alpha) {
    const RingPresentation& A = *alpha.target;
    if (A.base()) {
        if (!structurally_equal(*alpha.source, *A.base())) return false;
    } else {
        if (alpha.source->ambient().nvars() != 0 || !alpha.source->relations().empty())
            return false;
    }
    if (alpha.images.size() != A.base_images().size()) return false;
    for (std::size_t i = 0; i < alpha.images.size(); ++i)
        if (!(alpha.images[i] == A.base_images()[i])) return false;
    return true;
}

} // namespace

OmegaPresentation omega(const AlgebraMap& alpha, Budget& budget) {
    const RingPtr& A = alpha.target;
    const PolyRing& R = A->ambient();
    std::vector<std::size_t> positions;
    std::vector<std::vector<Poly>> cols;
    auto jacobian_column = [&](const Poly& f) {
        std::vector<Poly> col;
        col.reserve(positions.size());
        for (auto i : positions) col.push_back(R.partial_derivative(f, i, kGrevlex));
        return col;
    };
    if (is_structure_map(alpha)) {
        positions = A->fiber_vars();
        for (const auto& f : A->relations()) cols.push_back(jacobian_column(f));
    } else {
        for (std::size_t i = 0; i < R.nvars(); ++i) positions.push_back(i);
        for (const auto& f : A->relations()) cols.push_back(jacobian_column(f));
        for (const auto& g : alpha.images) cols.push_back(jacobian_column(g));
    }
    ModulePresentation m =
        make_module(A, static_cast<std::uint32_t>(positions.size()), std::move(cols), budget);
    return OmegaPresentation{std::move(m), std::move(positions)};
}

bool omega_is_zero(const AlgebraMap& alpha, Budget& budget) {
    return module_is_zero(omega(alpha, budget).module, budget);
}

std::uint64_t derivation_space_dimension(const AlgebraMap& alpha, const ModulePresentation& M,
                                         Budget& budget) {
    return module_hom_dimension(omega(alpha, budget).module, M, budget);
}

} // namespace kunz
