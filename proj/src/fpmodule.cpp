#include "kunz/fpmodule.hpp"

#include <algorithm>

namespace kunz {

namespace {

const MonomialOrder kGrevlex = MonomialOrder::grevlex();

ModuleOrder pot_order() { return ModuleOrder::pot(MonomialOrder::grevlex()); }

// Deterministic k-subset enumeration in lexicographic order.
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

Poly minor_det(const PolyRing& R, const ModulePresentation& m,
               const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
               Budget& budget) {
    budget.charge(1, "minor expansion");
    std::size_t k = rows.size();
    auto entry = [&](std::size_t r, std::size_t c) -> const Poly& {
        return m.relations[cols[c]][rows[r]];
    };
    if (k == 1) return entry(0, 0);
    Poly det = R.zero();
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < k; ++c) {
        if (entry(0, c).is_zero()) continue;
        std::vector<std::size_t> sub_cols;
        for (std::size_t j = 0; j < k; ++j)
            if (j != c) sub_cols.push_back(cols[j]);
        std::vector<std::size_t> top_cols(1, cols[c]);
        Poly cof = minor_det(R, m, sub_rows, sub_cols, budget);
        Poly term = R.mul(entry(0, c), cof, kGrevlex);
        det = (c % 2 == 0) ? R.add(det, term, kGrevlex) : R.sub(det, term, kGrevlex);
    }
    return det;
}

} // namespace

ModulePresentation make_module(RingPtr ring, std::uint32_t free_rank,
                               std::vector<std::vector<Poly>> relations, Budget& budget) {
    for (auto& row : relations) {
        if (row.size() != free_rank) throw AmbientMismatch("relation component count");
        for (auto& f : row) f = ring->nf(f, budget);
    }
    // Drop all-zero relations; they carry nothing.
    std::vector<std::vector<Poly>> kept;
    for (auto& row : relations) {
        bool z = true;
        for (const auto& f : row)
            if (!f.is_zero()) z = false;
        if (!z) kept.push_back(std::move(row));
    }
    return ModulePresentation{std::move(ring), free_rank, std::move(kept)};
}

ModuleBasis module_relations_gb(const ModulePresentation& m, Budget& budget) {
    const PolyRing& R = m.ring->ambient();
    ModuleOrder ord = pot_order();
    std::vector<MVec> gens;
    for (const auto& row : m.relations) gens.push_back(to_mvec(R, row, ord));
    for (const auto& f : m.ring->relations())
        for (std::uint32_t i = 0; i < m.free_rank; ++i) {
            std::vector<Poly> comps(m.free_rank, R.zero());
            comps[i] = f;
            gens.push_back(to_mvec(R, comps, ord));
        }
    return module_groebner(R, m.free_rank, std::move(gens), ord, budget);
}

bool submodule_membership(const ModulePresentation& m, const std::vector<Poly>& v,
                          Budget& budget) {
    if (v.size() != m.free_rank) throw AmbientMismatch("vector component count");
    ModuleBasis gb = module_relations_gb(m, budget);
    MVec probe = to_mvec(m.ring->ambient(), v, gb.order);
    return module_nf(m.ring->ambient(), probe, gb, budget).is_zero();
}

bool module_is_zero(const ModulePresentation& m, Budget& budget) {
    if (m.free_rank == 0) return true;
    const PolyRing& R = m.ring->ambient();
    ModuleBasis gb = module_relations_gb(m, budget);
    for (std::uint32_t i = 0; i < m.free_rank; ++i) {
        std::vector<Poly> unit(m.free_rank, R.zero());
        unit[i] = R.one();
        MVec probe = to_mvec(R, unit, gb.order);
        if (!module_nf(R, probe, gb, budget).is_zero()) return false;
    }
    return true;
}

ModuleDim module_fp_dimension(const ModulePresentation& m, Budget& budget) {
    if (m.free_rank == 0) return ModuleDim{true, 0};
    ModuleBasis gb = module_relations_gb(m, budget);
    ModuleStaircase st = module_standard_monomials(m.ring->ambient(), gb, budget);
    if (!st.finite) return ModuleDim{false, 0};
    return ModuleDim{true, st.entries.size()};
}

IdealHandle fitting_ideal(const ModulePresentation& m, std::uint32_t j, Budget& budget) {
    const PolyRing& R = m.ring->ambient();
    if (j >= m.free_rank) return make_ideal(m.ring, {R.one()}, budget);
    std::size_t k = m.free_rank - j;
    if (k > m.relations.size()) return make_ideal(m.ring, {}, budget);
    if (k > 8) throw BudgetExceeded("fitting minor size beyond desk scale");

    std::vector<Poly> minors;
    std::vector<std::size_t> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = i;
    do {
        std::vector<std::size_t> cols(k);
        for (std::size_t i = 0; i < k; ++i) cols[i] = i;
        do {
            minors.push_back(minor_det(R, m, rows, cols, budget));
        } while (next_subset(cols, m.relations.size()));
    } while (next_subset(rows, m.free_rank));
    return make_ideal(m.ring, std::move(minors), budget);
}

bool module_is_projective_of_rank(const ModulePresentation& m, std::uint32_t r, Budget& budget) {
    if (r > 0 && !ideal_is_zero(fitting_ideal(m, r - 1, budget), budget)) return false;
    return ideal_is_unit(fitting_ideal(m, r, budget), budget);
}

std::uint64_t module_hom_dimension(const ModulePresentation& src, const ModulePresentation& dst,
                                   Budget& budget) {
    if (src.ring.get() != dst.ring.get() && !structurally_equal(*src.ring, *dst.ring))
        throw AmbientMismatch("hom across different rings");
    const PolyRing& R = src.ring->ambient();
    std::size_t n = src.free_rank;
    if (n == 0) return 0;

    ModuleBasis gb = module_relations_gb(dst, budget);
    ModuleStaircase st = module_standard_monomials(R, gb, budget);
    if (!st.finite) throw NotArtinian("hom target is not a finite F_p-space");
    std::size_t D = st.entries.size();
    if (D == 0) return 0;

    auto coord = [&](std::uint32_t pos, const Monomial& mono) -> std::size_t {
        for (std::size_t b = 0; b < D; ++b)
            if (st.entries[b].first == pos && st.entries[b].second == mono) return b;
        throw InternalError("normal form left the staircase");
    };

    // Unknowns: D coordinates per source generator image.  One equation per
    // (source relation, target basis element).
    GFMatrix mat(R.field(), src.relations.size() * D, n * D);
    for (std::size_t rix = 0; rix < src.relations.size(); ++rix) {
        const auto& rel = src.relations[rix];
        for (std::size_t i = 0; i < n; ++i) {
            if (rel[i].is_zero()) continue;
            Poly entry = R.resorted(rel[i], kGrevlex);
            for (std::size_t b = 0; b < D; ++b) {
                std::vector<MTerm> terms;
                for (const auto& t : entry.terms())
                    terms.push_back(
                        MTerm{st.entries[b].first, t.mono.mul(st.entries[b].second), t.coeff});
                MVec prod = mvec_from_terms(R, std::move(terms), gb.order);
                MVec red = module_nf(R, prod, gb, budget);
                for (const auto& t : red.terms())
                    mat.at(rix * D + coord(t.pos, t.mono), i * D + b) =
                        R.field().add(mat.at(rix * D + coord(t.pos, t.mono), i * D + b), t.coeff);
            }
        }
    }
    return n * D - mat.row_reduce();
}

} // namespace kunz
