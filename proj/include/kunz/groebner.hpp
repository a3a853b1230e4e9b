#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kunz/budget.hpp"
#include "kunz/poly.hpp"

namespace kunz {

// ---------------------------------------------------------------------------
// Module terms and vectors.
//
// The engine runs Buchberger on submodules of a free module P^rank; ideals are
// the rank-one case.  A vector is a flat list of (position, monomial, coeff)
// terms kept strictly descending under the active module order.
// ---------------------------------------------------------------------------

struct MTerm {
    std::uint32_t pos;
    Monomial mono;
    std::uint32_t coeff;
};

class MVec {
public:
    MVec() = default;
    bool is_zero() const { return terms_.empty(); }
    const MTerm& lead() const { return terms_.front(); }
    const std::vector<MTerm>& terms() const { return terms_; }
    std::vector<MTerm>& mutable_terms() { return terms_; }

private:
    std::vector<MTerm> terms_;
    friend MVec mvec_from_terms(const PolyRing&, std::vector<MTerm>, const struct ModuleOrder&);
};

// Module order: an optional dominant variable block (for elimination), then
// position priority (lower rank = greater; identity by default, so component 0
// dominates), then the base monomial order.
struct ModuleOrder {
    MonomialOrder base = MonomialOrder::grevlex();
    std::vector<std::uint8_t> elim_mask; // empty = no dominant block
    std::vector<std::uint32_t> pos_rank; // empty = identity priority

    int compare(const MTerm& a, const MTerm& b) const;
    bool greater(const MTerm& a, const MTerm& b) const { return compare(a, b) > 0; }

    static ModuleOrder pot(MonomialOrder base) { return ModuleOrder{std::move(base), {}, {}}; }
};

MVec mvec_from_terms(const PolyRing& ring, std::vector<MTerm> terms, const ModuleOrder& ord);
MVec to_mvec(const PolyRing& ring, const std::vector<Poly>& components, const ModuleOrder& ord);
std::vector<Poly> from_mvec(const PolyRing& ring, const MVec& v, std::uint32_t rank);
MVec mvec_add(const PolyRing& ring, const MVec& a, const MVec& b, const ModuleOrder& ord);
MVec mvec_mul_term(const PolyRing& ring, const MVec& v, const Monomial& m, std::uint32_t c);

struct ModuleBasis {
    std::vector<MVec> gens; // reduced, monic, ascending leads
    ModuleOrder order;
    std::uint32_t rank = 1;
};

// Buchberger with chain-criterion pruning (plus the product criterion in the
// ideal case), full inter-reduction, deterministic tie-breaking, and a step
// budget.  Every emitted basis is re-checked against the Buchberger criterion
// before it is returned.
ModuleBasis module_groebner(const PolyRing& ring, std::uint32_t rank, std::vector<MVec> gens,
                            const ModuleOrder& ord, Budget& budget);

MVec module_nf(const PolyRing& ring, const MVec& v, const ModuleBasis& basis, Budget& budget);

bool module_buchberger_holds(const PolyRing& ring, const ModuleBasis& basis, Budget& budget);

// ---------------------------------------------------------------------------
// Ideal layer.
// ---------------------------------------------------------------------------

struct GroebnerBasis {
    std::vector<Poly> gens; // reduced, monic, ascending leads
    MonomialOrder order = MonomialOrder::grevlex();
    bool reduced = true;
};

GroebnerBasis groebner_basis(const PolyRing& ring, std::vector<Poly> gens,
                             const MonomialOrder& ord, Budget& budget);

// Unique normal form: fully reduced, no term divisible by a basis lead.
Poly normal_form(const PolyRing& ring, const Poly& f, const GroebnerBasis& gb, Budget& budget);

bool buchberger_criterion_holds(const PolyRing& ring, const GroebnerBasis& gb, Budget& budget);

// Generators of I cap F_p[kept variables]; drop[i] != 0 marks a dropped
// variable.  Results live in the same ambient ring but only use kept
// variables.
std::vector<Poly> eliminate(const PolyRing& ring, const std::vector<Poly>& gens,
                            const std::vector<std::uint8_t>& drop, Budget& budget);

struct Staircase {
    bool finite = false;
    std::vector<Monomial> monomials; // grevlex-ascending when finite
};

// Monomials outside the leading-term ideal.  finite == false marks an
// infinite staircase; monomials is empty in that case.
Staircase standard_monomials(const PolyRing& ring, const GroebnerBasis& gb, Budget& budget);

// Same computation from a raw list of lead monomials in an n-variable
// lattice.
Staircase staircase_from_leads(std::size_t n, const std::vector<Monomial>& leads, Budget& budget);

struct ModuleStaircase {
    bool finite = false;
    std::vector<std::pair<std::uint32_t, Monomial>> entries; // (position, monomial)
};

ModuleStaircase module_standard_monomials(const PolyRing& ring, const ModuleBasis& basis,
                                          Budget& budget);

} // namespace kunz
