#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kunz/groebner.hpp"

namespace kunz {

class RingPresentation;
using RingPtr = std::shared_ptr<const RingPresentation>;

// Finitely presented F_p-algebra F_p[vars]/I together with its structure over
// a designated base ring (base == nullptr means F_p itself).  Values are
// immutable after construction; Groebner bases are cached per order behind a
// mutex, computed once.
class RingPresentation {
public:
    RingPresentation(PolyRing ambient, std::vector<Poly> relations, RingPtr base,
                     std::vector<Poly> base_images, std::vector<std::size_t> fiber_vars);

    const PolyRing& ambient() const { return ambient_; }
    const std::vector<Poly>& relations() const { return relations_; }
    const RingPtr& base() const { return base_; }
    const std::vector<Poly>& base_images() const { return base_images_; }
    const std::vector<std::size_t>& fiber_vars() const { return fiber_vars_; }

    const GroebnerBasis& gb(const MonomialOrder& ord, Budget& budget) const;
    Poly nf(const Poly& f, Budget& budget) const; // grevlex normal form
    bool is_zero(const Poly& f, Budget& budget) const;
    bool equal(const Poly& a, const Poly& b, Budget& budget) const;

private:
    PolyRing ambient_;
    std::vector<Poly> relations_;
    RingPtr base_;
    std::vector<Poly> base_images_;
    std::vector<std::size_t> fiber_vars_;

    mutable std::mutex gb_mutex_;
    mutable std::map<std::string, std::shared_ptr<const GroebnerBasis>> gb_cache_;
};

// F_p with no variables.
RingPtr trivial_ring(const PrimeField& field);

// F_p[names]/(relations) over the prime field; every variable is a fiber
// variable.
RingPtr make_ring(const PrimeField& field, std::vector<std::string> names,
                  std::vector<Poly> relations);

// base[new_vars]/(relations): ambient is base's variables (same indices)
// followed by the new ones; relations are given in the extended ambient and
// the base relations are carried over.
RingPtr extend_ring(const RingPtr& base, const std::vector<std::string>& new_vars,
                    std::vector<Poly> relations);

// Same ambient and base structure, extra relations adjoined.
RingPtr quotient_ring(const RingPtr& ring, std::vector<Poly> extra);

bool structurally_equal(const RingPresentation& a, const RingPresentation& b);

std::string describe(const RingPresentation& ring);

// ---------------------------------------------------------------------------
// Maps.
// ---------------------------------------------------------------------------

struct AlgebraMap {
    RingPtr source;
    RingPtr target;
    std::vector<Poly> images; // one per source ambient variable, reduced in target
    std::string label;
};

// Validates that every source relation dies in the target; throws
// NotWellDefined with the offending relation index otherwise.
AlgebraMap check_map(RingPtr source, RingPtr target, std::vector<Poly> images, Budget& budget,
                     std::string label = "");

// Same shape, no well-definedness check; for maps correct by construction.
AlgebraMap unchecked_map(RingPtr source, RingPtr target, std::vector<Poly> images,
                         std::string label = "");

Poly apply_map(const AlgebraMap& f, const Poly& value, Budget& budget);
AlgebraMap compose(const AlgebraMap& outer, const AlgebraMap& inner, Budget& budget);
AlgebraMap identity_map(const RingPtr& ring);
// The structure map base -> ring (source is trivial_ring for base == null).
AlgebraMap structure_map(const RingPtr& ring);

// ---------------------------------------------------------------------------
// Ideals.
// ---------------------------------------------------------------------------

struct IdealHandle {
    RingPtr ring;
    std::vector<Poly> gens; // reduced mod the ring's relations, deduplicated, sorted
};

IdealHandle make_ideal(RingPtr ring, std::vector<Poly> gens, Budget& budget);
// Ideal generated by g^(p^e) for the current generators.
IdealHandle frobenius_power(const IdealHandle& ideal, unsigned e, Budget& budget);
bool ideal_is_zero(const IdealHandle& ideal, Budget& budget);
bool ideal_contains(const IdealHandle& ideal, const Poly& f, Budget& budget);
bool ideal_is_unit(const IdealHandle& ideal, Budget& budget);
bool ideal_equal(const IdealHandle& a, const IdealHandle& b, Budget& budget);

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

struct TensorProduct {
    RingPtr ring;     // based over beta's target (the right factor)
    AlgebraMap left;  // alpha.target -> ring
    AlgebraMap right; // beta.target -> ring
};

// alpha: R -> A and beta: R -> C over the same R; returns A tensor_R C.
TensorProduct tensor_over_base(const AlgebraMap& alpha, const AlgebraMap& beta, Budget& budget);

// Kernel of a ring map as an ideal of the source, via tag-variable
// elimination.  Empty generator list == injective.
IdealHandle ring_map_kernel(const AlgebraMap& phi, Budget& budget);

struct SubalgebraCert {
    bool member = false;
    Poly expression;  // polynomial in the tag ring; meaningful when member
    PolyRing tag_ring; // F_p[w1..ws], one tag per subalgebra generator
};

// Does probe lie in the F_p-subalgebra of `ring` generated by gens?
SubalgebraCert subalgebra_membership(const RingPtr& ring, const std::vector<Poly>& gens,
                                     const Poly& probe, Budget& budget);
// Shares one basis computation across several probes.
std::vector<SubalgebraCert> subalgebra_membership_multi(const RingPtr& ring,
                                                        const std::vector<Poly>& gens,
                                                        const std::vector<Poly>& probes,
                                                        Budget& budget);

struct FpDim {
    bool finite = false;
    std::uint64_t dim = 0;
};

FpDim fp_dimension(const RingPtr& ring, Budget& budget);

// ---------------------------------------------------------------------------
// Module structure over a subring.
// ---------------------------------------------------------------------------

// Kernel of the map source^s -> target sending e_i to gens[i] (an
// alpha(source)-module relation search): each returned row is a vector of
// length s with entries in the source ring, reduced mod its relations.
std::vector<std::vector<Poly>> subring_module_kernel(const AlgebraMap& alpha,
                                                     const std::vector<Poly>& gens,
                                                     Budget& budget);

struct SubringModuleData {
    bool module_finite = false;
    std::vector<Monomial> generators; // monomials in target variables
    bool presentation_computed = false;
    std::vector<std::vector<Poly>> relations; // rows over the source ring
};

// Detects whether target is module-finite over alpha(source) and, when the
// generator count stays within max_generators, computes the relation rows.
SubringModuleData module_over_subring(const AlgebraMap& alpha, std::size_t max_generators,
                                      Budget& budget);

} // namespace kunz
