#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kunz/algebra.hpp"
#include "kunz/fpmodule.hpp"

namespace kunz {

enum class ExtensionKind { SquareZero, PInfinitesimal };

// Artinian ring C with a nilpotent ideal I, the projection C -> C/I, and a
// base point R -> C.  `kind` records which nilpotence law was certified on
// construction: I^2 = 0, or the strictly weaker I^[p] = 0.
struct SquareZeroExtension {
    RingPtr c;
    IdealHandle ideal;
    ExtensionKind kind = ExtensionKind::SquareZero;
    AlgebraMap quotient; // C -> C/I
    AlgebraMap base_map; // R -> C
};

// Validates finite dimension of C, the nilpotence law claimed by `kind`, and
// that `quotient` kills every ideal generator.
SquareZeroExtension make_square_zero(RingPtr c, std::vector<Poly> ideal_gens, ExtensionKind kind,
                                     AlgebraMap quotient, AlgebraMap base_map, Budget& budget);

// A + M with M * M = 0.  The carrier presents A's variables followed by one
// fresh variable per module generator; the projection kills those, and the
// zero section splits it.
struct TrivialExtension {
    RingPtr a;
    ModulePresentation m;
    RingPtr carrier;
    std::vector<std::size_t> m_vars; // carrier indices of the module coordinates
    AlgebraMap projection;           // carrier -> A
    AlgebraMap section;              // A -> carrier
};

TrivialExtension trivial_extension(const RingPtr& a, const ModulePresentation& m, Budget& budget);

// Views a trivial extension as a square-zero extension of A over alpha's
// source: C = carrier, I = (module coordinates), base point = section after
// alpha.
SquareZeroExtension extension_of_trivial(const TrivialExtension& xi, const AlgebraMap& alpha,
                                         Budget& budget);

// True when theta: A -> C/I closes the square against ext's base point, i.e.
// theta after alpha equals quotient after base_map.
bool lift_problem_compatible(const AlgebraMap& alpha, const SquareZeroExtension& ext,
                             const AlgebraMap& theta, Budget& budget);

// Every R-algebra map A -> C whose projection is theta, by brute force over
// coset representatives theta(z_i) + I per generator.  Results carry
// normal-form images and come back sorted by rendered image tuple, so the
// list is deterministic.  Throws IncompatibleBase when the square does not
// commute, BudgetExceeded when the tuple count passes max_tuples.
std::vector<AlgebraMap> enumerate_lifts(const AlgebraMap& alpha, const SquareZeroExtension& ext,
                                        const AlgebraMap& theta, Budget& budget,
                                        std::uint64_t max_tuples = 1'000'000);

// Lift uniqueness over a p-infinitesimal point: when the relative Frobenius
// of alpha is surjective, the lift set must have at most one element.  A
// non-surjective alpha turns the run into a reported control instead of a
// claim.
struct XiReport {
    bool surjective = false;          // relative Frobenius of alpha, e = 1
    bool applicable = false;          // surjective: the uniqueness claim is in force
    std::size_t lift_count = 0;
    bool differences_in_ideal = true; // generator differences of lift pairs lie in I
    bool pass = false;                // applicable implies lift_count <= 1
    std::vector<AlgebraMap> lifts;
};

XiReport xi_uniqueness_check(const AlgebraMap& alpha, const SquareZeroExtension& ext,
                             const AlgebraMap& theta, Budget& budget);

// Counts R-algebra sections of A + M -> A two ways: brute force against
// p^dim Hom_A(Omega_{A/R}, M).  The adjunction makes the two numbers equal;
// `agree` reports the comparison, callers assert it.
struct SectionCount {
    std::uint64_t sections = 0;
    std::uint64_t p_power = 0;
    bool agree = false;
};

SectionCount section_count_vs_derivations(const AlgebraMap& alpha, const ModulePresentation& m,
                                          Budget& budget);

// Fixed generated family of small extensions at the origin of alpha's target.
// Entries whose evaluation maps are not well defined on alpha's rings (a
// relation with nonzero constant term) are silently skipped, so the bank is
// exactly the coherent lift problems for this alpha.
struct BankCase {
    std::string name;
    SquareZeroExtension ext;
    AlgebraMap theta; // alpha.target -> ext.quotient.target
};

std::vector<BankCase> deformation_bank(const AlgebraMap& alpha, Budget& budget);

// Runs every bank case through enumerate_lifts and aggregates the counts.
// Budget blowups on a single case mark that entry instead of aborting the
// survey.
struct LiftSurvey {
    struct Entry {
        std::string name;
        ExtensionKind kind = ExtensionKind::SquareZero;
        bool attempted = false; // false when the enumeration budget tripped
        std::size_t lifts = 0;
    };
    std::vector<Entry> entries;
    std::size_t attempted = 0;
    std::size_t max_lifts = 0;      // over attempted entries
    bool any_multi = false;         // some attempted entry saw >= 2 lifts
    bool all_at_most_one = true;    // every attempted entry saw <= 1
    bool any_exists = false;        // some attempted entry saw >= 1
};

LiftSurvey lift_survey(const AlgebraMap& alpha, Budget& budget);

} // namespace kunz
