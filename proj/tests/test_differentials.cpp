#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kunz/differentials.hpp"

using namespace kunz;

namespace {

const MonomialOrder grev = MonomialOrder::grevlex();

Poly mk(const PolyRing& R, std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>> spec) {
    std::vector<Term> ts;
    for (auto& [c, e] : spec) ts.push_back(Term{Monomial(e), R.field().reduce(c)});
    return R.from_terms(std::move(ts), grev);
}

// F_3[t][x]/(x^3 - x - t) over its base, fiber variable x.
std::pair<RingPtr, AlgebraMap> artin_schreier(Budget& budget) {
    PrimeField f(3);
    RingPtr base = make_ring(f, {"t"}, {});
    PolyRing amb(f, {"t", "x"});
    RingPtr A = extend_ring(base, {"x"}, {mk(amb, {{1, {0, 3}}, {-1, {0, 1}}, {-1, {1, 0}}})});
    AlgebraMap alpha = structure_map(A);
    (void)budget;
    return {A, alpha};
}

} // namespace

TEST_CASE("omega: pinned presentations") {
    Budget budget;
    PrimeField f2(2), f3(3);

    RingPtr Fx = make_ring(f2, {"x"}, {});
    OmegaPresentation free1 = omega(structure_map(Fx), budget);
    CHECK(free1.module.free_rank == 1);
    CHECK(free1.module.relations.empty());
    CHECK_FALSE(omega_is_zero(structure_map(Fx), budget));

    auto [as, alpha] = artin_schreier(budget);
    OmegaPresentation oas = omega(alpha, budget);
    REQUIRE(oas.module.free_rank == 1);
    REQUIRE(oas.module.relations.size() == 1);
    // Jacobian column 3x^2 - 1 = -1, a unit.
    CHECK(as->ambient().to_string(oas.module.relations[0][0]) == "2");
    CHECK(omega_is_zero(alpha, budget));

    // Inseparable cover: d(x^p - u)/dx = 0 in char p.
    RingPtr base = make_ring(f3, {"u"}, {});
    PolyRing amb(f3, {"u", "x"});
    RingPtr insep = extend_ring(base, {"x"}, {mk(amb, {{1, {0, 3}}, {-1, {1, 0}}})});
    OmegaPresentation oi = omega(structure_map(insep), budget);
    CHECK(oi.module.free_rank == 1);
    CHECK(oi.module.relations.empty()); // zero column dropped
    CHECK_FALSE(omega_is_zero(structure_map(insep), budget));
}

TEST_CASE("omega_is_zero: pinned examples") {
    Budget budget;
    PrimeField f2(2), f3(3);

    RingPtr as = artin_schreier(budget).first;
    CHECK(omega_is_zero(identity_map(as), budget));

    PolyRing amb(f2, {"x"});
    RingPtr dual = make_ring(f2, {"x"}, {mk(amb, {{1, {2}}})});
    CHECK_FALSE(omega_is_zero(structure_map(dual), budget));

    // Closed immersion: no fiber variables at all.
    RingPtr base = make_ring(f3, {"u"}, {});
    RingPtr over = extend_ring(base, {}, {});
    RingPtr closed = quotient_ring(over, {over->ambient().variable(0)});
    CHECK(omega_is_zero(structure_map(closed), budget));
}

TEST_CASE("jacobian entries match partial derivatives") {
    Budget budget;
    auto [as, alpha] = artin_schreier(budget);
    OmegaPresentation o = omega(alpha, budget);
    REQUIRE(o.positions.size() == 1);
    std::size_t x = o.positions[0];
    CHECK(x == 1);
    const Poly& rel = as->relations()[0];
    Poly expect = as->nf(as->ambient().partial_derivative(rel, x, grev), budget);
    CHECK(o.module.relations[0][0] == expect);
}

TEST_CASE("general maps fall back to the full jacobian presentation") {
    Budget budget;
    PrimeField f3(3);
    // Same inseparable cover, but handed over as a bare map between rings
    // with no recorded base: every variable gets a dx slot.
    PolyRing amb(f3, {"u", "x"});
    RingPtr A = make_ring(f3, {"u", "x"}, {mk(amb, {{1, {0, 3}}, {-1, {1, 0}}})});
    RingPtr R = make_ring(f3, {"u"}, {});
    AlgebraMap alpha = check_map(R, A, {A->ambient().variable(0)}, budget);
    OmegaPresentation o = omega(alpha, budget);
    CHECK(o.module.free_rank == 2);
    CHECK_FALSE(omega_is_zero(alpha, budget));

    // The aligned and general routes agree on the zero verdict.
    RingPtr base = make_ring(f3, {"u"}, {});
    RingPtr aligned = extend_ring(base, {"x"}, {mk(amb, {{1, {0, 3}}, {-1, {1, 0}}})});
    CHECK(omega_is_zero(structure_map(aligned), budget) == omega_is_zero(alpha, budget));
}

TEST_CASE("derivation space dimensions") {
    Budget budget;
    PrimeField f2(2), f3(3);

    PolyRing amb2(f2, {"x"});
    RingPtr A = make_ring(f2, {"x"}, {mk(amb2, {{1, {2}}})});
    ModulePresentation M = make_module(A, 1, {{A->ambient().variable(0)}}, budget);
    CHECK(derivation_space_dimension(structure_map(A), M, budget) == 1);

    auto [as, alpha] = artin_schreier(budget);
    ModulePresentation Mas = make_module(
        as, 1, {{as->ambient().variable(0)}, {as->ambient().variable(1)}}, budget);
    CHECK(derivation_space_dimension(alpha, Mas, budget) == 0); // omega vanishes

    PolyRing amb3(f3, {"x"});
    RingPtr B = make_ring(f3, {"x"}, {mk(amb3, {{1, {3}}})});
    ModulePresentation MB = make_module(B, 1, {{B->ambient().variable(0)}}, budget);
    CHECK(derivation_space_dimension(structure_map(B), MB, budget) == 1);

    RingPtr poly = make_ring(f2, {"x"}, {});
    ModulePresentation inf = make_module(poly, 1, {}, budget);
    CHECK_THROWS_AS(derivation_space_dimension(structure_map(poly), inf, budget), NotArtinian);
}

TEST_CASE("unramified passes to quotients") {
    Budget budget;
    auto [as, alpha] = artin_schreier(budget);
    REQUIRE(omega_is_zero(alpha, budget));
    // Quotient by the fiber variable: still unramified over the same base.
    RingPtr cut = quotient_ring(as, {as->ambient().variable(1)});
    CHECK(omega_is_zero(structure_map(cut), budget));
}
