#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "kunz/deform.hpp"
#include "kunz/differentials.hpp"
#include "kunz/frobenius.hpp"

using namespace kunz;

namespace {

const MonomialOrder grev = MonomialOrder::grevlex();

Poly mk(const PolyRing& R, std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>> spec) {
    std::vector<Term> ts;
    for (auto& [c, e] : spec) ts.push_back(Term{Monomial(e), R.field().reduce(c)});
    return R.from_terms(std::move(ts), grev);
}

// F_3[t][x]/(x^3 - x - t) over its base, fiber variable x.
AlgebraMap artin_schreier() {
    PrimeField f(3);
    RingPtr base = make_ring(f, {"t"}, {});
    PolyRing amb(f, {"t", "x"});
    RingPtr A = extend_ring(base, {"x"}, {mk(amb, {{1, {0, 3}}, {-1, {0, 1}}, {-1, {1, 0}}})});
    return structure_map(A);
}

// F_2[t][x]/(x^2 - t^3) over its base.
AlgebraMap cusp() {
    PrimeField f(2);
    RingPtr base = make_ring(f, {"t"}, {});
    PolyRing amb(f, {"t", "x"});
    RingPtr A = extend_ring(base, {"x"}, {mk(amb, {{1, {0, 2}}, {-1, {3, 0}}})});
    return structure_map(A);
}

// F_3[u][x]/(x^2 - u) over its base.
AlgebraMap ramified_cover() {
    PrimeField f(3);
    RingPtr base = make_ring(f, {"u"}, {});
    PolyRing amb(f, {"u", "x"});
    RingPtr A = extend_ring(base, {"x"}, {mk(amb, {{1, {0, 2}}, {-1, {1, 0}}})});
    return structure_map(A);
}

// F_3[u] ->> F_3[u]/(u).
AlgebraMap closed_immersion() {
    PrimeField f(3);
    RingPtr base = make_ring(f, {"u"}, {});
    RingPtr A = quotient_ring(base, {base->ambient().variable(0)});
    return structure_map(A);
}

// Dual numbers F_p[e]/(e^2) with base point R -> C at the origin and the
// projection to F_p.
SquareZeroExtension dual_numbers(const RingPtr& r, Budget& budget) {
    const PrimeField& f = r->ambient().field();
    PolyRing amb(f, {"e"});
    RingPtr c = make_ring(f, {"e"}, {amb.mul(amb.variable(0), amb.variable(0), grev)});
    RingPtr pt = trivial_ring(f);
    AlgebraMap quot = check_map(c, pt, {pt->ambient().zero()}, budget);
    AlgebraMap base =
        check_map(r, c, std::vector<Poly>(r->ambient().nvars(), c->ambient().zero()), budget);
    return make_square_zero(c, {c->ambient().variable(0)}, ExtensionKind::SquareZero,
                            std::move(quot), std::move(base), budget);
}

AlgebraMap all_zero(const RingPtr& src, const RingPtr& dst, Budget& budget) {
    return check_map(src, dst, std::vector<Poly>(src->ambient().nvars(), dst->ambient().zero()),
                     budget);
}

} // namespace

TEST_CASE("trivial extension: pinned carriers") {
    Budget budget;
    PrimeField f2(2);

    // Xi(F_2, F_2) is the dual numbers.
    RingPtr pt = trivial_ring(f2);
    ModulePresentation line = make_module(pt, 1, {}, budget);
    TrivialExtension xi0 = trivial_extension(pt, line, budget);
    CHECK(xi0.carrier->ambient().nvars() == 1);
    CHECK(xi0.carrier->ambient().var_names()[0] == "eps1");
    REQUIRE(xi0.carrier->relations().size() == 1);
    CHECK(xi0.carrier->ambient().to_string(xi0.carrier->relations()[0]) == "eps1^2");

    // Xi(A, 0) adds nothing.
    PolyRing ax(f2, {"x"});
    RingPtr A = make_ring(f2, {"x"}, {mk(ax, {{1, {2}}})});
    TrivialExtension xnone = trivial_extension(A, make_module(A, 0, {}, budget), budget);
    CHECK(xnone.carrier->ambient().nvars() == 1);
    CHECK(xnone.carrier->relations().size() == 1);

    // Xi(F_2[x]/(x^2), A/(x)) = F_2[x, eps]/(x^2, x eps, eps^2), unfolded.
    ModulePresentation m = make_module(A, 1, {{A->ambient().variable(0)}}, budget);
    TrivialExtension xi = trivial_extension(A, m, budget);
    REQUIRE(xi.carrier->ambient().nvars() == 2);
    CHECK(xi.m_vars == std::vector<std::size_t>{1});
    std::set<std::string> rels;
    for (const auto& r : xi.carrier->relations())
        rels.insert(xi.carrier->ambient().to_string(r));
    CHECK(rels == std::set<std::string>{"x^2", "x*eps1", "eps1^2"});
    // The projection kills eps and the section splits it.
    CHECK(xi.projection.images.size() == 2);
    CHECK(xi.projection.images[1].is_zero());
    CHECK(xi.section.images.size() == 1);

    // Fresh names dodge collisions.
    RingPtr clash = make_ring(f2, {"eps1"}, {});
    TrivialExtension xc = trivial_extension(clash, make_module(clash, 1, {}, budget), budget);
    CHECK(xc.carrier->ambient().var_names()[1] == "eps1'");
}

TEST_CASE("make_square_zero: law validation") {
    Budget budget;
    PrimeField f3(3);
    PolyRing amb(f3, {"e"});
    Poly e = amb.variable(0);
    RingPtr pt = trivial_ring(f3);

    // e^3 = 0: fails the square-zero law, passes the p-infinitesimal one.
    RingPtr c3 = make_ring(f3, {"e"}, {amb.pow(e, 3, grev)});
    AlgebraMap quot = check_map(c3, pt, {pt->ambient().zero()}, budget);
    AlgebraMap base = unchecked_map(pt, c3, {});
    CHECK_THROWS_AS(make_square_zero(c3, {c3->ambient().variable(0)}, ExtensionKind::SquareZero,
                                     quot, base, budget),
                    Error);
    SquareZeroExtension ok = make_square_zero(c3, {c3->ambient().variable(0)},
                                              ExtensionKind::PInfinitesimal, quot, base, budget);
    CHECK(ok.kind == ExtensionKind::PInfinitesimal);

    // In F_2[e]/(e^3) the p-infinitesimal law fails too: e^[2] = e^2 != 0.
    PrimeField f2(2);
    PolyRing amb2(f2, {"e"});
    RingPtr c2 = make_ring(f2, {"e"}, {amb2.pow(amb2.variable(0), 3, grev)});
    RingPtr pt2 = trivial_ring(f2);
    AlgebraMap quot2 = check_map(c2, pt2, {pt2->ambient().zero()}, budget);
    AlgebraMap base2 = unchecked_map(pt2, c2, {});
    CHECK_THROWS_AS(make_square_zero(c2, {c2->ambient().variable(0)},
                                     ExtensionKind::PInfinitesimal, quot2, base2, budget),
                    Error);

    // Infinite-dimensional carriers are refused.
    RingPtr poly = make_ring(f3, {"e"}, {});
    AlgebraMap quotp = unchecked_map(poly, pt, {pt->ambient().zero()});
    AlgebraMap basep = unchecked_map(pt, poly, {});
    CHECK_THROWS_AS(make_square_zero(poly, {poly->ambient().variable(0)},
                                     ExtensionKind::SquareZero, quotp, basep, budget),
                    NotArtinian);
}

TEST_CASE("enumerate_lifts: pinned counts") {
    Budget budget;
    PrimeField f2(2);

    // Rigidity of the identity: one lift, the empty tuple.
    RingPtr pt2 = trivial_ring(f2);
    SquareZeroExtension dn0 = dual_numbers(pt2, budget);
    AlgebraMap id0 = identity_map(pt2);
    CHECK(enumerate_lifts(structure_map(pt2), dn0, id0, budget).size() == 1);

    // F_2 -> F_2[x] against the dual numbers: x -> 0 and x -> e.
    RingPtr Fx = make_ring(f2, {"x"}, {});
    AlgebraMap alpha = structure_map(Fx);
    SquareZeroExtension dn = dual_numbers(trivial_ring(f2), budget);
    AlgebraMap theta = all_zero(Fx, dn.quotient.target, budget);
    std::vector<AlgebraMap> lifts = enumerate_lifts(alpha, dn, theta, budget);
    REQUIRE(lifts.size() == 2);
    CHECK(dn.c->ambient().to_string(lifts[0].images[0]) == "0");
    CHECK(dn.c->ambient().to_string(lifts[1].images[0]) == "e");
    // Cross-oracle: |Hom(Omega, I)| = p^dim over the same point.
    ModulePresentation fiber = make_module(Fx, 1, {{Fx->ambient().variable(0)}}, budget);
    CHECK(derivation_space_dimension(alpha, fiber, budget) == 1);

    // Artin-Schreier: the candidate c e must satisfy c^3 - c = -c = 0.
    AlgebraMap as = artin_schreier();
    SquareZeroExtension dn3 = dual_numbers(as.source, budget);
    AlgebraMap theta3 = all_zero(as.target, dn3.quotient.target, budget);
    std::vector<AlgebraMap> las = enumerate_lifts(as, dn3, theta3, budget);
    REQUIRE(las.size() == 1);
    CHECK(las[0].images[0].is_zero());
    CHECK(las[0].images[1].is_zero());
}

TEST_CASE("enumerate_lifts: incompatible base and budget trip") {
    Budget budget;
    PrimeField f3(3);

    // Base point t -> d in the carrier, theta evaluates t at 0: the square
    // cannot close.
    AlgebraMap as = artin_schreier();
    PolyRing amb(f3, {"d", "e"});
    Poly vd = amb.variable(0), ve = amb.variable(1);
    RingPtr c = make_ring(f3, {"d", "e"},
                          {amb.mul(vd, vd, grev), amb.mul(vd, ve, grev), amb.mul(ve, ve, grev)});
    PolyRing qamb(f3, {"d"});
    RingPtr q = make_ring(f3, {"d"}, {qamb.mul(qamb.variable(0), qamb.variable(0), grev)});
    AlgebraMap quot = check_map(c, q, {q->ambient().variable(0), q->ambient().zero()}, budget);
    AlgebraMap base = check_map(as.source, c, {c->ambient().variable(0)}, budget);
    SquareZeroExtension ext = make_square_zero(c, {c->ambient().variable(1)},
                                               ExtensionKind::SquareZero, quot, base, budget);
    AlgebraMap theta = all_zero(as.target, q, budget);
    CHECK_THROWS_AS(enumerate_lifts(as, ext, theta, budget), IncompatibleBase);

    // Three free generators against a three-dimensional ideal: 3^9 tuples.
    PrimeField f2(2);
    RingPtr big = make_ring(f2, {"x", "y", "z"}, {});
    PolyRing eamb(f2, {"e1", "e2", "e3"});
    std::vector<Poly> rels;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j)
            rels.push_back(eamb.mul(eamb.variable(i), eamb.variable(j), grev));
    RingPtr c3 = make_ring(f2, {"e1", "e2", "e3"}, std::move(rels));
    RingPtr pt = trivial_ring(f2);
    AlgebraMap quot3 = check_map(
        c3, pt, std::vector<Poly>(3, pt->ambient().zero()), budget);
    AlgebraMap base3 = unchecked_map(pt, c3, {});
    SquareZeroExtension ext3 = make_square_zero(
        c3, {c3->ambient().variable(0), c3->ambient().variable(1), c3->ambient().variable(2)},
        ExtensionKind::SquareZero, quot3, base3, budget);
    AlgebraMap theta3 = all_zero(big, pt, budget);
    CHECK_THROWS_AS(enumerate_lifts(structure_map(big), ext3, theta3, budget, 100),
                    BudgetExceeded);
    CHECK(enumerate_lifts(structure_map(big), ext3, theta3, budget).size() == 512);
}

TEST_CASE("xi uniqueness over p-infinitesimal points") {
    Budget budget;
    PrimeField f3(3);

    // Artin-Schreier against F_3[e]/(e^3): strictly p-infinitesimal.
    AlgebraMap as = artin_schreier();
    PolyRing amb(f3, {"e"});
    RingPtr c = make_ring(f3, {"e"}, {amb.pow(amb.variable(0), 3, grev)});
    RingPtr pt = trivial_ring(f3);
    AlgebraMap quot = check_map(c, pt, {pt->ambient().zero()}, budget);
    AlgebraMap base = check_map(as.source, c, {c->ambient().zero()}, budget);
    SquareZeroExtension ext = make_square_zero(c, {c->ambient().variable(0)},
                                               ExtensionKind::PInfinitesimal, quot, base, budget);
    AlgebraMap theta = all_zero(as.target, pt, budget);
    XiReport rep = xi_uniqueness_check(as, ext, theta, budget);
    CHECK(rep.surjective);
    CHECK(rep.applicable);
    CHECK(rep.lift_count == 1);
    CHECK(rep.pass);

    // Closed immersion: surjective Frobenius, a single pinned lift.
    AlgebraMap ci = closed_immersion();
    SquareZeroExtension dn = dual_numbers(ci.source, budget);
    AlgebraMap thci = all_zero(ci.target, dn.quotient.target, budget);
    XiReport rci = xi_uniqueness_check(ci, dn, thci, budget);
    CHECK(rci.applicable);
    CHECK(rci.lift_count == 1);
    CHECK(rci.pass);

    // Control: a non-surjective alpha reports its multiplicity without
    // claiming anything.
    PrimeField f2(2);
    RingPtr Fx = make_ring(f2, {"x"}, {});
    AlgebraMap alpha = structure_map(Fx);
    SquareZeroExtension dn2 = dual_numbers(trivial_ring(f2), budget);
    AlgebraMap th2 = all_zero(Fx, dn2.quotient.target, budget);
    XiReport ctl = xi_uniqueness_check(alpha, dn2, th2, budget);
    CHECK_FALSE(ctl.surjective);
    CHECK_FALSE(ctl.applicable);
    CHECK(ctl.lift_count == 2);
    CHECK(ctl.differences_in_ideal);
    CHECK(ctl.pass);
}

TEST_CASE("section count equals p^dim Hom(Omega, M)") {
    Budget budget;
    PrimeField f2(2), f3(3);

    // A = F_2[x]/(x^2), M = A/(x).
    PolyRing ax(f2, {"x"});
    RingPtr A = make_ring(f2, {"x"}, {mk(ax, {{1, {2}}})});
    ModulePresentation m = make_module(A, 1, {{A->ambient().variable(0)}}, budget);
    SectionCount sc = section_count_vs_derivations(structure_map(A), m, budget);
    CHECK(sc.sections == 2);
    CHECK(sc.p_power == 2);
    CHECK(sc.agree);

    // Omega = 0: only the zero section.
    RingPtr pt3 = trivial_ring(f3);
    SectionCount s0 =
        section_count_vs_derivations(structure_map(pt3), make_module(pt3, 1, {}, budget), budget);
    CHECK(s0.sections == 1);
    CHECK(s0.p_power == 1);
    CHECK(s0.agree);

    // A = F_3[x]/(x^3), M = A/(x).
    PolyRing ax3(f3, {"x"});
    RingPtr A3 = make_ring(f3, {"x"}, {mk(ax3, {{1, {3}}})});
    ModulePresentation m3 = make_module(A3, 1, {{A3->ambient().variable(0)}}, budget);
    SectionCount sc3 = section_count_vs_derivations(structure_map(A3), m3, budget);
    CHECK(sc3.sections == 3);
    CHECK(sc3.p_power == 3);
    CHECK(sc3.agree);
}

TEST_CASE("deformation bank: shape and lift survey invariants") {
    Budget budget;

    // Six coherent entries at the Artin-Schreier origin, fixed order.
    AlgebraMap as = artin_schreier();
    std::vector<BankCase> bank = deformation_bank(as, budget);
    REQUIRE(bank.size() == 6);
    CHECK(bank[0].name == "dual-numbers");
    CHECK(bank[1].name == "p-line");
    CHECK(bank[2].name == "xi-pair");
    CHECK(bank[3].name == "xi-triple");
    CHECK(bank[4].name == "thick-point");
    CHECK(bank[5].name == "thick-free");
    CHECK(bank[1].ext.kind == ExtensionKind::PInfinitesimal);

    // No origin on a localized target: the bank filters itself empty.
    PrimeField f2(2);
    PolyRing luv(f2, {"u", "v"});
    RingPtr loc = make_ring(f2, {"u", "v"}, {mk(luv, {{1, {1, 1}}, {-1, {0, 0}}})});
    CHECK(deformation_bank(structure_map(loc), budget).empty());

    // Kunz-flavored survey invariants across a small map corpus.
    std::vector<AlgebraMap> corpus = {as, cusp(), ramified_cover(), closed_immersion(),
                                      structure_map(make_ring(f2, {"x"}, {}))};
    for (const AlgebraMap& alpha : corpus) {
        FrobeniusData fd = build_frobenius(alpha, 1, budget);
        bool surj = frobenius_surjective(fd, budget).surjective;
        bool iso = surj && frobenius_injective(fd, budget).injective;
        bool omega0 = omega_is_zero(alpha, budget);
        LiftSurvey survey = lift_survey(alpha, budget);
        REQUIRE(survey.attempted > 0);
        if (surj) CHECK(survey.all_at_most_one);
        if (!omega0) CHECK(survey.any_multi);
        if (iso) {
            CHECK(survey.any_exists);
            for (const auto& entry : survey.entries)
                if (entry.attempted) CHECK(entry.lifts == 1);
        }
    }
}
