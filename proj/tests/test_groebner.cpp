#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "kunz/groebner.hpp"

using namespace kunz;

namespace {

const MonomialOrder grev = MonomialOrder::grevlex();

Poly mk(const PolyRing& R, std::vector<std::pair<std::int64_t, std::vector<std::uint32_t>>> spec) {
    std::vector<Term> ts;
    for (auto& [c, e] : spec) ts.push_back(Term{Monomial(e), R.field().reduce(c)});
    return R.from_terms(std::move(ts), grev);
}

Poly random_poly(const PolyRing& R, std::mt19937& rng, int nterms, std::uint32_t emax) {
    std::uniform_int_distribution<std::uint32_t> de(0, emax);
    std::uniform_int_distribution<std::uint32_t> dc(0, R.field().p() - 1);
    std::vector<Term> ts;
    for (int t = 0; t < nterms; ++t) {
        std::vector<std::uint32_t> e(R.nvars());
        for (auto& x : e) x = de(rng);
        ts.push_back(Term{Monomial(std::move(e)), dc(rng)});
    }
    return R.from_terms(std::move(ts), grev);
}

std::string render(const PolyRing& R, const GroebnerBasis& gb) {
    std::string s;
    for (const auto& g : gb.gens) s += R.to_string(R.resorted(g, grev)) + ";";
    return s;
}

// Dense span oracle: the subspace of polynomials of degree <= cap lying in
// the ideal generated by gens, as a row-reduced matrix over the monomial box.
struct DenseSpan {
    std::vector<Monomial> cols;
    GFMatrix mat;
    std::size_t rank;
};

DenseSpan ideal_span_oracle(const PolyRing& R, const std::vector<Poly>& gens, std::uint32_t cap,
                            Budget& budget) {
    std::size_t n = R.nvars();
    std::vector<Monomial> box;
    std::vector<std::uint32_t> cur(n, 0);
    while (true) {
        budget.charge();
        Monomial m{std::vector<std::uint32_t>(cur)};
        if (m.total_degree() <= static_cast<std::int64_t>(cap)) box.push_back(m);
        std::size_t k = 0;
        while (k < n) {
            if (++cur[k] <= cap) break;
            cur[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    std::sort(box.begin(), box.end(),
              [&](const Monomial& a, const Monomial& b) { return grev.less(a, b); });
    auto col_of = [&](const Monomial& m) {
        auto it = std::lower_bound(box.begin(), box.end(), m, [&](const Monomial& a,
                                                                  const Monomial& b) {
            return grev.less(a, b);
        });
        return static_cast<std::size_t>(it - box.begin());
    };
    std::vector<Poly> rows;
    for (const auto& g : gens)
        for (const auto& m : box) {
            Poly prod = R.mul(R.monomial(m), g, grev);
            if (prod.degree() <= static_cast<std::int64_t>(cap) && !prod.is_zero())
                rows.push_back(prod);
        }
    GFMatrix mat(R.field(), rows.size(), box.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& t : rows[r].terms()) mat.at(r, col_of(t.mono)) = t.coeff;
    std::size_t rank = mat.row_reduce();
    return DenseSpan{std::move(box), std::move(mat), rank};
}

bool span_contains(const DenseSpan& span, const PolyRing& R, const Poly& f) {
    GFMatrix probe(R.field(), span.rank + 1, span.cols.size());
    std::size_t taken = 0;
    for (std::size_t r = 0; r < span.mat.rows() && taken < span.rank; ++r) {
        bool nonzero = false;
        for (std::size_t c = 0; c < span.cols.size(); ++c)
            if (span.mat.at(r, c)) nonzero = true;
        if (!nonzero) continue;
        for (std::size_t c = 0; c < span.cols.size(); ++c) probe.at(taken, c) = span.mat.at(r, c);
        ++taken;
    }
    for (const auto& t : f.terms()) {
        auto it = std::lower_bound(span.cols.begin(), span.cols.end(), t.mono,
                                   [&](const Monomial& a, const Monomial& b) {
                                       return grev.less(a, b);
                                   });
        REQUIRE(it != span.cols.end());
        probe.at(taken, static_cast<std::size_t>(it - span.cols.begin())) = t.coeff;
    }
    return probe.rank() == span.rank; // no new direction => f in span
}

} // namespace

TEST_CASE("groebner basis: pinned examples") {
    Budget budget;
    PolyRing F2x(PrimeField(2), {"x"});
    auto gb1 = groebner_basis(F2x, {mk(F2x, {{1, {1}}})}, grev, budget);
    REQUIRE(gb1.gens.size() == 1);
    CHECK(F2x.to_string(gb1.gens[0]) == "x");

    // u and uv - 1 force 1 = u*v - (uv - 1) into the ideal.
    PolyRing F3uv(PrimeField(3), {"u", "v"});
    auto gb2 = groebner_basis(
        F3uv, {mk(F3uv, {{1, {1, 1}}, {-1, {0, 0}}}), mk(F3uv, {{1, {1, 0}}})}, grev, budget);
    REQUIRE(gb2.gens.size() == 1);
    CHECK(F3uv.to_string(gb2.gens[0]) == "1");

    // The S-pair of x^2 and xy reduces to zero; the pair is already a basis.
    PolyRing F2xy(PrimeField(2), {"x", "y"});
    MonomialOrder lx = MonomialOrder::lex();
    auto gb3 = groebner_basis(F2xy, {F2xy.resorted(mk(F2xy, {{1, {2, 0}}}), lx),
                                     F2xy.resorted(mk(F2xy, {{1, {1, 1}}}), lx)},
                              lx, budget);
    REQUIRE(gb3.gens.size() == 2);
    CHECK(buchberger_criterion_holds(F2xy, gb3, budget));
}

TEST_CASE("block-order bases expose block-order leads") {
    Budget budget;
    // Graph ideal of u -> u in F_2[u,x]/(x^2 + u^3) with tag t.  In the block
    // order x^2 beats t^3 despite the lower total degree; reading leads in
    // plain grevlex would hide the pure power of x.
    PolyRing R(PrimeField(2), {"u", "x", "t"});
    MonomialOrder ord = MonomialOrder::block({1, 1, 0});
    auto gb = groebner_basis(R,
                             {R.resorted(mk(R, {{1, {0, 2, 0}}, {1, {3, 0, 0}}}), ord),
                              R.resorted(mk(R, {{1, {0, 0, 1}}, {1, {1, 0, 0}}}), ord)},
                             ord, budget);
    REQUIRE(gb.gens.size() == 2);
    std::vector<std::string> leads;
    for (const auto& g : gb.gens) leads.push_back(R.to_string(R.monomial(g.lead().mono)));
    std::sort(leads.begin(), leads.end());
    CHECK(leads == std::vector<std::string>{"u", "x^2"});
    CHECK(buchberger_criterion_holds(R, gb, budget));
}

TEST_CASE("normal form: pinned examples and idempotence") {
    Budget budget;
    PolyRing R(PrimeField(5), {"x", "u"});
    auto gb = groebner_basis(R, {mk(R, {{1, {2, 0}}, {-1, {0, 1}}})}, grev, budget);
    CHECK(normal_form(R, mk(R, {{1, {2, 0}}}), gb, budget) == mk(R, {{1, {0, 1}}}));

    std::mt19937 rng(31337);
    PolyRing S(PrimeField(5), {"x", "y", "z"});
    std::vector<Poly> gens = {mk(S, {{1, {2, 0, 0}}, {-1, {0, 1, 0}}}),
                              mk(S, {{1, {0, 3, 0}}, {-1, {0, 0, 1}}}),
                              mk(S, {{1, {1, 0, 1}}, {-1, {0, 0, 0}}})};
    auto gbs = groebner_basis(S, gens, grev, budget);
    for (int round = 0; round < 25; ++round) {
        // Random ideal combinations must die; NF must be idempotent.
        Poly f = S.zero();
        for (const auto& g : gens) f = S.add(f, S.mul(random_poly(S, rng, 4, 2), g, grev), grev);
        CHECK(normal_form(S, f, gbs, budget).is_zero());
        Poly h = random_poly(S, rng, 6, 4);
        Poly nf1 = normal_form(S, h, gbs, budget);
        CHECK(normal_form(S, nf1, gbs, budget) == nf1);
        // No term of a normal form is divisible by a basis lead.
        for (const auto& t : nf1.terms())
            for (const auto& g : gbs.gens) CHECK_FALSE(g.lead().mono.divides(t.mono));
    }
}

TEST_CASE("elimination: pinned examples") {
    Budget budget;
    PolyRing R(PrimeField(3), {"x", "y"});
    auto out = eliminate(R, {mk(R, {{1, {0, 1}}, {-1, {2, 0}}}), mk(R, {{1, {1, 0}}})}, {1, 0},
                         budget);
    REQUIRE(out.size() == 1);
    CHECK(R.to_string(out[0]) == "y");

    PolyRing W(PrimeField(3), {"x", "w"});
    auto none = eliminate(W, {mk(W, {{1, {0, 1}}, {-1, {3, 0}}})}, {1, 0}, budget);
    CHECK(none.empty());

    PolyRing U(PrimeField(2), {"u", "x"});
    auto unit = eliminate(U, {mk(U, {{1, {1, 1}}, {-1, {0, 0}}}), mk(U, {{1, {1, 0}}})}, {0, 1},
                          budget);
    REQUIRE(unit.size() == 1);
    CHECK(U.to_string(unit[0]) == "1");
}

TEST_CASE("elimination agrees with the dense span oracle on an Artinian quotient") {
    Budget budget(4'000'000);
    PolyRing R(PrimeField(3), {"x", "y"});
    // I = (x^2 - y, xy): Artinian with quotient basis {1, x, y}.
    std::vector<Poly> gens = {mk(R, {{1, {2, 0}}, {-1, {0, 1}}}), mk(R, {{1, {1, 1}}})};
    auto elim = eliminate(R, gens, {1, 0}, budget);
    REQUIRE(elim.size() == 1);
    CHECK(R.to_string(elim[0]) == "y^2");

    DenseSpan span = ideal_span_oracle(R, gens, 6, budget);
    CHECK(span_contains(span, R, mk(R, {{1, {0, 2}}})));      // y^2 in I
    CHECK_FALSE(span_contains(span, R, mk(R, {{1, {0, 1}}}))); // y not in I
}

TEST_CASE("standard monomials: pinned examples") {
    Budget budget;
    PolyRing R(PrimeField(2), {"x"});
    auto st1 = standard_monomials(R, groebner_basis(R, {mk(R, {{1, {2}}})}, grev, budget), budget);
    REQUIRE(st1.finite);
    REQUIRE(st1.monomials.size() == 2);
    CHECK(st1.monomials[0].is_one());
    CHECK(st1.monomials[1] == Monomial(std::vector<std::uint32_t>{1}));

    auto st2 = standard_monomials(R, groebner_basis(R, {mk(R, {{1, {1}}})}, grev, budget), budget);
    REQUIRE(st2.finite);
    REQUIRE(st2.monomials.size() == 1);
    CHECK(st2.monomials[0].is_one());

    auto st3 = standard_monomials(R, groebner_basis(R, {}, grev, budget), budget);
    CHECK_FALSE(st3.finite);

    // Unit ideal: empty staircase, zero ring.
    auto st4 = standard_monomials(
        R, groebner_basis(R, {mk(R, {{1, {0}}, {1, {1}}}), mk(R, {{1, {1}}})}, grev, budget),
        budget);
    CHECK(st4.finite);
    CHECK(st4.monomials.empty());
}

TEST_CASE("reduced bases are unique and deterministic") {
    Budget budget;
    PolyRing R(PrimeField(5), {"x", "y", "z"});
    std::vector<Poly> gens = {mk(R, {{1, {2, 0, 0}}, {-1, {0, 1, 0}}}),
                              mk(R, {{1, {0, 3, 0}}, {-1, {0, 0, 1}}}),
                              mk(R, {{3, {1, 1, 1}}, {-1, {0, 0, 0}}}),
                              mk(R, {{1, {1, 2, 0}}, {2, {0, 0, 2}}})};
    auto a = groebner_basis(R, gens, grev, budget);
    auto b = groebner_basis(R, gens, grev, budget);
    CHECK(render(R, a) == render(R, b));

    // Reduced GB is an invariant of (ideal, order): generator order must not
    // matter.
    std::vector<Poly> shuffled = {gens[3], gens[1], gens[0], gens[2]};
    auto c = groebner_basis(R, shuffled, grev, budget);
    CHECK(render(R, a) == render(R, c));
    CHECK(buchberger_criterion_holds(R, a, budget));
}

TEST_CASE("budget exhaustion is an error, not a wrong answer") {
    Budget tiny(3);
    PolyRing R(PrimeField(5), {"x", "y", "z"});
    std::vector<Poly> gens = {mk(R, {{1, {2, 1, 0}}, {-1, {0, 0, 1}}}),
                              mk(R, {{1, {1, 2, 0}}, {2, {0, 0, 2}}}),
                              mk(R, {{1, {0, 0, 3}}, {4, {1, 1, 1}}})};
    CHECK_THROWS_AS(groebner_basis(R, gens, grev, tiny), BudgetExceeded);
}

TEST_CASE("module groebner: syzygy of (x, y)") {
    Budget budget;
    PolyRing R(PrimeField(3), {"x", "y"});
    ModuleOrder ord = ModuleOrder::pot(grev);
    // Kernel of e1 -> x, e2 -> y inside components 1..2; component 0 carries
    // the image.
    std::vector<MVec> gens;
    gens.push_back(to_mvec(R, {mk(R, {{1, {1, 0}}}), R.constant(-1), R.zero()}, ord));
    gens.push_back(to_mvec(R, {mk(R, {{1, {0, 1}}}), R.zero(), R.constant(-1)}, ord));
    ModuleBasis mb = module_groebner(R, 3, std::move(gens), ord, budget);
    CHECK(module_buchberger_holds(R, mb, budget));

    std::vector<std::vector<Poly>> syzygies;
    for (const auto& v : mb.gens) {
        auto comps = from_mvec(R, v, 3);
        if (comps[0].is_zero()) syzygies.push_back({comps[1], comps[2]});
    }
    REQUIRE(syzygies.size() == 1);
    CHECK(syzygies[0][0] == mk(R, {{1, {0, 1}}}));  // y
    CHECK(syzygies[0][1] == mk(R, {{-1, {1, 0}}})); // -x
}

TEST_CASE("module normal form reduces by leading positions") {
    Budget budget;
    PolyRing R(PrimeField(3), {"x", "y"});
    ModuleOrder ord = ModuleOrder::pot(grev);
    std::vector<MVec> gens;
    gens.push_back(to_mvec(R, {mk(R, {{1, {1, 0}}}), R.constant(-1), R.zero()}, ord));
    gens.push_back(to_mvec(R, {mk(R, {{1, {0, 1}}}), R.zero(), R.constant(-1)}, ord));
    ModuleBasis mb = module_groebner(R, 3, std::move(gens), ord, budget);

    MVec probe = to_mvec(R, {mk(R, {{1, {2, 0}}}), R.zero(), R.zero()}, ord);
    MVec red = module_nf(R, probe, mb, budget);
    auto comps = from_mvec(R, red, 3);
    CHECK(comps[0].is_zero());
    CHECK(comps[1] == mk(R, {{1, {1, 0}}})); // x^2 * e0 ~ x * e1
    CHECK(comps[2].is_zero());
}

TEST_CASE("module staircase") {
    Budget budget;
    PolyRing R(PrimeField(2), {"x", "y"});
    ModuleOrder ord = ModuleOrder::pot(grev);
    std::vector<MVec> gens;
    gens.push_back(to_mvec(R, {mk(R, {{1, {1, 0}}}), R.zero()}, ord));
    gens.push_back(to_mvec(R, {mk(R, {{1, {0, 1}}}), R.zero()}, ord));
    gens.push_back(to_mvec(R, {R.zero(), mk(R, {{1, {2, 0}}})}, ord));
    gens.push_back(to_mvec(R, {R.zero(), mk(R, {{1, {0, 1}}})}, ord));
    ModuleBasis mb = module_groebner(R, 2, std::move(gens), ord, budget);
    ModuleStaircase st = module_standard_monomials(R, mb, budget);
    REQUIRE(st.finite);
    REQUIRE(st.entries.size() == 3);
    CHECK(st.entries[0] == std::make_pair(std::uint32_t{0}, Monomial({0, 0})));
    CHECK(st.entries[1] == std::make_pair(std::uint32_t{1}, Monomial({0, 0})));
    CHECK(st.entries[2] == std::make_pair(std::uint32_t{1}, Monomial({1, 0})));
}
