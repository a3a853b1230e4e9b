#include "kunz/verdict.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "kunz/differentials.hpp"

namespace kunz {

namespace {

const MonomialOrder& grev() {
    static const MonomialOrder g = MonomialOrder::grevlex();
    return g;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t out = 1;
    while (e--) out *= b;
    return out;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string opt_str(const std::optional<bool>& o) { return o ? yn(*o) : std::string("?"); }

} // namespace

std::string to_string(Flatness f) {
    switch (f) {
        case Flatness::Flat: return "flat";
        case Flatness::NotFlat: return "not-flat";
        default: return "not-decided";
    }
}

std::string classification_label(const std::optional<bool>& omega_zero,
                                 const std::optional<bool>& frob_iso, Flatness flatness) {
    if (!omega_zero.has_value()) return "not decided";
    if (!*omega_zero) return "not formally unramified";
    if (!frob_iso.has_value()) return "formally unramified, formal étaleness not decided";
    if (!*frob_iso) return "formally unramified, not formally étale";
    std::string out = "formally étale, pre-pristine";
    switch (flatness) {
        case Flatness::Flat: out += ", pristine"; break;
        case Flatness::NotFlat: out += ", not pristine"; break;
        case Flatness::NotDecided: out += ", pristinity not decided"; break;
    }
    return out;
}

Flatness restricted_flatness(const AlgebraMap& alpha, std::string& note,
                             std::vector<std::string>& witnesses, Budget& budget) {
    if (alpha.source->ambient().nvars() == 0 && alpha.source->relations().empty()) {
        note = "free over the prime field";
        return Flatness::Flat;
    }
    SubringModuleData md;
    try {
        md = module_over_subring(alpha, 64, budget);
    } catch (const NotArtinian&) {
        note = "restricted: module-finite case only";
        return Flatness::NotDecided;
    }
    if (!md.module_finite || !md.presentation_computed) {
        note = "restricted: module-finite case only";
        return Flatness::NotDecided;
    }
    ModulePresentation pres =
        make_module(alpha.source, static_cast<std::uint32_t>(md.generators.size()),
                    md.relations, budget);
    for (std::uint32_t r = 0; r <= pres.free_rank; ++r) {
        if (module_is_projective_of_rank(pres, r, budget)) {
            note = "projective of constant rank " + std::to_string(r) +
                   " over the base (module-finite case)";
            return Flatness::Flat;
        }
    }
    note = "no constant projective rank fits (restricted: module-finite case only)";
    IdealHandle f0 = fitting_ideal(pres, 0, budget);
    std::string w = "Fitt_0 = (";
    for (std::size_t i = 0; i < f0.gens.size() && i < 4; ++i) {
        if (i) w += ", ";
        w += f0.ring->ambient().to_string(f0.gens[i]);
    }
    if (f0.gens.size() > 4) w += ", ...";
    witnesses.push_back(w + ")");
    return Flatness::NotFlat;
}

Verdict classify(const AlgebraMap& alpha, unsigned e_max, Budget& budget) {
    if (e_max == 0) e_max = 1;
    Verdict v;
    v.map_id = alpha.label.empty() ? std::string("map") : alpha.label;
    bool tripped = false;

    try {
        bool oz = omega_is_zero(alpha, budget);
        v.omega_zero = oz;
        if (!oz) {
            OmegaPresentation om = omega(alpha, budget);
            const auto& names = alpha.target->ambient().var_names();
            for (std::size_t i = 0; i < om.positions.size(); ++i) {
                std::vector<Poly> unit(om.module.free_rank, Poly());
                unit[i] = alpha.target->ambient().one();
                if (!submodule_membership(om.module, unit, budget)) {
                    v.witnesses.push_back("omega generator d" + names[om.positions[i]] +
                                          " is nonzero");
                    break;
                }
            }
        }
    } catch (const BudgetExceeded&) {
        tripped = true;
    }

    std::vector<bool> surj, inj;
    for (unsigned e = 1; e <= e_max; ++e) {
        try {
            FrobeniusData fd = build_frobenius(alpha, e, budget);
            SurjectivityReport sr = frobenius_surjective(fd, budget);
            InjectivityReport ir = frobenius_injective(fd, budget);
            surj.push_back(sr.surjective);
            inj.push_back(ir.injective);
            if (e == 1) {
                v.frob_surjective = sr.surjective;
                v.frob_injective = ir.injective;
                v.frob_iso = sr.surjective && ir.injective;
                if (!sr.surjective) {
                    const auto& names = alpha.target->ambient().var_names();
                    for (std::size_t i = 0; i < sr.certs.size(); ++i)
                        if (!sr.certs[i].member) {
                            v.witnesses.push_back("variable " + names[i] +
                                                  " lies outside alpha(R)[A^q]");
                            break;
                        }
                }
                if (!ir.injective && !ir.kernel.gens.empty())
                    v.witnesses.push_back(
                        "frobenius kernel contains " +
                        ir.kernel.ring->ambient().to_string(ir.kernel.gens.front()));
            }
        } catch (const BudgetExceeded&) {
            tripped = true;
            break;
        }
    }
    if (surj.size() == e_max) {
        bool coh = true;
        for (std::size_t e = 1; e < surj.size(); ++e)
            coh = coh && surj[e] == surj[0] && inj[e] == inj[0];
        v.iterate_coherent = coh;
    }

    if (v.omega_zero.has_value() && v.frob_surjective.has_value() &&
        *v.omega_zero != *v.frob_surjective) {
        std::string dump = "omega_zero=" + yn(*v.omega_zero) +
                           " vs frob_surjective=" + yn(*v.frob_surjective) + " on " + v.map_id;
        for (const auto& w : v.witnesses) dump += "; " + w;
        throw KunzViolation(dump);
    }

    try {
        v.flatness = restricted_flatness(alpha, v.flatness_note, v.witnesses, budget);
    } catch (const BudgetExceeded&) {
        tripped = true;
    }

    v.classification = classification_label(v.omega_zero, v.frob_iso, v.flatness);
    v.complete = !tripped && v.omega_zero.has_value() && v.frob_surjective.has_value() &&
                 v.frob_injective.has_value() && v.frob_iso.has_value() &&
                 v.iterate_coherent.has_value();
    return v;
}

// ---------------------------------------------------------------------------
// Truncation families.
// ---------------------------------------------------------------------------

IdemquotFacts idemquot_facts(Budget& budget) {
    IdemquotFacts out;
    PrimeField f3(3);
    RingPtr r = make_ring(f3, {"s"}, {});
    const PolyRing& amb = r->ambient();
    Poly s = amb.variable(0);
    IdealHandle a = make_ideal(r, {s}, budget);
    IdealHandle afp = frobenius_power(a, 1, budget);
    FpDim df = fp_dimension(quotient_ring(r, afp.gens), budget);
    FpDim d = fp_dimension(quotient_ring(r, a.gens), budget);
    out.dim_frobenius_quotient = df.finite ? df.dim : 0;
    out.dim_quotient = d.finite ? d.dim : 0;
    out.canonical_injective = ideal_contains(afp, s, budget);
    IdealHandle a2 = make_ideal(r, {amb.mul(s, s, grev())}, budget);
    out.ideal_square_equal = ideal_equal(a2, a, budget);
    return out;
}

FrobquotFacts frobquot_facts(unsigned n, Budget& budget) {
    FrobquotFacts out;
    PrimeField f2(2);
    RingPtr r = make_ring(f2, {"s"}, {});
    const PolyRing& amb = r->ambient();
    Poly gen = amb.pow(amb.variable(0), ipow(2, n), grev());
    IdealHandle a = make_ideal(r, {gen}, budget);
    IdealHandle afp = frobenius_power(a, 1, budget);
    out.deficient = !ideal_equal(afp, a, budget) && !ideal_contains(afp, gen, budget);
    RingPtr q = quotient_ring(r, afp.gens);
    Poly w = q->nf(gen, budget);
    out.witness = amb.to_string(w);
    out.witness_degree = w.is_zero() ? 0 : static_cast<std::uint64_t>(w.degree());
    return out;
}

namespace {

RingPtr perftower_ring(unsigned stage, unsigned level, const std::string& stem) {
    PrimeField f2(2);
    std::size_t m = static_cast<std::size_t>(1) << stage;
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t j = 0; j < m; ++j) names.push_back(stem + std::to_string(j + 1));
    PolyRing amb(f2, names);
    std::vector<Poly> rels;
    rels.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        rels.push_back(amb.pow(amb.variable(j), ipow(2, level), grev()));
    return make_ring(f2, names, rels);
}

} // namespace

PerftowerFacts perftower_facts(unsigned stage, unsigned level, Budget& budget) {
    PerftowerFacts out;
    RingPtr a = perftower_ring(stage, level, "e");
    const PolyRing& amb = a->ambient();
    std::size_t m = amb.nvars();

    // (a) the residue of each depth-(level-1) root is nonzero with square zero
    out.nilpotent_witness = true;
    for (std::size_t j = 0; j < m; ++j) {
        Poly w = amb.pow(amb.variable(j), ipow(2, level - 1), grev());
        bool nonzero = !a->nf(w, budget).is_zero();
        bool sq_zero = a->nf(amb.mul(w, w, grev()), budget).is_zero();
        out.nilpotent_witness = out.nilpotent_witness && nonzero && sq_zero;
    }

    // (b) every interior root (depth <= level-1) lies in the square subalgebra
    std::vector<Poly> sq_gens;
    sq_gens.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        sq_gens.push_back(a->nf(amb.mul(amb.variable(j), amb.variable(j), grev()), budget));
    std::vector<Poly> probes;
    for (std::size_t j = 0; j < m; ++j)
        for (unsigned k = 1; k <= level; ++k)
            probes.push_back(a->nf(amb.pow(amb.variable(j), ipow(2, k), grev()), budget));
    out.interior_surjective = true;
    for (const auto& cert : subalgebra_membership_multi(a, sq_gens, probes, budget))
        out.interior_surjective = out.interior_surjective && cert.member;

    // (c) the stage transition e_j -> f_{2j-1} f_{2j} is a well-defined map
    RingPtr c = perftower_ring(stage + 1, level, "f");
    const PolyRing& camb = c->ambient();
    std::vector<Poly> images;
    images.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        images.push_back(camb.mul(camb.variable(2 * j), camb.variable(2 * j + 1), grev()));
    try {
        check_map(a, c, images, budget, "theta");
        out.transition_well_defined = true;
    } catch (const NotWellDefined&) {
        out.transition_well_defined = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Corpus registry.
// ---------------------------------------------------------------------------

namespace {

CorpusCase simple_case(std::string name, std::string dsl, std::string notes,
                       ExpectedVerdict expected) {
    CorpusCase c;
    c.name = std::move(name);
    c.dsl_source = std::move(dsl);
    c.notes = std::move(notes);
    c.expected = std::move(expected);
    return c;
}

ExpectedVerdict expect(std::optional<bool> oz, std::optional<bool> fs, std::optional<bool> fi,
                       std::optional<bool> iso, std::optional<Flatness> fl,
                       std::string contains) {
    ExpectedVerdict e;
    e.omega_zero = oz;
    e.frob_surjective = fs;
    e.frob_injective = fi;
    e.frob_iso = iso;
    e.flatness = fl;
    e.classification_contains = std::move(contains);
    return e;
}

} // namespace

CorpusCase idemquot_trunc(unsigned n) {
    CorpusCase c = simple_case(
        "IDEMQUOT-TRUNC-" + std::to_string(n),
        "prime 3\n"
        "ring R = [s]\n"
        "ring A = R[] / (s)\n"
        "map f : R -> A { s -> s }\n"
        "check classify f\n",
        "level " + std::to_string(n) + " stage of the 2-power root tower quotient; "
        "s stands for the depth-" + std::to_string(n) + " root of the tower generator",
        expect(true, true, false, false, Flatness::NotFlat,
               "formally unramified, not formally étale"));
    c.colimit_claims = {
        "colimit claim — not machine-checked: with every 2-power root adjoined, the ideal "
        "becomes idempotent and the quotient map formally étale, yet never flat"};
    c.extras = [](const Elaboration&, std::vector<std::string>& notes, Budget& budget) {
        IdemquotFacts facts = idemquot_facts(budget);
        bool ok = true;
        notes.push_back("fp-dim of R/a^[3] = " + std::to_string(facts.dim_frobenius_quotient) +
                        ", fp-dim of R/a = " + std::to_string(facts.dim_quotient));
        ok = ok && facts.dim_frobenius_quotient == 3 && facts.dim_quotient == 1;
        notes.push_back(std::string("canonical map R/a^[3] -> R/a injective: ") +
                        yn(facts.canonical_injective));
        ok = ok && !facts.canonical_injective;
        notes.push_back(std::string("a^2 == a at this level: ") + yn(facts.ideal_square_equal));
        ok = ok && !facts.ideal_square_equal;
        return ok;
    };
    return c;
}

CorpusCase frobquot_trunc(unsigned n) {
    std::uint64_t d = ipow(2, n);
    CorpusCase c = simple_case(
        "FROBQUOT-TRUNC-" + std::to_string(n),
        "prime 2\n"
        "ring R = [s]\n"
        "ring A = R[] / (s^" + std::to_string(d) + ")\n"
        "map f : R -> A { s -> s }\n"
        "check classify f\n",
        "level " + std::to_string(n) + " stage of the p-power root tower quotient; s is the "
        "depth-" + std::to_string(n) + " root, so the tower generator reads s^" +
        std::to_string(d),
        expect(true, true, false, false, Flatness::NotFlat,
               "formally unramified, not formally étale"));
    c.colimit_claims = {
        "colimit claim — not machine-checked: with every p-power root adjoined to the ideal, "
        "a^[p] = a and the quotient map becomes pre-pristine"};
    c.extras = [n](const Elaboration&, std::vector<std::string>& notes, Budget& budget) {
        FrobquotFacts facts = frobquot_facts(n, budget);
        std::uint64_t d = ipow(2, n);
        notes.push_back("deficiency witness nf = " + facts.witness + ", degree " +
                        std::to_string(facts.witness_degree));
        return facts.deficient && facts.witness_degree == d;
    };
    return c;
}

CorpusCase perftower_trunc(unsigned stage, unsigned level) {
    std::size_t m = static_cast<std::size_t>(1) << stage;
    std::uint64_t q = ipow(2, level);
    std::string vars, rels, sep;
    for (std::size_t j = 0; j < m; ++j) {
        vars += sep + "e" + std::to_string(j + 1);
        rels += sep + "e" + std::to_string(j + 1) + "^" + std::to_string(q);
        sep = ", ";
    }
    CorpusCase c = simple_case(
        "PERFTOWER-TRUNC-" + std::to_string(stage) + "-" + std::to_string(level),
        "prime 2\n"
        "ring K = []\n"
        "ring A = K[" + vars + "] / (" + rels + ")\n"
        "map f : K -> A { }\n"
        "check classify f\n",
        "stage " + std::to_string(stage) + ", depth " + std::to_string(level) +
        " of the perfection tower: each e_j is a depth-" + std::to_string(level) +
        " root of a killed polynomial generator",
        expect(false, false, std::nullopt, false, Flatness::Flat, "not formally unramified"));
    c.colimit_claims = {
        "colimit claim — not machine-checked: the tower colimit is a non-reduced algebra with "
        "trivial cotangent complex, hence formally étale but not pre-pristine"};
    c.extras = [stage, level](const Elaboration&, std::vector<std::string>& notes,
                              Budget& budget) {
        PerftowerFacts facts = perftower_facts(stage, level, budget);
        notes.push_back(std::string("nonzero residue with zero square certified: ") +
                        yn(facts.nilpotent_witness));
        notes.push_back(std::string("interior roots lie in the square subalgebra: ") +
                        yn(facts.interior_surjective));
        notes.push_back(std::string("stage transition map well defined: ") +
                        yn(facts.transition_well_defined));
        return facts.nilpotent_witness && facts.interior_surjective &&
               facts.transition_well_defined;
    };
    return c;
}

CorpusCase pbasis_field(unsigned n) {
    std::uint64_t d = ipow(2, n);
    CorpusCase c = simple_case(
        "PBASIS-FIELD-" + std::to_string(n),
        "prime 2\n"
        "ring R = [t]\n"
        "ring A = [s]\n"
        "map f : R -> A { t -> s^" + std::to_string(d) + " }\n"
        "check classify f\n",
        "depth-" + std::to_string(n) + " root adjunction t = s^" + std::to_string(d) +
        "; s is a p-basis element, so the relative Frobenius cannot be surjective",
        expect(false, false, false, false, Flatness::Flat, "not formally unramified"));
    c.colimit_claims = {
        "colimit claim — not machine-checked: adjoining every p-power root of t yields a "
        "pristine extension"};
    c.extras = [d](const Elaboration& el, std::vector<std::string>& notes, Budget& budget) {
        const RingPtr& a = el.rings.at("A");
        const PolyRing& amb = a->ambient();
        Poly s = amb.variable(0);
        Poly s2 = amb.mul(s, s, grev());
        Poly image_of_t = amb.pow(s, d, grev());
        bool img_in_prev = subalgebra_membership(a, {s2}, image_of_t, budget).member;
        bool s_outside = !subalgebra_membership(a, {image_of_t, s2}, s, budget).member;
        notes.push_back(std::string("image subalgebra inside the depth-(n-1) subring: ") +
                        yn(img_in_prev));
        notes.push_back(std::string("s outside alpha(R)[A^2]: ") + yn(s_outside));
        return img_in_prev && s_outside;
    };
    return c;
}

const std::vector<CorpusCase>& corpus() {
    static const std::vector<CorpusCase> cases = [] {
        std::vector<CorpusCase> v;

        v.push_back(simple_case("ARTIN-SCHREIER",
                                "prime 3\n"
                                "ring R = [u]\n"
                                "ring A = R[x] / (x^3 - x - u)\n"
                                "map f : R -> A { u -> u }\n"
                                "check classify f\n",
                                "classical étale cover in characteristic p",
                                expect(true, true, true, true, Flatness::Flat,
                                       "pre-pristine, pristine")));

        v.push_back(simple_case("CLOSED-IMM",
                                "prime 3\n"
                                "ring R = [u]\n"
                                "ring A = R[] / (u)\n"
                                "map f : R -> A { u -> u }\n"
                                "check classify f\n",
                                "origin inside the affine line",
                                expect(true, true, false, false, Flatness::NotFlat,
                                       "formally unramified, not formally étale")));

        v.push_back(simple_case("CUSP",
                                "prime 2\n"
                                "ring R = [u]\n"
                                "ring A = R[x] / (x^2 - u^3)\n"
                                "map f : R -> A { u -> u }\n"
                                "check classify f\n",
                                "ramified double cover",
                                expect(false, false, std::nullopt, false, Flatness::Flat,
                                       "not formally unramified")));

        v.push_back(simple_case("DUAL-NUMBERS",
                                "prime 2\n"
                                "ring K = []\n"
                                "ring A = K[x] / (x^2)\n"
                                "map f : K -> A { }\n"
                                "check classify f\n",
                                "square-zero thickening of a point",
                                expect(false, false, std::nullopt, false, Flatness::Flat,
                                       "not formally unramified")));

        {
            CorpusCase c = simple_case("ETALE-LOC",
                                       "prime 3\n"
                                       "ring R = [u, v] / (u*v - 1)\n"
                                       "ring A = R[x] / (x^2 - u)\n"
                                       "map f : R -> A { u -> u, v -> v }\n"
                                       "check classify f\n",
                                       "standard étale shape: square root of a unit",
                                       expect(true, true, true, true, Flatness::Flat,
                                              "pre-pristine, pristine"));
            c.extras = [](const Elaboration& el, std::vector<std::string>& notes,
                          Budget& budget) {
                const RingPtr& a = el.rings.at("A");
                const PolyRing& amb = a->ambient();
                Poly two_x = amb.scalar_mul(2, amb.variable(2));
                bool unit = ideal_is_unit(make_ideal(a, {two_x}, budget), budget);
                notes.push_back(std::string("jacobian entry 2*x is a unit: ") + yn(unit));
                return unit;
            };
            v.push_back(std::move(c));
        }

        v.push_back(simple_case("FROB-TWIST",
                                "prime 3\n"
                                "ring R = [u]\n"
                                "ring A = [s]\n"
                                "map f : R -> A { u -> s^3 }\n"
                                "check classify f\n",
                                "Frobenius twist u -> s^p of the affine line",
                                expect(false, false, false, false, Flatness::Flat,
                                       "not formally unramified")));

        v.push_back(frobquot_trunc(1));
        v.push_back(frobquot_trunc(2));
        v.push_back(frobquot_trunc(3));

        v.push_back(simple_case("IDENTITY",
                                "prime 3\n"
                                "ring R = [u]\n"
                                "map f : R -> R { u -> u }\n"
                                "check classify f\n",
                                "identity of the affine line",
                                expect(true, true, true, true, Flatness::Flat,
                                       "pre-pristine, pristine")));

        v.push_back(idemquot_trunc(1));
        v.push_back(idemquot_trunc(2));

        v.push_back(simple_case("LOCALIZATION",
                                "prime 3\n"
                                "ring R = [u]\n"
                                "ring A = R[w] / (u*w - 1)\n"
                                "map f : R -> A { u -> u }\n"
                                "check classify f\n",
                                "localization away from the origin; not module-finite, so "
                                "flatness stays undecided",
                                expect(true, true, true, true, Flatness::NotDecided,
                                       "pristinity not decided")));

        v.push_back(pbasis_field(1));
        v.push_back(pbasis_field(2));

        v.push_back(perftower_trunc(1, 1));
        v.push_back(perftower_trunc(2, 2));

        v.push_back(simple_case("POLY-EXT",
                                "prime 3\n"
                                "ring R = [u]\n"
                                "ring A = R[x]\n"
                                "map f : R -> A { u -> u }\n"
                                "check classify f\n",
                                "free polynomial extension; flat but not module-finite, so "
                                "restricted flatness stays undecided",
                                expect(false, false, std::nullopt, false, Flatness::NotDecided,
                                       "not formally unramified")));

        v.push_back(simple_case("QUOT-NILP",
                                "prime 2\n"
                                "ring R = [u]\n"
                                "ring A = R[] / (u^2)\n"
                                "map f : R -> A { u -> u }\n"
                                "check classify f\n",
                                "thickened origin inside the affine line",
                                expect(true, true, false, false, Flatness::NotFlat,
                                       "formally unramified, not formally étale")));

        std::sort(v.begin(), v.end(),
                  [](const CorpusCase& a, const CorpusCase& b) { return a.name < b.name; });
        return v;
    }();
    return cases;
}

// ---------------------------------------------------------------------------
// Running and reporting.
// ---------------------------------------------------------------------------

CaseResult run_case(const CorpusCase& c, unsigned e_max, std::uint64_t budget_limit) {
    CaseResult out;
    out.name = c.name;
    out.colimit_claims = c.colimit_claims;
    auto start = std::chrono::steady_clock::now();
    Budget budget(budget_limit);
    bool extras_ok = true, tripped = false;
    try {
        Elaboration el = load_source(c.dsl_source, budget);
        if (el.map_order.empty()) {
            out.mismatches.push_back("case source declares no map");
        } else {
            out.verdict = classify(el.maps.at(el.map_order.front()), e_max, budget);
            out.verdict.map_id = c.name;
            if (c.extras) {
                try {
                    extras_ok = c.extras(el, out.notes, budget);
                } catch (const BudgetExceeded& e) {
                    tripped = true;
                    out.notes.push_back(e.what());
                }
            }
        }
    } catch (const ParseError& e) {
        out.mismatches.push_back(std::string("source rejected: ") + e.what());
    } catch (const BudgetExceeded& e) {
        tripped = true;
        out.notes.push_back(e.what());
    }

    bool undecided = tripped;
    auto cmp = [&](const char* field, const std::optional<bool>& exp,
                   const std::optional<bool>& got) {
        if (!exp.has_value()) return;
        if (!got.has_value()) {
            undecided = true;
            return;
        }
        if (*exp != *got)
            out.mismatches.push_back(std::string(field) + ": expected " + yn(*exp) + ", got " +
                                     yn(*got));
    };
    cmp("omega_zero", c.expected.omega_zero, out.verdict.omega_zero);
    cmp("frob_surjective", c.expected.frob_surjective, out.verdict.frob_surjective);
    cmp("frob_injective", c.expected.frob_injective, out.verdict.frob_injective);
    cmp("frob_iso", c.expected.frob_iso, out.verdict.frob_iso);
    if (c.expected.flatness.has_value() && *c.expected.flatness != out.verdict.flatness) {
        // An expected flat/not-flat against a not-decided run is starvation,
        // not disagreement; only a decided wrong answer is a mismatch.
        if (out.verdict.flatness == Flatness::NotDecided)
            undecided = true;
        else
            out.mismatches.push_back("flatness: expected " + to_string(*c.expected.flatness) +
                                     ", got " + to_string(out.verdict.flatness));
    }
    if (!c.expected.classification_contains.empty() &&
        out.verdict.classification.find(c.expected.classification_contains) ==
            std::string::npos) {
        if (!out.verdict.complete)
            undecided = true;
        else
            out.mismatches.push_back("classification \"" + out.verdict.classification +
                                     "\" does not contain \"" +
                                     c.expected.classification_contains + "\"");
    }

    if (!out.mismatches.empty() || !extras_ok)
        out.status = "fail";
    else if (undecided)
        out.status = "not-decided";
    else
        out.status = "pass";
    out.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    return out;
}

CorpusReport corpus_run(const std::string& filter, unsigned e_max, std::uint64_t budget_limit) {
    CorpusReport report;
    for (const auto& c : corpus()) {
        if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
        report.results.push_back(run_case(c, e_max, budget_limit));
    }
    std::sort(report.results.begin(), report.results.end(),
              [](const CaseResult& a, const CaseResult& b) { return a.name < b.name; });
    report.all_pass = !report.results.empty();
    for (const auto& r : report.results) report.all_pass = report.all_pass && r.status == "pass";
    return report;
}

std::string kunz_crosscheck_table(const CorpusReport& report) {
    std::size_t w = 4;
    for (const auto& r : report.results) w = std::max(w, r.name.size());
    auto pad = [](std::string s, std::size_t width) {
        s.resize(std::max(width, s.size()), ' ');
        return s;
    };
    std::string out = pad("case", w) + "  omega_zero  frob_surj  frob_inj  biconditional\n";
    for (const auto& r : report.results) {
        const Verdict& v = r.verdict;
        std::string bic = "?";
        if (v.omega_zero.has_value() && v.frob_surjective.has_value())
            bic = *v.omega_zero == *v.frob_surjective ? "agree" : "VIOLATION";
        out += pad(r.name, w) + "  " + pad(opt_str(v.omega_zero), 10) + "  " +
               pad(opt_str(v.frob_surjective), 9) + "  " + pad(opt_str(v.frob_injective), 8) +
               "  " + bic + "\n";
    }
    return out;
}

nlohmann::ordered_json verdict_to_json(const Verdict& v) {
    using ordered_json = nlohmann::ordered_json;
    auto opt = [](const std::optional<bool>& o) {
        return o.has_value() ? ordered_json(*o) : ordered_json(nullptr);
    };
    ordered_json verdict;
    verdict["map_id"] = v.map_id;
    verdict["omega_zero"] = opt(v.omega_zero);
    verdict["frob_surjective"] = opt(v.frob_surjective);
    verdict["frob_injective"] = opt(v.frob_injective);
    verdict["frob_iso"] = opt(v.frob_iso);
    verdict["iterate_coherent"] = opt(v.iterate_coherent);
    verdict["flatness"] = to_string(v.flatness);
    verdict["flatness_note"] = v.flatness_note;
    verdict["classification"] = v.classification;
    verdict["complete"] = v.complete;
    return verdict;
}

std::string report_to_json(const CorpusReport& report, std::uint64_t seed, bool timings) {
    using ordered_json = nlohmann::ordered_json;
    ordered_json doc;
    doc["schema_version"] = "1";
    doc["engine_version"] = kEngineVersion;
    doc["seed"] = seed;
    doc["cases"] = ordered_json::array();
    for (const auto& r : report.results) {
        const Verdict& v = r.verdict;
        ordered_json verdict = verdict_to_json(v);

        const CorpusCase* spec_case = nullptr;
        for (const auto& c : corpus())
            if (c.name == r.name) spec_case = &c;
        ordered_json expected = ordered_json::object();
        if (spec_case) {
            const ExpectedVerdict& e = spec_case->expected;
            if (e.omega_zero) expected["omega_zero"] = *e.omega_zero;
            if (e.frob_surjective) expected["frob_surjective"] = *e.frob_surjective;
            if (e.frob_injective) expected["frob_injective"] = *e.frob_injective;
            if (e.frob_iso) expected["frob_iso"] = *e.frob_iso;
            if (e.flatness) expected["flatness"] = to_string(*e.flatness);
            if (!e.classification_contains.empty())
                expected["classification_contains"] = e.classification_contains;
        }

        ordered_json entry;
        entry["name"] = r.name;
        entry["verdict"] = verdict;
        entry["expected"] = expected;
        entry["status"] = r.status;
        ordered_json witnesses = ordered_json::array();
        for (const auto& s : v.witnesses) witnesses.push_back(s);
        for (const auto& s : r.notes) witnesses.push_back(s);
        entry["witnesses"] = witnesses;
        entry["colimit_claims"] = r.colimit_claims;
        entry["mismatches"] = r.mismatches;
        if (timings) entry["millis"] = r.millis;
        doc["cases"].push_back(entry);
    }
    return doc.dump(2) + "\n";
}

} // namespace kunz
