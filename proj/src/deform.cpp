#include "kunz/deform.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "kunz/differentials.hpp"
#include "kunz/errors.hpp"
#include "kunz/frobenius.hpp"

namespace kunz {

namespace {

const MonomialOrder& grev() {
    static const MonomialOrder o = MonomialOrder::grevlex();
    return o;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || structurally_equal(*a, *b);
}

// Finite staircase of a quotient ring with a lookup from monomial to slot.
struct DenseRing {
    const RingPresentation* ring = nullptr;
    std::vector<Monomial> basis;
    std::map<std::vector<std::uint32_t>, std::size_t> index;
};

DenseRing dense_ring(const RingPtr& r, Budget& budget, const char* who) {
    Staircase sc = standard_monomials(r->ambient(), r->gb(grev(), budget), budget);
    if (!sc.finite) throw NotArtinian(std::string(who) + " needs a finite-dimensional ring");
    DenseRing d;
    d.ring = r.get();
    d.basis = std::move(sc.monomials);
    for (std::size_t i = 0; i < d.basis.size(); ++i) d.index.emplace(d.basis[i].exps(), i);
    return d;
}

// Coordinates of a normal form; staying on the staircase is an invariant.
std::vector<std::uint32_t> coords(const DenseRing& d, const Poly& nf) {
    std::vector<std::uint32_t> row(d.basis.size(), 0);
    for (const Term& t : nf.terms()) {
        auto it = d.index.find(t.mono.exps());
        if (it == d.index.end()) throw InternalError("normal form left the staircase");
        row[it->second] = t.coeff;
    }
    return row;
}

// Staircase combinations are their own normal forms, so no reduction here.
Poly from_coords(const DenseRing& d, const std::vector<std::uint32_t>& row) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) terms.push_back({d.basis[i], row[i]});
    return d.ring->ambient().from_terms(std::move(terms), grev());
}

// One particular solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<std::uint32_t>> solve_linear(const GFMatrix& m,
                                                       const std::vector<std::uint32_t>& b) {
    const PrimeField& f = m.field();
    GFMatrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    aug.row_reduce();
    std::vector<std::uint32_t> x(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t piv = m.cols() + 1;
        for (std::size_t c = 0; c <= m.cols(); ++c)
            if (aug.at(r, c)) {
                piv = c;
                break;
            }
        if (piv == m.cols()) return std::nullopt;
        if (piv < m.cols()) x[piv] = aug.at(r, m.cols());
    }
    return x;
}

// F_p-basis of the ideal's image inside the ring, as staircase rows.
std::vector<std::vector<std::uint32_t>> ideal_space(const DenseRing& d, const IdealHandle& ideal,
                                                    Budget& budget) {
    const PolyRing& amb = d.ring->ambient();
    GFMatrix span(amb.field(), ideal.gens.size() * d.basis.size(), d.basis.size());
    std::size_t r = 0;
    for (const Poly& g : ideal.gens)
        for (const Monomial& m : d.basis) {
            budget.charge(1, "ideal subspace span");
            std::vector<std::uint32_t> row = coords(d, d.ring->nf(amb.mul_term(g, m, 1), budget));
            for (std::size_t c = 0; c < row.size(); ++c) span.at(r, c) = row[c];
            ++r;
        }
    return span.row_basis();
}

// All variables to zero; throws NotWellDefined when some relation has a
// nonzero value at the origin.
AlgebraMap zero_map(const RingPtr& src, const RingPtr& dst, Budget& budget, std::string label) {
    std::vector<Poly> images(src->ambient().nvars(), dst->ambient().zero());
    return check_map(src, dst, std::move(images), budget, std::move(label));
}

} // namespace

SquareZeroExtension make_square_zero(RingPtr c, std::vector<Poly> ideal_gens, ExtensionKind kind,
                                     AlgebraMap quotient, AlgebraMap base_map, Budget& budget) {
    if (!same_ring(quotient.source, c))
        throw AmbientMismatch("square-zero quotient must start at the carrier");
    if (!same_ring(base_map.target, c))
        throw AmbientMismatch("square-zero base point must land in the carrier");
    if (!fp_dimension(c, budget).finite)
        throw NotArtinian("square-zero carrier must be finite-dimensional");

    IdealHandle ideal = make_ideal(c, std::move(ideal_gens), budget);
    if (kind == ExtensionKind::SquareZero) {
        for (std::size_t i = 0; i < ideal.gens.size(); ++i)
            for (std::size_t j = i; j < ideal.gens.size(); ++j) {
                budget.charge(1, "square-zero law");
                if (!c->is_zero(c->ambient().mul(ideal.gens[i], ideal.gens[j], grev()), budget))
                    throw Error("declared square-zero, but I^2 != 0");
            }
    } else {
        if (!ideal_is_zero(frobenius_power(ideal, 1, budget), budget))
            throw Error("declared p-infinitesimal, but I^[p] != 0");
    }
    for (const Poly& g : ideal.gens)
        if (!quotient.target->is_zero(apply_map(quotient, g, budget), budget))
            throw Error("square-zero quotient must kill the ideal");

    SquareZeroExtension ext;
    ext.c = std::move(c);
    ext.ideal = std::move(ideal);
    ext.kind = kind;
    ext.quotient = std::move(quotient);
    ext.base_map = std::move(base_map);
    return ext;
}

TrivialExtension trivial_extension(const RingPtr& a, const ModulePresentation& m, Budget& budget) {
    if (!same_ring(m.ring, a))
        throw AmbientMismatch("trivial extension module must live over the given ring");
    const PolyRing& amb = a->ambient();
    const std::size_t n = amb.nvars();

    std::set<std::string> taken(amb.var_names().begin(), amb.var_names().end());
    std::vector<std::string> eps_names;
    for (std::uint32_t i = 0; i < m.free_rank; ++i) {
        std::string name = "eps" + std::to_string(i + 1);
        while (taken.count(name)) name += "'";
        taken.insert(name);
        eps_names.push_back(std::move(name));
    }

    std::vector<std::string> all_names = amb.var_names();
    all_names.insert(all_names.end(), eps_names.begin(), eps_names.end());
    PolyRing ext_amb(amb.field(), all_names);
    std::vector<std::size_t> keep(n);
    for (std::size_t i = 0; i < n; ++i) keep[i] = i;

    std::vector<Poly> rels;
    for (const auto& row : m.relations) {
        Poly s = ext_amb.zero();
        for (std::uint32_t j = 0; j < m.free_rank; ++j) {
            if (row[j].is_zero()) continue;
            Poly coeff = amb.embed(row[j], keep, ext_amb, grev());
            s = ext_amb.add(s, ext_amb.mul(coeff, ext_amb.variable(n + j), grev()), grev());
        }
        rels.push_back(std::move(s));
    }
    for (std::uint32_t i = 0; i < m.free_rank; ++i)
        for (std::uint32_t j = i; j < m.free_rank; ++j)
            rels.push_back(ext_amb.mul(ext_amb.variable(n + i), ext_amb.variable(n + j), grev()));

    TrivialExtension xi;
    xi.a = a;
    xi.m = m;
    xi.carrier = extend_ring(a, eps_names, std::move(rels));
    for (std::uint32_t i = 0; i < m.free_rank; ++i) xi.m_vars.push_back(n + i);

    std::vector<Poly> proj(n + m.free_rank, amb.zero());
    for (std::size_t i = 0; i < n; ++i) proj[i] = amb.variable(i);
    xi.projection = check_map(xi.carrier, a, std::move(proj), budget, "trivial-ext projection");

    std::vector<Poly> sect(n);
    for (std::size_t i = 0; i < n; ++i) sect[i] = xi.carrier->ambient().variable(i);
    xi.section = check_map(a, xi.carrier, std::move(sect), budget, "trivial-ext zero section");
    return xi;
}

SquareZeroExtension extension_of_trivial(const TrivialExtension& xi, const AlgebraMap& alpha,
                                         Budget& budget) {
    if (!same_ring(alpha.target, xi.a))
        throw AmbientMismatch("extension_of_trivial: alpha must end at the extended ring");
    std::vector<Poly> gens;
    for (std::size_t v : xi.m_vars) gens.push_back(xi.carrier->ambient().variable(v));
    AlgebraMap base = compose(xi.section, alpha, budget);
    return make_square_zero(xi.carrier, std::move(gens), ExtensionKind::SquareZero, xi.projection,
                            std::move(base), budget);
}

bool lift_problem_compatible(const AlgebraMap& alpha, const SquareZeroExtension& ext,
                             const AlgebraMap& theta, Budget& budget) {
    if (alpha.source->ambient().nvars() != ext.base_map.source->ambient().nvars())
        throw AmbientMismatch("lift problem: alpha and the extension disagree on the base");
    const RingPtr& q = theta.target;
    for (std::size_t j = 0; j < alpha.images.size(); ++j) {
        Poly lhs = apply_map(theta, alpha.images[j], budget);
        Poly rhs = apply_map(ext.quotient, ext.base_map.images[j], budget);
        if (!q->equal(lhs, rhs, budget)) return false;
    }
    return true;
}

std::vector<AlgebraMap> enumerate_lifts(const AlgebraMap& alpha, const SquareZeroExtension& ext,
                                        const AlgebraMap& theta, Budget& budget,
                                        std::uint64_t max_tuples) {
    const RingPtr& a = alpha.target;
    const RingPtr& c = ext.c;
    const RingPtr& q = ext.quotient.target;
    if (!same_ring(theta.source, a))
        throw AmbientMismatch("enumerate_lifts: theta must start at alpha's target");
    if (!same_ring(theta.target, q))
        throw AmbientMismatch("enumerate_lifts: theta must land in the extension quotient");
    if (!lift_problem_compatible(alpha, ext, theta, budget))
        throw IncompatibleBase("theta does not close the square over the extension's base point");

    DenseRing dc = dense_ring(c, budget, "enumerate_lifts");
    DenseRing dq = dense_ring(q, budget, "enumerate_lifts");
    const PrimeField& f = c->ambient().field();

    // The projection as a matrix on staircase bases, columns over C's basis.
    GFMatrix proj(f, dq.basis.size(), dc.basis.size());
    for (std::size_t j = 0; j < dc.basis.size(); ++j) {
        Poly img = apply_map(ext.quotient, c->ambient().monomial(dc.basis[j]), budget);
        std::vector<std::uint32_t> col = coords(dq, img);
        for (std::size_t i = 0; i < col.size(); ++i) proj.at(i, j) = col[i];
    }

    std::vector<std::vector<std::uint32_t>> ibasis = ideal_space(dc, ext.ideal, budget);

    // A generator is pinned when alpha hits it with a bare variable: the base
    // square then fixes its image exactly.
    const std::size_t nvars = a->ambient().nvars();
    std::vector<std::optional<Poly>> pinned(nvars);
    for (std::size_t j = 0; j < alpha.images.size(); ++j) {
        const Poly& aj = alpha.images[j];
        if (aj.size() != 1 || aj.lead().coeff != 1 || aj.lead().mono.total_degree() != 1) continue;
        std::size_t k = 0;
        while (aj.lead().mono.exp(k) == 0) ++k;
        Poly value = c->nf(ext.base_map.images[j], budget);
        if (pinned[k] && !c->equal(*pinned[k], value, budget)) return {};
        pinned[k] = std::move(value);
    }

    std::vector<Poly> base_image(nvars);
    std::size_t free_count = 0;
    for (std::size_t k = 0; k < nvars; ++k) {
        if (pinned[k]) {
            base_image[k] = *pinned[k];
            continue;
        }
        ++free_count;
        auto sol = solve_linear(proj, coords(dq, q->nf(theta.images[k], budget)));
        if (!sol) throw InternalError("extension quotient failed to reach a theta image");
        base_image[k] = from_coords(dc, *sol);
    }

    const std::size_t d = ibasis.size();
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < d * free_count; ++i) {
        if (tuples > max_tuples / f.p() + 1) throw BudgetExceeded("lift enumeration space");
        tuples *= f.p();
    }
    if (tuples > max_tuples) throw BudgetExceeded("lift enumeration space");

    // Odometer over I-coordinates of every free generator, rightmost fastest.
    std::vector<std::uint32_t> lambda(d * free_count, 0);
    std::vector<AlgebraMap> lifts;
    for (std::uint64_t step = 0; step < tuples; ++step) {
        budget.charge(1, "lift candidate");
        std::vector<Poly> images(nvars);
        std::size_t slot = 0;
        for (std::size_t k = 0; k < nvars; ++k) {
            if (pinned[k]) {
                images[k] = base_image[k];
                continue;
            }
            std::vector<std::uint32_t> row = coords(dc, base_image[k]);
            for (std::size_t i = 0; i < d; ++i) {
                std::uint32_t l = lambda[slot * d + i];
                if (l)
                    for (std::size_t cidx = 0; cidx < row.size(); ++cidx)
                        row[cidx] = f.add(row[cidx], f.mul(l, ibasis[i][cidx]));
            }
            images[k] = from_coords(dc, row);
            ++slot;
        }

        AlgebraMap cand = unchecked_map(a, c, std::move(images), "lift");
        bool ok = true;
        for (const Poly& rel : a->relations()) {
            if (!c->is_zero(apply_map(cand, rel, budget), budget)) {
                ok = false;
                break;
            }
        }
        if (ok)
            for (std::size_t j = 0; j < alpha.images.size(); ++j) {
                Poly lhs = apply_map(cand, alpha.images[j], budget);
                if (!c->equal(lhs, ext.base_map.images[j], budget)) {
                    ok = false;
                    break;
                }
            }
        if (ok) lifts.push_back(std::move(cand));

        for (std::size_t i = lambda.size(); i-- > 0;) {
            if (++lambda[i] < f.p()) break;
            lambda[i] = 0;
        }
    }

    std::vector<std::pair<std::vector<std::string>, std::size_t>> keys;
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        std::vector<std::string> key;
        for (const Poly& img : lifts[i].images) key.push_back(c->ambient().to_string(img));
        keys.emplace_back(std::move(key), i);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<AlgebraMap> sorted;
    sorted.reserve(lifts.size());
    for (const auto& [key, idx] : keys) sorted.push_back(std::move(lifts[idx]));
    return sorted;
}

XiReport xi_uniqueness_check(const AlgebraMap& alpha, const SquareZeroExtension& ext,
                             const AlgebraMap& theta, Budget& budget) {
    XiReport rep;
    FrobeniusData fd = build_frobenius(alpha, 1, budget);
    rep.surjective = frobenius_surjective(fd, budget).surjective;
    rep.applicable = rep.surjective;
    rep.lifts = enumerate_lifts(alpha, ext, theta, budget);
    rep.lift_count = rep.lifts.size();
    const PolyRing& amb = ext.c->ambient();
    for (std::size_t i = 0; i < rep.lifts.size(); ++i)
        for (std::size_t j = i + 1; j < rep.lifts.size(); ++j)
            for (std::size_t k = 0; k < rep.lifts[i].images.size(); ++k) {
                Poly diff = amb.sub(rep.lifts[i].images[k], rep.lifts[j].images[k], grev());
                if (!ideal_contains(ext.ideal, diff, budget)) rep.differences_in_ideal = false;
            }
    rep.pass = !rep.applicable || rep.lift_count <= 1;
    return rep;
}

SectionCount section_count_vs_derivations(const AlgebraMap& alpha, const ModulePresentation& m,
                                          Budget& budget) {
    TrivialExtension xi = trivial_extension(alpha.target, m, budget);
    SquareZeroExtension ext = extension_of_trivial(xi, alpha, budget);
    AlgebraMap id = identity_map(alpha.target);

    SectionCount out;
    out.sections = enumerate_lifts(alpha, ext, id, budget).size();

    std::uint64_t dim = derivation_space_dimension(alpha, m, budget);
    if (dim > 40) throw BudgetExceeded("derivation space too large to count points");
    out.p_power = 1;
    for (std::uint64_t i = 0; i < dim; ++i) out.p_power *= alpha.target->ambient().field().p();
    out.agree = out.sections == out.p_power;
    return out;
}

std::vector<BankCase> deformation_bank(const AlgebraMap& alpha, Budget& budget) {
    const PrimeField& f = alpha.target->ambient().field();
    const std::uint32_t p = f.p();
    std::vector<BankCase> bank;

    // An entry is skipped when either evaluation-at-zero map fails to exist
    // (some relation has a nonzero constant term) or the base square cannot
    // close; what remains is exactly the coherent problems for this alpha.
    auto add = [&](const std::string& name, const RingPtr& c, std::vector<Poly> gens,
                   ExtensionKind kind, const RingPtr& q, std::vector<Poly> qimages) {
        try {
            AlgebraMap quot = check_map(c, q, std::move(qimages), budget, name + " projection");
            AlgebraMap base = zero_map(alpha.source, c, budget, name + " base point");
            AlgebraMap th = zero_map(alpha.target, q, budget, name + " theta");
            SquareZeroExtension ext =
                make_square_zero(c, std::move(gens), kind, std::move(quot), std::move(base), budget);
            if (!lift_problem_compatible(alpha, ext, th, budget)) return;
            bank.push_back({name, std::move(ext), std::move(th)});
        } catch (const NotWellDefined&) {
        }
    };

    RingPtr pt = trivial_ring(f);

    {
        PolyRing amb(f, {"e"});
        Poly e = amb.variable(0);
        RingPtr c = make_ring(f, {"e"}, {amb.mul(e, e, grev())});
        add("dual-numbers", c, {c->ambient().variable(0)}, ExtensionKind::SquareZero, pt,
            {pt->ambient().zero()});
    }
    if (p >= 3) {
        PolyRing amb(f, {"e"});
        RingPtr c = make_ring(f, {"e"}, {amb.pow(amb.variable(0), p, grev())});
        add("p-line", c, {c->ambient().variable(0)}, ExtensionKind::PInfinitesimal, pt,
            {pt->ambient().zero()});
    } else {
        PolyRing amb(f, {"e1", "e2"});
        Poly e1 = amb.variable(0), e2 = amb.variable(1);
        RingPtr c = make_ring(f, {"e1", "e2"}, {amb.mul(e1, e1, grev()), amb.mul(e2, e2, grev())});
        add("p-pair", c, {c->ambient().variable(0), c->ambient().variable(1)},
            ExtensionKind::PInfinitesimal, pt, {pt->ambient().zero(), pt->ambient().zero()});
    }
    {
        PolyRing amb(f, {"e1", "e2"});
        Poly e1 = amb.variable(0), e2 = amb.variable(1);
        RingPtr c = make_ring(f, {"e1", "e2"},
                              {amb.mul(e1, e1, grev()), amb.mul(e1, e2, grev()),
                               amb.mul(e2, e2, grev())});
        add("xi-pair", c, {c->ambient().variable(0), c->ambient().variable(1)},
            ExtensionKind::SquareZero, pt, {pt->ambient().zero(), pt->ambient().zero()});
    }
    {
        PolyRing amb(f, {"e1", "e2", "e3"});
        std::vector<Poly> rels;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                rels.push_back(amb.mul(amb.variable(i), amb.variable(j), grev()));
        RingPtr c = make_ring(f, {"e1", "e2", "e3"}, std::move(rels));
        add("xi-triple", c,
            {c->ambient().variable(0), c->ambient().variable(1), c->ambient().variable(2)},
            ExtensionKind::SquareZero, pt,
            {pt->ambient().zero(), pt->ambient().zero(), pt->ambient().zero()});
    }
    {
        PolyRing damb(f, {"d"});
        RingPtr q = make_ring(f, {"d"}, {damb.mul(damb.variable(0), damb.variable(0), grev())});
        PolyRing amb(f, {"d", "e"});
        Poly vd = amb.variable(0), ve = amb.variable(1);
        RingPtr c = make_ring(f, {"d", "e"},
                              {amb.mul(vd, vd, grev()), amb.mul(vd, ve, grev()),
                               amb.mul(ve, ve, grev())});
        add("thick-point", c, {c->ambient().variable(1)}, ExtensionKind::SquareZero, q,
            {q->ambient().variable(0), q->ambient().zero()});

        RingPtr c2 = make_ring(f, {"d", "e"}, {amb.mul(vd, vd, grev()), amb.mul(ve, ve, grev())});
        add("thick-free", c2, {c2->ambient().variable(1)}, ExtensionKind::SquareZero, q,
            {q->ambient().variable(0), q->ambient().zero()});
    }
    return bank;
}

LiftSurvey lift_survey(const AlgebraMap& alpha, Budget& budget) {
    LiftSurvey survey;
    for (const BankCase& bc : deformation_bank(alpha, budget)) {
        LiftSurvey::Entry entry;
        entry.name = bc.name;
        entry.kind = bc.ext.kind;
        try {
            std::size_t n = enumerate_lifts(alpha, bc.ext, bc.theta, budget).size();
            entry.attempted = true;
            entry.lifts = n;
        } catch (const BudgetExceeded&) {
            entry.attempted = false;
        }
        if (entry.attempted) {
            ++survey.attempted;
            survey.max_lifts = std::max(survey.max_lifts, entry.lifts);
            if (entry.lifts >= 2) survey.any_multi = true;
            if (entry.lifts > 1) survey.all_at_most_one = false;
            if (entry.lifts >= 1) survey.any_exists = true;
        }
        survey.entries.push_back(std::move(entry));
    }
    return survey;
}

} // namespace kunz
