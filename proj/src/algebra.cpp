#include "kunz/algebra.hpp"

#include <algorithm>
#include <set>

namespace kunz {

namespace {

std::string unique_name(std::string candidate, std::set<std::string>& taken) {
    while (taken.count(candidate)) candidate += "'";
    taken.insert(candidate);
    return candidate;
}

std::vector<std::size_t> identity_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

std::vector<std::size_t> offset_indices(std::size_t n, std::size_t off) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = off + i;
    return v;
}

const MonomialOrder kGrevlex = MonomialOrder::grevlex();

} // namespace

RingPresentation::RingPresentation(PolyRing ambient, std::vector<Poly> relations, RingPtr base,
                                   std::vector<Poly> base_images,
                                   std::vector<std::size_t> fiber_vars)
    : ambient_(std::move(ambient)), relations_(std::move(relations)), base_(std::move(base)),
      base_images_(std::move(base_images)), fiber_vars_(std::move(fiber_vars)) {
    for (auto& r : relations_) {
        ambient_.check_compat(r);
        ambient_.resort(r, kGrevlex);
    }
    for (auto& b : base_images_) ambient_.check_compat(b);
    if (base_ && base_images_.size() != base_->ambient().nvars())
        throw AmbientMismatch("base image count");
    for (auto i : fiber_vars_)
        if (i >= ambient_.nvars()) throw AmbientMismatch("fiber variable index");
}

const GroebnerBasis& RingPresentation::gb(const MonomialOrder& ord, Budget& budget) const {
    std::lock_guard<std::mutex> lock(gb_mutex_);
    auto key = ord.cache_key();
    auto it = gb_cache_.find(key);
    if (it != gb_cache_.end()) return *it->second;
    std::vector<Poly> sorted;
    sorted.reserve(relations_.size());
    for (const auto& r : relations_) sorted.push_back(ambient_.resorted(r, ord));
    auto computed = std::make_shared<const GroebnerBasis>(
        groebner_basis(ambient_, std::move(sorted), ord, budget));
    return *gb_cache_.emplace(key, std::move(computed)).first->second;
}

Poly RingPresentation::nf(const Poly& f, Budget& budget) const {
    return normal_form(ambient_, ambient_.resorted(f, kGrevlex), gb(kGrevlex, budget), budget);
}

bool RingPresentation::is_zero(const Poly& f, Budget& budget) const {
    return nf(f, budget).is_zero();
}

bool RingPresentation::equal(const Poly& a, const Poly& b, Budget& budget) const {
    return is_zero(ambient_.sub(a, b, kGrevlex), budget);
}

RingPtr trivial_ring(const PrimeField& field) {
    return std::make_shared<RingPresentation>(PolyRing(field, {}), std::vector<Poly>{}, nullptr,
                                              std::vector<Poly>{}, std::vector<std::size_t>{});
}

RingPtr make_ring(const PrimeField& field, std::vector<std::string> names,
                  std::vector<Poly> relations) {
    std::vector<std::size_t> fiber = identity_indices(names.size());
    return std::make_shared<RingPresentation>(PolyRing(field, std::move(names)),
                                              std::move(relations), nullptr, std::vector<Poly>{},
                                              std::move(fiber));
}

RingPtr extend_ring(const RingPtr& base, const std::vector<std::string>& new_vars,
                    std::vector<Poly> relations) {
    const PolyRing& ba = base->ambient();
    std::set<std::string> taken(ba.var_names().begin(), ba.var_names().end());
    std::vector<std::string> names = ba.var_names();
    std::vector<std::size_t> fiber;
    for (const auto& v : new_vars) {
        if (taken.count(v)) throw AmbientMismatch("variable name collision: " + v);
        taken.insert(v);
        fiber.push_back(names.size());
        names.push_back(v);
    }
    PolyRing ambient(ba.field(), names);
    std::vector<Poly> rels;
    auto emb = identity_indices(ba.nvars());
    for (const auto& r : base->relations()) rels.push_back(ba.embed(r, emb, ambient, kGrevlex));
    for (auto& r : relations) {
        ambient.check_compat(r);
        rels.push_back(std::move(r));
    }
    std::vector<Poly> base_images;
    for (std::size_t j = 0; j < ba.nvars(); ++j) base_images.push_back(ambient.variable(j));
    return std::make_shared<RingPresentation>(std::move(ambient), std::move(rels), base,
                                              std::move(base_images), std::move(fiber));
}

RingPtr quotient_ring(const RingPtr& ring, std::vector<Poly> extra) {
    std::vector<Poly> rels = ring->relations();
    for (auto& r : extra) {
        ring->ambient().check_compat(r);
        rels.push_back(std::move(r));
    }
    return std::make_shared<RingPresentation>(ring->ambient(), std::move(rels), ring->base(),
                                              ring->base_images(), ring->fiber_vars());
}

bool structurally_equal(const RingPresentation& a, const RingPresentation& b) {
    if (&a == &b) return true;
    if (!(a.ambient() == b.ambient())) return false;
    auto key = [](const RingPresentation& r) {
        std::vector<std::string> v;
        for (const auto& f : r.relations()) v.push_back(r.ambient().to_string(f));
        std::sort(v.begin(), v.end());
        return v;
    };
    if (key(a) != key(b)) return false;
    if (!a.base() != !b.base()) return false;
    if (a.base() && !structurally_equal(*a.base(), *b.base())) return false;
    if (a.base_images().size() != b.base_images().size()) return false;
    for (std::size_t i = 0; i < a.base_images().size(); ++i)
        if (!(a.base_images()[i] == b.base_images()[i])) return false;
    return true;
}

std::string describe(const RingPresentation& ring) {
    std::string s = "F_" + std::to_string(ring.ambient().field().p());
    if (ring.ambient().nvars()) {
        s += "[";
        for (std::size_t i = 0; i < ring.ambient().nvars(); ++i) {
            if (i) s += ",";
            s += ring.ambient().var_names()[i];
        }
        s += "]";
    }
    if (!ring.relations().empty()) {
        s += "/(";
        for (std::size_t i = 0; i < ring.relations().size(); ++i) {
            if (i) s += ", ";
            s += ring.ambient().to_string(ring.relations()[i]);
        }
        s += ")";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Maps.
// ---------------------------------------------------------------------------

AlgebraMap unchecked_map(RingPtr source, RingPtr target, std::vector<Poly> images,
                         std::string label) {
    if (images.size() != source->ambient().nvars()) throw AmbientMismatch("image count");
    for (const auto& f : images) target->ambient().check_compat(f);
    return AlgebraMap{std::move(source), std::move(target), std::move(images), std::move(label)};
}

AlgebraMap check_map(RingPtr source, RingPtr target, std::vector<Poly> images, Budget& budget,
                     std::string label) {
    AlgebraMap m = unchecked_map(std::move(source), std::move(target), std::move(images),
                                 std::move(label));
    for (auto& f : m.images) f = m.target->nf(f, budget);
    const auto& rels = m.source->relations();
    for (std::size_t i = 0; i < rels.size(); ++i) {
        Poly moved = m.source->ambient().compose(rels[i], m.images, m.target->ambient(), kGrevlex);
        if (!m.target->is_zero(moved, budget))
            throw NotWellDefined("relation " + std::to_string(i) + " of " +
                                     describe(*m.source) + " survives in " + describe(*m.target) +
                                     (m.label.empty() ? "" : " (map " + m.label + ")"),
                                 i);
    }
    return m;
}

Poly apply_map(const AlgebraMap& f, const Poly& value, Budget& budget) {
    f.source->ambient().check_compat(value);
    Poly moved = f.source->ambient().compose(value, f.images, f.target->ambient(), kGrevlex);
    return f.target->nf(moved, budget);
}

AlgebraMap compose(const AlgebraMap& outer, const AlgebraMap& inner, Budget& budget) {
    if (!structurally_equal(*inner.target, *outer.source))
        throw AmbientMismatch("composition through different rings");
    std::vector<Poly> images;
    images.reserve(inner.images.size());
    for (const auto& f : inner.images) images.push_back(apply_map(outer, f, budget));
    std::string label = outer.label.empty() && inner.label.empty()
                            ? ""
                            : outer.label + " . " + inner.label;
    return unchecked_map(inner.source, outer.target, std::move(images), std::move(label));
}

AlgebraMap identity_map(const RingPtr& ring) {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < ring->ambient().nvars(); ++i)
        images.push_back(ring->ambient().variable(i));
    return unchecked_map(ring, ring, std::move(images), "id");
}

AlgebraMap structure_map(const RingPtr& ring) {
    RingPtr src = ring->base() ? ring->base() : trivial_ring(ring->ambient().field());
    return unchecked_map(src, ring, ring->base_images(), "structure");
}

// ---------------------------------------------------------------------------
// Ideals.
// ---------------------------------------------------------------------------

IdealHandle make_ideal(RingPtr ring, std::vector<Poly> gens, Budget& budget) {
    std::vector<Poly> reduced;
    std::set<std::string> seen;
    for (const auto& g : gens) {
        Poly r = ring->nf(g, budget);
        if (r.is_zero()) continue;
        std::string key = ring->ambient().to_string(r);
        if (seen.insert(key).second) reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return ring->ambient().to_string(a) < ring->ambient().to_string(b);
    });
    return IdealHandle{std::move(ring), std::move(reduced)};
}

IdealHandle frobenius_power(const IdealHandle& ideal, unsigned e, Budget& budget) {
    std::vector<Poly> powered;
    powered.reserve(ideal.gens.size());
    for (const auto& g : ideal.gens)
        powered.push_back(ideal.ring->ambient().pow_p(g, e, kGrevlex));
    return make_ideal(ideal.ring, std::move(powered), budget);
}

bool ideal_is_zero(const IdealHandle& ideal, Budget& budget) {
    for (const auto& g : ideal.gens)
        if (!ideal.ring->is_zero(g, budget)) return false;
    return true;
}

namespace {

GroebnerBasis ideal_gb(const IdealHandle& ideal, Budget& budget) {
    std::vector<Poly> gens = ideal.ring->relations();
    for (const auto& g : ideal.gens) gens.push_back(g);
    return groebner_basis(ideal.ring->ambient(), std::move(gens), kGrevlex, budget);
}

} // namespace

bool ideal_contains(const IdealHandle& ideal, const Poly& f, Budget& budget) {
    GroebnerBasis gb = ideal_gb(ideal, budget);
    return normal_form(ideal.ring->ambient(), ideal.ring->ambient().resorted(f, kGrevlex), gb,
                       budget)
        .is_zero();
}

bool ideal_is_unit(const IdealHandle& ideal, Budget& budget) {
    return ideal_contains(ideal, ideal.ring->ambient().one(), budget);
}

bool ideal_equal(const IdealHandle& a, const IdealHandle& b, Budget& budget) {
    if (a.ring.get() != b.ring.get() && !structurally_equal(*a.ring, *b.ring))
        throw AmbientMismatch("ideal comparison across rings");
    for (const auto& g : a.gens)
        if (!ideal_contains(b, g, budget)) return false;
    for (const auto& g : b.gens)
        if (!ideal_contains(a, g, budget)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Constructions.
// ---------------------------------------------------------------------------

TensorProduct tensor_over_base(const AlgebraMap& alpha, const AlgebraMap& beta, Budget& budget) {
    if (!structurally_equal(*alpha.source, *beta.source))
        throw AmbientMismatch("tensor factors over different bases");
    const PolyRing& ra = alpha.target->ambient();
    const PolyRing& rc = beta.target->ambient();

    std::set<std::string> taken;
    std::vector<std::string> names;
    for (const auto& n : ra.var_names()) names.push_back(unique_name(n, taken));
    std::size_t off = names.size();
    for (const auto& n : rc.var_names()) names.push_back(unique_name(n, taken));
    PolyRing ambient(ra.field(), names);

    auto embL = identity_indices(ra.nvars());
    auto embR = offset_indices(rc.nvars(), off);

    std::vector<Poly> rels;
    for (const auto& f : alpha.target->relations()) rels.push_back(ra.embed(f, embL, ambient, kGrevlex));
    for (const auto& f : beta.target->relations()) rels.push_back(rc.embed(f, embR, ambient, kGrevlex));
    for (std::size_t j = 0; j < alpha.source->ambient().nvars(); ++j) {
        Poly l = ra.embed(alpha.images[j], embL, ambient, kGrevlex);
        Poly r = rc.embed(beta.images[j], embR, ambient, kGrevlex);
        rels.push_back(ambient.sub(l, r, kGrevlex));
    }

    std::vector<Poly> base_images;
    for (std::size_t j = 0; j < rc.nvars(); ++j) base_images.push_back(ambient.variable(off + j));
    std::vector<std::size_t> fiber = identity_indices(ra.nvars());

    auto ring = std::make_shared<RingPresentation>(std::move(ambient), std::move(rels),
                                                   beta.target, std::move(base_images),
                                                   std::move(fiber));
    (void)budget;
    std::vector<Poly> limg, rimg;
    for (std::size_t i = 0; i < ra.nvars(); ++i) limg.push_back(ring->ambient().variable(i));
    for (std::size_t j = 0; j < rc.nvars(); ++j) rimg.push_back(ring->ambient().variable(off + j));
    AlgebraMap left = unchecked_map(alpha.target, ring, std::move(limg), "coprojection-left");
    AlgebraMap right = unchecked_map(beta.target, ring, std::move(rimg), "coprojection-right");
    return TensorProduct{ring, std::move(left), std::move(right)};
}

namespace {

// Mixed ambient [target vars | one tag per source var], with the target block
// dominant, plus the graph ideal of phi.
struct GraphRing {
    PolyRing ambient;
    std::vector<Poly> graph; // I_target + (tag_j - phi_j)
    std::size_t n_target;
    std::size_t n_tags;
    std::vector<std::uint8_t> target_mask;
};

GraphRing graph_ring(const RingPtr& target, const std::vector<Poly>& tag_images,
                     const std::vector<std::string>& tag_hints) {
    const PolyRing& rt = target->ambient();
    std::set<std::string> taken;
    std::vector<std::string> names;
    for (const auto& n : rt.var_names()) names.push_back(unique_name(n, taken));
    for (const auto& n : tag_hints) names.push_back(unique_name(n, taken));
    PolyRing ambient(rt.field(), names);
    auto embT = identity_indices(rt.nvars());
    std::vector<Poly> graph;
    for (const auto& f : target->relations()) graph.push_back(rt.embed(f, embT, ambient, kGrevlex));
    for (std::size_t j = 0; j < tag_images.size(); ++j) {
        Poly tag = ambient.variable(rt.nvars() + j);
        Poly img = rt.embed(tag_images[j], embT, ambient, kGrevlex);
        graph.push_back(ambient.sub(tag, img, kGrevlex));
    }
    std::vector<std::uint8_t> mask(ambient.nvars(), 0);
    for (std::size_t i = 0; i < rt.nvars(); ++i) mask[i] = 1;
    return GraphRing{std::move(ambient), std::move(graph), rt.nvars(), tag_images.size(),
                     std::move(mask)};
}

} // namespace

IdealHandle ring_map_kernel(const AlgebraMap& phi, Budget& budget) {
    std::vector<std::string> hints;
    for (const auto& n : phi.source->ambient().var_names()) hints.push_back(n + "~");
    GraphRing g = graph_ring(phi.target, phi.images, hints);
    std::vector<Poly> elim = eliminate(g.ambient, g.graph, g.target_mask, budget);
    std::vector<std::size_t> back(g.ambient.nvars(), 0);
    // Only tag slots are used by eliminated generators.
    for (std::size_t j = 0; j < g.n_tags; ++j) back[g.n_target + j] = j;
    std::vector<Poly> rows;
    for (const auto& f : elim)
        rows.push_back(g.ambient.embed(f, back, phi.source->ambient(), kGrevlex));
    return make_ideal(phi.source, std::move(rows), budget);
}

SubalgebraCert subalgebra_membership(const RingPtr& ring, const std::vector<Poly>& gens,
                                     const Poly& probe, Budget& budget) {
    return subalgebra_membership_multi(ring, gens, {probe}, budget)[0];
}

std::vector<SubalgebraCert> subalgebra_membership_multi(const RingPtr& ring,
                                                        const std::vector<Poly>& gens,
                                                        const std::vector<Poly>& probes,
                                                        Budget& budget) {
    std::vector<std::string> hints;
    for (std::size_t i = 0; i < gens.size(); ++i) hints.push_back("w" + std::to_string(i + 1));
    GraphRing g = graph_ring(ring, gens, hints);
    MonomialOrder ord = MonomialOrder::block(g.target_mask);
    std::vector<Poly> sorted;
    for (const auto& f : g.graph) sorted.push_back(g.ambient.resorted(f, ord));
    GroebnerBasis gb = groebner_basis(g.ambient, std::move(sorted), ord, budget);

    PolyRing tag_ring(ring->ambient().field(), hints);
    std::vector<std::uint8_t> tag_slots(g.ambient.nvars(), 0);
    for (std::size_t j = 0; j < g.n_tags; ++j) tag_slots[g.n_target + j] = 1;
    std::vector<std::size_t> back(g.ambient.nvars(), 0);
    for (std::size_t j = 0; j < g.n_tags; ++j) back[g.n_target + j] = j;

    auto embT = identity_indices(ring->ambient().nvars());
    std::vector<SubalgebraCert> out;
    for (const auto& probe : probes) {
        ring->ambient().check_compat(probe);
        Poly moved = ring->ambient().embed(probe, embT, g.ambient, ord);
        Poly nf = normal_form(g.ambient, moved, gb, budget);
        bool member = true;
        for (const auto& t : nf.terms())
            if (!t.mono.supported_on(tag_slots)) {
                member = false;
                break;
            }
        SubalgebraCert cert{member, tag_ring.zero(), tag_ring};
        if (member) cert.expression = g.ambient.embed(nf, back, tag_ring, kGrevlex);
        out.push_back(std::move(cert));
    }
    return out;
}

FpDim fp_dimension(const RingPtr& ring, Budget& budget) {
    const GroebnerBasis& gb = ring->gb(kGrevlex, budget);
    Staircase st = standard_monomials(ring->ambient(), gb, budget);
    if (!st.finite) return FpDim{false, 0};
    return FpDim{true, st.monomials.size()};
}

// ---------------------------------------------------------------------------
// Module structure over a subring.
// ---------------------------------------------------------------------------

std::vector<std::vector<Poly>> subring_module_kernel(const AlgebraMap& alpha,
                                                     const std::vector<Poly>& gens,
                                                     Budget& budget) {
    std::vector<std::string> hints;
    for (const auto& n : alpha.source->ambient().var_names()) hints.push_back(n + "~");
    GraphRing g = graph_ring(alpha.target, alpha.images, hints);
    std::size_t s = gens.size();

    ModuleOrder ord;
    ord.base = kGrevlex;
    ord.elim_mask = g.target_mask;
    auto embT = identity_indices(alpha.target->ambient().nvars());

    std::vector<MVec> basis_gens;
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Poly> comps(1 + s, g.ambient.zero());
        comps[0] = alpha.target->ambient().embed(gens[i], embT, g.ambient, kGrevlex);
        comps[1 + i] = g.ambient.constant(-1);
        basis_gens.push_back(to_mvec(g.ambient, comps, ord));
    }
    for (const auto& rel : g.graph) {
        std::vector<Poly> comps(1 + s, g.ambient.zero());
        comps[0] = rel;
        basis_gens.push_back(to_mvec(g.ambient, comps, ord));
    }
    ModuleBasis mb = module_groebner(g.ambient, static_cast<std::uint32_t>(1 + s),
                                     std::move(basis_gens), ord, budget);

    std::vector<std::uint8_t> tag_slots(g.ambient.nvars(), 0);
    for (std::size_t j = 0; j < g.n_tags; ++j) tag_slots[g.n_target + j] = 1;
    std::vector<std::size_t> back(g.ambient.nvars(), 0);
    for (std::size_t j = 0; j < g.n_tags; ++j) back[g.n_target + j] = j;

    std::vector<std::vector<Poly>> rows;
    for (const auto& v : mb.gens) {
        bool clean = true;
        for (const auto& t : v.terms())
            if (t.pos == 0 || !t.mono.supported_on(tag_slots)) {
                clean = false;
                break;
            }
        if (!clean) continue;
        std::vector<Poly> comps = from_mvec(g.ambient, v, static_cast<std::uint32_t>(1 + s));
        std::vector<Poly> row;
        bool all_zero = true;
        for (std::size_t i = 1; i <= s; ++i) {
            Poly entry = g.ambient.embed(comps[i], back, alpha.source->ambient(), kGrevlex);
            entry = alpha.source->nf(entry, budget);
            if (!entry.is_zero()) all_zero = false;
            row.push_back(std::move(entry));
        }
        if (!all_zero) rows.push_back(std::move(row));
    }
    return rows;
}

SubringModuleData module_over_subring(const AlgebraMap& alpha, std::size_t max_generators,
                                      Budget& budget) {
    std::vector<std::string> hints;
    for (const auto& n : alpha.source->ambient().var_names()) hints.push_back(n + "~");
    GraphRing g = graph_ring(alpha.target, alpha.images, hints);
    MonomialOrder ord = MonomialOrder::block(g.target_mask);
    std::vector<Poly> sorted;
    for (const auto& f : g.graph) sorted.push_back(g.ambient.resorted(f, ord));
    GroebnerBasis gb = groebner_basis(g.ambient, std::move(sorted), ord, budget);

    // Leads free of tag variables, restricted to the target-variable lattice.
    std::vector<std::uint8_t> target_only(g.ambient.nvars(), 0);
    for (std::size_t i = 0; i < g.n_target; ++i) target_only[i] = 1;
    std::vector<Monomial> leads;
    for (const auto& b : gb.gens) {
        if (!b.lead().mono.supported_on(target_only)) continue;
        Monomial m(g.n_target);
        for (std::size_t i = 0; i < g.n_target; ++i) m.set_exp(i, b.lead().mono.exp(i));
        leads.push_back(std::move(m));
    }
    Staircase st = staircase_from_leads(g.n_target, leads, budget);
    SubringModuleData out;
    out.module_finite = st.finite;
    if (!st.finite) return out;
    out.generators = st.monomials;
    if (out.generators.size() > max_generators) return out;

    std::vector<Poly> gen_polys;
    for (const auto& m : out.generators) gen_polys.push_back(alpha.target->ambient().monomial(m));
    out.relations = subring_module_kernel(alpha, gen_polys, budget);
    out.presentation_computed = true;
    return out;
}

} // namespace kunz
