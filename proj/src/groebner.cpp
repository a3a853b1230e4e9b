#include "kunz/groebner.hpp"

#include <algorithm>
#include <set>

namespace kunz {

int ModuleOrder::compare(const MTerm& a, const MTerm& b) const {
    if (!elim_mask.empty()) {
        int c = masked_grevlex(a.mono, b.mono, elim_mask);
        if (c) return c;
    }
    if (a.pos != b.pos) {
        std::uint32_t ra = pos_rank.empty() ? a.pos : pos_rank[a.pos];
        std::uint32_t rb = pos_rank.empty() ? b.pos : pos_rank[b.pos];
        if (ra != rb) return ra < rb ? 1 : -1; // lower rank = greater
    }
    return base.compare(a.mono, b.mono);
}

MVec mvec_from_terms(const PolyRing& ring, std::vector<MTerm> terms, const ModuleOrder& ord) {
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const MTerm& a, const MTerm& b) { return ord.compare(a, b) > 0; });
    MVec v;
    const PrimeField& f = ring.field();
    for (auto& t : terms) {
        std::uint32_t c = t.coeff % f.p();
        if (!c) continue;
        if (!v.terms_.empty() && v.terms_.back().pos == t.pos && v.terms_.back().mono == t.mono) {
            std::uint32_t s = f.add(v.terms_.back().coeff, c);
            if (s)
                v.terms_.back().coeff = s;
            else
                v.terms_.pop_back();
        } else {
            v.terms_.push_back({t.pos, std::move(t.mono), c});
        }
    }
    return v;
}

MVec to_mvec(const PolyRing& ring, const std::vector<Poly>& components, const ModuleOrder& ord) {
    std::vector<MTerm> terms;
    for (std::size_t p = 0; p < components.size(); ++p) {
        ring.check_compat(components[p]);
        for (const auto& t : components[p].terms())
            terms.push_back({static_cast<std::uint32_t>(p), t.mono, t.coeff});
    }
    return mvec_from_terms(ring, std::move(terms), ord);
}

std::vector<Poly> from_mvec(const PolyRing& ring, const MVec& v, std::uint32_t rank) {
    std::vector<std::vector<Term>> comps(rank);
    for (const auto& t : v.terms()) comps[t.pos].push_back({t.mono, t.coeff});
    std::vector<Poly> out;
    out.reserve(rank);
    for (auto& c : comps) out.push_back(ring.from_terms(std::move(c), MonomialOrder::grevlex()));
    return out;
}

MVec mvec_add(const PolyRing& ring, const MVec& a, const MVec& b, const ModuleOrder& ord) {
    const PrimeField& f = ring.field();
    MVec r;
    r.mutable_terms().reserve(a.terms().size() + b.terms().size());
    std::size_t i = 0, j = 0;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    while (i < ta.size() && j < tb.size()) {
        int c = ord.compare(ta[i], tb[j]);
        if (c > 0) {
            r.mutable_terms().push_back(ta[i++]);
        } else if (c < 0) {
            r.mutable_terms().push_back(tb[j++]);
        } else {
            std::uint32_t s = f.add(ta[i].coeff, tb[j].coeff);
            if (s) r.mutable_terms().push_back({ta[i].pos, ta[i].mono, s});
            ++i, ++j;
        }
    }
    for (; i < ta.size(); ++i) r.mutable_terms().push_back(ta[i]);
    for (; j < tb.size(); ++j) r.mutable_terms().push_back(tb[j]);
    return r;
}

MVec mvec_mul_term(const PolyRing& ring, const MVec& v, const Monomial& m, std::uint32_t c) {
    const PrimeField& f = ring.field();
    std::uint32_t cr = c % f.p();
    MVec r;
    if (!cr) return r;
    r.mutable_terms().reserve(v.terms().size());
    for (const auto& t : v.terms())
        r.mutable_terms().push_back({t.pos, t.mono.mul(m), f.mul(t.coeff, cr)});
    return r;
}

namespace {

MVec make_monic(const PolyRing& ring, MVec v) {
    if (v.is_zero()) return v;
    std::uint32_t s = ring.field().inv(v.lead().coeff);
    if (s == 1) return v;
    for (auto& t : v.mutable_terms()) t.coeff = ring.field().mul(t.coeff, s);
    return v;
}

// Full normal form against `basis`; reducer search is lowest index first.
MVec nf_against(const PolyRing& ring, MVec work, const std::vector<MVec>& basis,
                const ModuleOrder& ord, Budget& budget, const MVec* skip = nullptr) {
    MVec result;
    const PrimeField& f = ring.field();
    while (!work.is_zero()) {
        const MTerm& lt = work.lead();
        const MVec* red = nullptr;
        for (const auto& g : basis) {
            if (&g == skip || g.is_zero()) continue;
            if (g.lead().pos == lt.pos && g.lead().mono.divides(lt.mono)) {
                red = &g;
                break;
            }
        }
        if (!red) {
            result.mutable_terms().push_back(lt);
            work.mutable_terms().erase(work.mutable_terms().begin());
            continue;
        }
        budget.charge();
        std::uint32_t c = f.mul(lt.coeff, f.inv(red->lead().coeff));
        Monomial m = lt.mono.div(red->lead().mono);
        work = mvec_add(ring, work, mvec_mul_term(ring, *red, m, f.neg(c)), ord);
    }
    return result;
}

MVec s_vector(const PolyRing& ring, const MVec& a, const MVec& b, const ModuleOrder& ord) {
    const PrimeField& f = ring.field();
    Monomial l = a.lead().mono.lcm(b.lead().mono);
    MVec ua = mvec_mul_term(ring, a, l.div(a.lead().mono), f.inv(a.lead().coeff));
    MVec ub = mvec_mul_term(ring, b, l.div(b.lead().mono), f.neg(f.inv(b.lead().coeff)));
    return mvec_add(ring, ua, ub, ord);
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::int64_t deg;
};

} // namespace

ModuleBasis module_groebner(const PolyRing& ring, std::uint32_t rank, std::vector<MVec> gens,
                            const ModuleOrder& ord, Budget& budget) {
    for (const auto& g : gens)
        for (const auto& t : g.terms())
            if (t.pos >= rank) throw AmbientMismatch("module position out of range");

    std::vector<MVec> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(make_monic(ring, std::move(g)));

    std::set<std::pair<std::size_t, std::size_t>> treated;
    std::vector<Pair> queue;
    auto push_pairs = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (basis[i].lead().pos != basis[n].lead().pos) continue;
            Monomial l = basis[i].lead().mono.lcm(basis[n].lead().mono);
            queue.push_back({i, n, l, l.total_degree()});
        }
    };
    for (std::size_t n = 1; n < basis.size(); ++n) push_pairs(n);

    while (!queue.empty()) {
        budget.charge(1, "s-pairs");
        // Normal selection: smallest lcm degree, then structural tie-breaks.
        std::size_t best = 0;
        for (std::size_t k = 1; k < queue.size(); ++k) {
            const Pair& a = queue[k];
            const Pair& b = queue[best];
            if (a.deg != b.deg ? a.deg < b.deg
                               : (a.lcm != b.lcm ? a.lcm.raw_compare(b.lcm) < 0
                                                 : (a.i != b.i ? a.i < b.i : a.j < b.j)))
                best = k;
        }
        Pair pr = queue[best];
        queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(best));
        treated.insert({pr.i, pr.j});

        // Product criterion (ideals only: not valid for higher-rank modules).
        if (rank == 1 && basis[pr.i].lead().mono.coprime(basis[pr.j].lead().mono)) continue;

        // Chain criterion: some k divides the lcm and both side pairs are done.
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (basis[k].lead().pos != basis[pr.i].lead().pos) continue;
            if (!basis[k].lead().mono.divides(pr.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) {
                return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            };
            if (treated.count(key(pr.i, k)) && treated.count(key(pr.j, k))) chained = true;
        }
        if (chained) continue;

        MVec h = nf_against(ring, s_vector(ring, basis[pr.i], basis[pr.j], ord), basis, ord, budget);
        if (h.is_zero()) continue;
        basis.push_back(make_monic(ring, std::move(h)));
        push_pairs(basis.size() - 1);
    }

    // Minimalize: drop elements whose lead is divisible by another lead.
    std::vector<bool> dead(basis.size(), false);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size() && !dead[i]; ++j) {
            if (i == j || dead[j]) continue;
            const MTerm& li = basis[i].lead();
            const MTerm& lj = basis[j].lead();
            if (li.pos == lj.pos && lj.mono.divides(li.mono) && (lj.mono != li.mono || j < i))
                dead[i] = true;
        }
    }
    std::vector<MVec> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!dead[i]) minimal.push_back(std::move(basis[i]));

    // Tail-reduce; leads are pairwise irreducible, so one pass settles tails.
    for (std::size_t i = 0; i < minimal.size(); ++i)
        minimal[i] = make_monic(ring, nf_against(ring, minimal[i], minimal, ord, budget, &minimal[i]));

    std::sort(minimal.begin(), minimal.end(),
              [&](const MVec& a, const MVec& b) { return ord.compare(a.lead(), b.lead()) < 0; });

    ModuleBasis out{std::move(minimal), ord, rank};
    if (!module_buchberger_holds(ring, out, budget))
        throw InternalError("emitted basis fails the Buchberger criterion");
    return out;
}

MVec module_nf(const PolyRing& ring, const MVec& v, const ModuleBasis& basis, Budget& budget) {
    return nf_against(ring, v, basis.gens, basis.order, budget);
}

bool module_buchberger_holds(const PolyRing& ring, const ModuleBasis& basis, Budget& budget) {
    for (std::size_t i = 0; i < basis.gens.size(); ++i)
        for (std::size_t j = i + 1; j < basis.gens.size(); ++j) {
            if (basis.gens[i].lead().pos != basis.gens[j].lead().pos) continue;
            MVec s = s_vector(ring, basis.gens[i], basis.gens[j], basis.order);
            if (!nf_against(ring, s, basis.gens, basis.order, budget).is_zero()) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Ideal layer: rank-one wrappers.
// ---------------------------------------------------------------------------

namespace {

MVec poly_to_mvec(const PolyRing& ring, const Poly& f, const ModuleOrder& ord) {
    return to_mvec(ring, {f}, ord);
}

Poly mvec_to_poly(const PolyRing& ring, const MVec& v) {
    return from_mvec(ring, v, 1)[0];
}

ModuleOrder ring_order(const MonomialOrder& ord) { return ModuleOrder::pot(ord); }

} // namespace

GroebnerBasis groebner_basis(const PolyRing& ring, std::vector<Poly> gens,
                             const MonomialOrder& ord, Budget& budget) {
    std::vector<MVec> mv;
    mv.reserve(gens.size());
    for (const auto& g : gens) {
        ring.check_compat(g);
        mv.push_back(poly_to_mvec(ring, g, ring_order(ord)));
    }
    ModuleBasis mb = module_groebner(ring, 1, std::move(mv), ring_order(ord), budget);
    GroebnerBasis gb;
    gb.order = ord;
    gb.reduced = true;
    // Terms must be sorted under `ord` so lead() is the basis order's lead.
    for (const auto& v : mb.gens) gb.gens.push_back(ring.resorted(mvec_to_poly(ring, v), ord));
    return gb;
}

Poly normal_form(const PolyRing& ring, const Poly& f, const GroebnerBasis& gb, Budget& budget) {
    ring.check_compat(f);
    ModuleOrder ord = ring_order(gb.order);
    std::vector<MVec> basis;
    basis.reserve(gb.gens.size());
    for (const auto& g : gb.gens) basis.push_back(poly_to_mvec(ring, g, ord));
    MVec v = poly_to_mvec(ring, f, ord);
    ModuleBasis mb{std::move(basis), ord, 1};
    return mvec_to_poly(ring, module_nf(ring, v, mb, budget));
}

bool buchberger_criterion_holds(const PolyRing& ring, const GroebnerBasis& gb, Budget& budget) {
    ModuleOrder ord = ring_order(gb.order);
    std::vector<MVec> basis;
    for (const auto& g : gb.gens) basis.push_back(poly_to_mvec(ring, g, ord));
    return module_buchberger_holds(ring, ModuleBasis{std::move(basis), ord, 1}, budget);
}

std::vector<Poly> eliminate(const PolyRing& ring, const std::vector<Poly>& gens,
                            const std::vector<std::uint8_t>& drop, Budget& budget) {
    if (drop.size() != ring.nvars()) throw AmbientMismatch("drop mask size");
    MonomialOrder ord = MonomialOrder::block(drop);
    std::vector<Poly> sorted;
    sorted.reserve(gens.size());
    for (const auto& g : gens) sorted.push_back(ring.resorted(g, ord));
    GroebnerBasis gb = groebner_basis(ring, std::move(sorted), ord, budget);
    std::vector<std::uint8_t> kept(ring.nvars());
    for (std::size_t i = 0; i < drop.size(); ++i) kept[i] = drop[i] ? 0 : 1;
    std::vector<Poly> out;
    for (const auto& g : gb.gens) {
        bool clean = true;
        for (const auto& t : g.terms())
            if (!t.mono.supported_on(kept)) {
                clean = false;
                break;
            }
        if (clean) out.push_back(ring.resorted(g, MonomialOrder::grevlex()));
    }
    return out;
}

Staircase staircase_from_leads(std::size_t n, const std::vector<Monomial>& leads,
                               Budget& budget) {
    Staircase out;
    for (const auto& l : leads)
        if (l.is_one()) return Staircase{true, {}}; // unit ideal, zero ring
    std::vector<std::uint32_t> bound(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bool found = false;
        for (const auto& l : leads) {
            bool pure = l.exp(i) > 0;
            for (std::size_t k = 0; k < n && pure; ++k)
                if (k != i && l.exp(k)) pure = false;
            if (pure) {
                bound[i] = found ? std::min(bound[i], l.exp(i)) : l.exp(i);
                found = true;
            }
        }
        if (!found) return Staircase{false, {}};
    }
    // Enumerate the bounding box, keep monomials no lead divides.
    std::vector<std::uint32_t> cur(n, 0);
    while (true) {
        budget.charge(1, "staircase enumeration");
        Monomial m((std::vector<std::uint32_t>(cur)));
        bool divisible = false;
        for (const auto& l : leads)
            if (l.divides(m)) {
                divisible = true;
                break;
            }
        if (!divisible) out.monomials.push_back(m);
        std::size_t k = 0;
        while (k < n) {
            if (++cur[k] < bound[k]) break;
            cur[k] = 0;
            ++k;
        }
        if (k == n) break;
        if (n == 0) break;
    }
    MonomialOrder g = MonomialOrder::grevlex();
    std::sort(out.monomials.begin(), out.monomials.end(),
              [&](const Monomial& a, const Monomial& b) { return g.compare(a, b) < 0; });
    out.finite = true;
    return out;
}

Staircase standard_monomials(const PolyRing& ring, const GroebnerBasis& gb, Budget& budget) {
    std::vector<Monomial> leads;
    leads.reserve(gb.gens.size());
    for (const auto& g : gb.gens) leads.push_back(g.lead().mono);
    return staircase_from_leads(ring.nvars(), leads, budget);
}

ModuleStaircase module_standard_monomials(const PolyRing& ring, const ModuleBasis& basis,
                                          Budget& budget) {
    ModuleStaircase out;
    std::size_t n = ring.nvars();
    for (std::uint32_t pos = 0; pos < basis.rank; ++pos) {
        std::vector<Monomial> leads;
        bool dead = false;
        for (const auto& g : basis.gens)
            if (g.lead().pos == pos) {
                if (g.lead().mono.is_one()) dead = true;
                leads.push_back(g.lead().mono);
            }
        if (dead) continue;
        std::vector<std::uint32_t> bound(n, 0);
        bool finite = true;
        for (std::size_t i = 0; i < n && finite; ++i) {
            bool found = false;
            for (const auto& l : leads) {
                bool pure = l.exp(i) > 0;
                for (std::size_t k = 0; k < n && pure; ++k)
                    if (k != i && l.exp(k)) pure = false;
                if (pure) {
                    bound[i] = found ? std::min(bound[i], l.exp(i)) : l.exp(i);
                    found = true;
                }
            }
            finite = found;
        }
        if (!finite) return ModuleStaircase{false, {}};
        std::vector<std::uint32_t> cur(n, 0);
        while (true) {
            budget.charge(1, "staircase enumeration");
            Monomial m((std::vector<std::uint32_t>(cur)));
            bool divisible = false;
            for (const auto& l : leads)
                if (l.divides(m)) {
                    divisible = true;
                    break;
                }
            if (!divisible) out.entries.push_back({pos, m});
            std::size_t k = 0;
            while (k < n) {
                if (++cur[k] < bound[k]) break;
                cur[k] = 0;
                ++k;
            }
            if (k == n) break;
            if (n == 0) break;
        }
    }
    out.finite = true;
    return out;
}

} // namespace kunz
