#include "kunz/frobenius.hpp"

#include <algorithm>

namespace kunz {

namespace {

const MonomialOrder kGrevlex = MonomialOrder::grevlex();

} // namespace

FrobeniusData build_frobenius(const AlgebraMap& alpha, unsigned e, Budget& budget) {
    if (e == 0) throw Error("frobenius iterate needs e >= 1");
    std::uint64_t p = alpha.source->ambient().field().p();
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (q > (std::uint64_t{1} << 31) / p) throw BudgetExceeded("frobenius exponent p^e");
        q *= p;
    }

    // R-copy glued along u_j |-> u_j^q: the twisted module action
    // r * F_e(r') = F_e(r^q r') in presentation form.
    const RingPtr& R = alpha.source;
    std::vector<Poly> twist;
    for (std::size_t j = 0; j < R->ambient().nvars(); ++j)
        twist.push_back(R->ambient().pow(R->ambient().variable(j), q, kGrevlex));
    AlgebraMap frob_e = unchecked_map(R, R, std::move(twist), "frobenius-twist");
    TensorProduct b = tensor_over_base(alpha, frob_e, budget);

    const PolyRing& RA = alpha.target->ambient();
    std::vector<Poly> images;
    for (std::size_t i = 0; i < RA.nvars(); ++i)
        images.push_back(RA.pow(RA.variable(i), q, kGrevlex));
    for (const auto& g : alpha.images) images.push_back(g);
    AlgebraMap psi = check_map(b.ring, alpha.target, std::move(images), budget,
                               "relative-frobenius");
    return FrobeniusData{e, q, alpha, std::move(b), std::move(psi)};
}

SurjectivityReport frobenius_surjective(const FrobeniusData& fd, Budget& budget) {
    const PolyRing& RA = fd.alpha.target->ambient();
    SurjectivityReport out;
    for (std::size_t i = 0; i < RA.nvars(); ++i)
        out.subalgebra_gens.push_back(RA.pow(RA.variable(i), fd.q, kGrevlex));
    for (const auto& g : fd.alpha.images) out.subalgebra_gens.push_back(g);

    std::vector<Poly> probes;
    for (std::size_t i = 0; i < RA.nvars(); ++i) probes.push_back(RA.variable(i));
    out.certs = subalgebra_membership_multi(fd.alpha.target, out.subalgebra_gens, probes, budget);
    out.surjective = true;
    for (const auto& c : out.certs)
        if (!c.member) out.surjective = false;
    return out;
}

InjectivityReport frobenius_injective(const FrobeniusData& fd, Budget& budget) {
    IdealHandle ker = ring_map_kernel(fd.psi, budget);
    bool inj = ker.gens.empty();
    return InjectivityReport{inj, std::move(ker)};
}

bool frobenius_iso(const FrobeniusData& fd, Budget& budget) {
    return frobenius_surjective(fd, budget).surjective &&
           frobenius_injective(fd, budget).injective;
}

IterateReport iterate_consistency(const AlgebraMap& alpha, unsigned e_max, Budget& budget) {
    IterateReport out;
    out.e_max = e_max;
    for (unsigned e = 1; e <= e_max; ++e) {
        FrobeniusData fd = build_frobenius(alpha, e, budget);
        bool s = frobenius_surjective(fd, budget).surjective;
        bool i = frobenius_injective(fd, budget).injective;
        out.surjective.push_back(s);
        out.injective.push_back(i);
        out.iso.push_back(s && i);
    }
    out.coherent = true;
    for (bool v : out.iso)
        if (v != out.iso.front()) out.coherent = false;
    return out;
}

FstarModule fstar_module_generators(const FrobeniusData& fd, std::size_t max_generators,
                                    Budget& budget) {
    const PolyRing& RA = fd.alpha.target->ambient();
    std::size_t n = RA.nvars();
    FstarModule out;

    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        count *= fd.q;
        if (count > max_generators) return out; // box too large to materialize
    }

    std::vector<std::uint32_t> v(n, 0);
    while (true) {
        budget.charge(1, "frobenius generator box");
        out.generators.push_back(Monomial(std::vector<std::uint32_t>(v)));
        std::size_t k = 0;
        while (k < n) {
            if (++v[k] < fd.q) break;
            v[k] = 0;
            ++k;
        }
        if (k == n) break;
    }
    std::sort(out.generators.begin(), out.generators.end(),
              [&](const Monomial& a, const Monomial& b) { return kGrevlex.less(a, b); });
    out.generators_materialized = true;

    std::vector<Poly> gen_polys;
    for (const auto& m : out.generators) gen_polys.push_back(RA.monomial(m));
    auto rows = subring_module_kernel(fd.psi, gen_polys, budget);
    out.presentation = make_module(fd.b.ring, static_cast<std::uint32_t>(out.generators.size()),
                                   std::move(rows), budget);
    out.presentation_computed = true;
    return out;
}

} // namespace kunz
