#include "kunz/poly.hpp"

#include <algorithm>
#include <map>

namespace kunz {

std::int64_t Poly::degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto key = [](const Poly& p) {
        std::vector<const Term*> v;
        v.reserve(p.terms_.size());
        for (const auto& t : p.terms_) v.push_back(&t);
        std::sort(v.begin(), v.end(),
                  [](const Term* a, const Term* b) { return a->mono.raw_compare(b->mono) < 0; });
        return v;
    };
    auto a = key(*this), b = key(o);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]->coeff != b[i]->coeff || a[i]->mono != b[i]->mono) return false;
    return true;
}

PolyRing::PolyRing(PrimeField field, std::vector<std::string> var_names)
    : field_(field), var_names_(std::move(var_names)) {}

void PolyRing::check_compat(const Poly& f) const {
    for (const auto& t : f.terms_)
        if (t.mono.nvars() != nvars()) throw AmbientMismatch("polynomial from another ring");
}

Poly PolyRing::constant(std::int64_t c) const {
    Poly p;
    std::uint32_t r = field_.reduce(c);
    if (r) p.terms_.push_back({Monomial::one(nvars()), r});
    return p;
}

Poly PolyRing::variable(std::size_t i) const {
    if (i >= nvars()) throw AmbientMismatch("variable index out of range");
    Monomial m(nvars());
    m.set_exp(i, 1);
    Poly p;
    p.terms_.push_back({m, 1});
    return p;
}

Poly PolyRing::monomial(Monomial m, std::uint32_t coeff) const {
    if (m.nvars() != nvars()) throw AmbientMismatch("monomial arity");
    Poly p;
    std::uint32_t r = coeff % field_.p();
    if (r) p.terms_.push_back({std::move(m), r});
    return p;
}

Poly PolyRing::from_terms(std::vector<Term> terms, const MonomialOrder& ord) const {
    std::stable_sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
        return ord.compare(a.mono, b.mono) > 0;
    });
    Poly p;
    for (auto& t : terms) {
        std::uint32_t c = t.coeff % field_.p();
        if (!c) continue;
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            std::uint32_t s = field_.add(p.terms_.back().coeff, c);
            if (s)
                p.terms_.back().coeff = s;
            else
                p.terms_.pop_back();
        } else {
            p.terms_.push_back({std::move(t.mono), c});
        }
    }
    return p;
}

void PolyRing::resort(Poly& f, const MonomialOrder& ord) const {
    f = from_terms(std::move(f.terms_), ord);
}

Poly PolyRing::resorted(const Poly& f, const MonomialOrder& ord) const {
    return from_terms(f.terms_, ord);
}

Poly PolyRing::add(const Poly& a, const Poly& b, const MonomialOrder& ord) const {
    Poly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        int c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            std::uint32_t s = field_.add(a.terms_[i].coeff, b.terms_[j].coeff);
            if (s) r.terms_.push_back({a.terms_[i].mono, s});
            ++i, ++j;
        }
    }
    for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
    return r;
}

Poly PolyRing::neg(const Poly& a) const {
    Poly r = a;
    for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
    return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b, const MonomialOrder& ord) const {
    return add(a, neg(b), ord);
}

Poly PolyRing::scalar_mul(std::uint32_t c, const Poly& a) const {
    std::uint32_t r = c % field_.p();
    if (!r) return Poly();
    Poly out = a;
    for (auto& t : out.terms_) t.coeff = field_.mul(t.coeff, r);
    return out;
}

Poly PolyRing::mul_term(const Poly& a, const Monomial& m, std::uint32_t c) const {
    std::uint32_t r = c % field_.p();
    if (!r || a.is_zero()) return Poly();
    Poly out;
    out.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_)
        out.terms_.push_back({t.mono.mul(m), field_.mul(t.coeff, r)});
    return out;
}

Poly PolyRing::mul(const Poly& a, const Poly& b, const MonomialOrder& ord) const {
    std::vector<Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            prods.push_back({ta.mono.mul(tb.mono), field_.mul(ta.coeff, tb.coeff)});
    return from_terms(std::move(prods), ord);
}

Poly PolyRing::pow(const Poly& a, std::uint64_t k, const MonomialOrder& ord) const {
    Poly acc = one();
    Poly base = a;
    while (k) {
        if (k & 1) acc = mul(acc, base, ord);
        k >>= 1;
        if (k) base = mul(base, base, ord);
    }
    return acc;
}

Poly PolyRing::pow_p(const Poly& a, unsigned e, const MonomialOrder& ord) const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= field_.p();
        if (q > (1ull << 31)) throw BudgetExceeded("p^e overflow");
    }
    std::vector<Term> terms;
    terms.reserve(a.terms_.size());
    for (const auto& t : a.terms_) terms.push_back({t.mono.pow(q), t.coeff});
    return from_terms(std::move(terms), ord);
}

Poly PolyRing::partial_derivative(const Poly& a, std::size_t var, const MonomialOrder& ord) const {
    if (var >= nvars()) throw AmbientMismatch("derivative variable out of range");
    std::vector<Term> terms;
    for (const auto& t : a.terms_) {
        std::uint32_t e = t.mono.exp(var);
        if (!e) continue;
        std::uint32_t c = field_.mul(t.coeff, e % field_.p());
        if (!c) continue;
        Monomial m = t.mono;
        m.set_exp(var, e - 1);
        terms.push_back({std::move(m), c});
    }
    return from_terms(std::move(terms), ord);
}

Poly PolyRing::compose(const Poly& f, const std::vector<Poly>& images, const PolyRing& target,
                       const MonomialOrder& ord) const {
    if (images.size() != nvars()) throw AmbientMismatch("image count");
    // Per-variable power cache; exponents repeat across terms.
    std::vector<std::map<std::uint32_t, Poly>> powers(nvars());
    auto var_pow = [&](std::size_t i, std::uint32_t e) -> const Poly& {
        auto it = powers[i].find(e);
        if (it != powers[i].end()) return it->second;
        Poly v = target.pow(images[i], e, ord);
        return powers[i].emplace(e, std::move(v)).first->second;
    };
    Poly acc = target.zero();
    for (const auto& t : f.terms_) {
        Poly term = target.constant(static_cast<std::int64_t>(t.coeff));
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (t.mono.exp(i) == 0) continue;
            term = target.mul(term, var_pow(i, t.mono.exp(i)), ord);
            if (term.is_zero()) break;
        }
        acc = target.add(acc, term, ord);
    }
    return acc;
}

Poly PolyRing::embed(const Poly& f, const std::vector<std::size_t>& var_map, const PolyRing& target,
                     const MonomialOrder& ord) const {
    if (var_map.size() != nvars()) throw AmbientMismatch("variable map size");
    std::vector<Term> terms;
    terms.reserve(f.terms_.size());
    for (const auto& t : f.terms_) {
        Monomial m(target.nvars());
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (!t.mono.exp(i)) continue;
            if (var_map[i] >= target.nvars()) throw AmbientMismatch("variable map range");
            m.set_exp(var_map[i], t.mono.exp(i));
        }
        terms.push_back({std::move(m), t.coeff});
    }
    return target.from_terms(std::move(terms), ord);
}

std::string PolyRing::to_string(const Poly& f) const {
    if (f.is_zero()) return "0";
    Poly canon = resorted(f, MonomialOrder::grevlex());
    std::string out;
    for (const auto& t : canon.terms()) {
        if (!out.empty()) out += " + ";
        std::string factors;
        for (std::size_t i = 0; i < nvars(); ++i) {
            std::uint32_t e = t.mono.exp(i);
            if (!e) continue;
            if (!factors.empty()) factors += "*";
            factors += var_names_[i];
            if (e > 1) factors += "^" + std::to_string(e);
        }
        if (factors.empty()) {
            out += std::to_string(t.coeff);
        } else if (t.coeff == 1) {
            out += factors;
        } else {
            out += std::to_string(t.coeff) + "*" + factors;
        }
    }
    return out;
}

} // namespace kunz
