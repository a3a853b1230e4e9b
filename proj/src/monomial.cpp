#include "kunz/monomial.hpp"

#include <limits>

namespace kunz {

std::int64_t Monomial::total_degree() const {
    std::int64_t d = 0;
    for (auto e : e_) d += e;
    return d;
}

std::int64_t Monomial::masked_degree(const std::vector<std::uint8_t>& mask) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < e_.size() && i < mask.size(); ++i)
        if (mask[i]) d += e_[i];
    return d;
}

bool Monomial::is_one() const {
    for (auto e : e_)
        if (e) return false;
    return true;
}

bool Monomial::supported_on(const std::vector<std::uint8_t>& allowed) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] && (i >= allowed.size() || !allowed[i])) return false;
    return true;
}

Monomial Monomial::mul(const Monomial& o) const {
    if (nvars() != o.nvars()) throw AmbientMismatch("monomial arity");
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(e_[i]) + o.e_[i];
        if (s > std::numeric_limits<std::uint32_t>::max() / 2)
            throw BudgetExceeded("monomial degree overflow");
        r.e_[i] = static_cast<std::uint32_t>(s);
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (nvars() != o.nvars()) throw AmbientMismatch("monomial arity");
    for (std::size_t i = 0; i < nvars(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::div(const Monomial& o) const {
    if (nvars() != o.nvars()) throw AmbientMismatch("monomial arity");
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
    if (nvars() != o.nvars()) throw AmbientMismatch("monomial arity");
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) r.e_[i] = e_[i] > o.e_[i] ? e_[i] : o.e_[i];
    return r;
}

bool Monomial::coprime(const Monomial& o) const {
    if (nvars() != o.nvars()) throw AmbientMismatch("monomial arity");
    for (std::size_t i = 0; i < nvars(); ++i)
        if (e_[i] && o.e_[i]) return false;
    return true;
}

Monomial Monomial::pow(std::uint64_t k) const {
    Monomial r(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(e_[i]) * k;
        if (s > std::numeric_limits<std::uint32_t>::max() / 2)
            throw BudgetExceeded("monomial degree overflow");
        r.e_[i] = static_cast<std::uint32_t>(s);
    }
    return r;
}

int Monomial::raw_compare(const Monomial& o) const {
    if (nvars() != o.nvars()) throw AmbientMismatch("monomial arity");
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (e_[i] != o.e_[i]) return e_[i] > o.e_[i] ? 1 : -1;
    }
    return 0;
}

namespace {

// Graded reverse lexicographic on the variables flagged in mask; empty mask
// means every variable.  Last differing flagged exponent decides, smaller
// exponent wins.
int grevlex_masked(const Monomial& a, const Monomial& b, const std::vector<std::uint8_t>* mask) {
    std::int64_t da = 0, db = 0;
    std::size_t n = a.nvars();
    for (std::size_t i = 0; i < n; ++i) {
        if (mask && (i >= mask->size() || !(*mask)[i])) continue;
        da += a.exp(i);
        db += b.exp(i);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t j = n; j-- > 0;) {
        if (mask && (j >= mask->size() || !(*mask)[j])) continue;
        if (a.exp(j) != b.exp(j)) return a.exp(j) < b.exp(j) ? 1 : -1;
    }
    return 0;
}

} // namespace

int masked_grevlex(const Monomial& a, const Monomial& b, const std::vector<std::uint8_t>& mask) {
    if (a.nvars() != b.nvars()) throw AmbientMismatch("monomial arity");
    return grevlex_masked(a, b, &mask);
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    if (a.nvars() != b.nvars()) throw AmbientMismatch("monomial arity");
    switch (kind_) {
    case Kind::Grevlex:
        return grevlex_masked(a, b, nullptr);
    case Kind::Lex:
        for (std::size_t i = 0; i < a.nvars(); ++i)
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? 1 : -1;
        return 0;
    case Kind::Block: {
        int c = grevlex_masked(a, b, &mask_);
        if (c) return c;
        std::vector<std::uint8_t> rest(a.nvars(), 1);
        for (std::size_t i = 0; i < mask_.size() && i < rest.size(); ++i)
            if (mask_[i]) rest[i] = 0;
        return grevlex_masked(a, b, &rest);
    }
    }
    return 0;
}

std::string MonomialOrder::cache_key() const {
    std::string k;
    switch (kind_) {
    case Kind::Grevlex: k = "grevlex"; break;
    case Kind::Lex: k = "lex"; break;
    case Kind::Block:
        k = "block:";
        for (auto b : mask_) k += b ? '1' : '0';
        break;
    }
    return k;
}

} // namespace kunz
