#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kunz/budget.hpp"
#include "kunz/gf.hpp"
#include "kunz/monomial.hpp"

namespace kunz {

struct Term {
    Monomial mono;
    std::uint32_t coeff; // nonzero residue
};

// Sparse polynomial.  Terms are kept strictly descending under the order the
// polynomial was last normalized with; changing order is an explicit resort,
// never implicit.  Equality is order-independent (term-set comparison).
class Poly {
public:
    Poly() = default;

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& lead() const { return terms_.front(); } // requires nonzero
    std::size_t size() const { return terms_.size(); }
    std::int64_t degree() const; // -1 for the zero polynomial

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    std::vector<Term> terms_;
    friend class PolyRing;
};

// Ambient polynomial ring F_p[x_0..x_{n-1}]: the field, the variable names,
// and all term arithmetic.  Operations that merge terms take the active
// monomial order; results come back sorted under it.
class PolyRing {
public:
    PolyRing(PrimeField field, std::vector<std::string> var_names);

    const PrimeField& field() const { return field_; }
    std::size_t nvars() const { return var_names_.size(); }
    const std::vector<std::string>& var_names() const { return var_names_; }

    bool operator==(const PolyRing& o) const {
        return field_ == o.field_ && var_names_ == o.var_names_;
    }

    Poly zero() const { return Poly(); }
    Poly one() const { return constant(1); }
    Poly constant(std::int64_t c) const;
    Poly variable(std::size_t i) const;
    Poly monomial(Monomial m, std::uint32_t coeff = 1) const;
    // Sorts descending under ord, merges duplicate monomials, drops zeros.
    Poly from_terms(std::vector<Term> terms, const MonomialOrder& ord) const;

    void resort(Poly& f, const MonomialOrder& ord) const;
    Poly resorted(const Poly& f, const MonomialOrder& ord) const;

    Poly add(const Poly& a, const Poly& b, const MonomialOrder& ord) const;
    Poly sub(const Poly& a, const Poly& b, const MonomialOrder& ord) const;
    Poly neg(const Poly& a) const;
    Poly scalar_mul(std::uint32_t c, const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b, const MonomialOrder& ord) const;
    Poly mul_term(const Poly& a, const Monomial& m, std::uint32_t c) const; // order-preserving
    Poly pow(const Poly& a, std::uint64_t k, const MonomialOrder& ord) const;
    // a^(p^e); in characteristic p this is the termwise map (coefficients are
    // fixed by Frobenius, monomials go to their p^e-th powers).
    Poly pow_p(const Poly& a, unsigned e, const MonomialOrder& ord) const;

    Poly partial_derivative(const Poly& a, std::size_t var, const MonomialOrder& ord) const;

    // Evaluates f (a polynomial of this ring) at the given images, which live
    // in `target`.  images.size() must equal nvars().
    Poly compose(const Poly& f, const std::vector<Poly>& images, const PolyRing& target,
                 const MonomialOrder& ord) const;

    // Renames variable i of f to var_map[i] in `target` (injective map).
    Poly embed(const Poly& f, const std::vector<std::size_t>& var_map, const PolyRing& target,
               const MonomialOrder& ord) const;

    // Canonical human-readable form: terms grevlex-descending, coefficients as
    // residues, '*' between factors, '^' for exponents.
    std::string to_string(const Poly& f) const;

    void check_compat(const Poly& f) const;

private:
    PrimeField field_;
    std::vector<std::string> var_names_;
};

} // namespace kunz
