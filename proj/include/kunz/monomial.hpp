#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kunz/errors.hpp"

namespace kunz {

// Exponent vector.  Exponents fit in 32 bits; total degrees are summed in 64.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

    static Monomial one(std::size_t nvars) { return Monomial(nvars); }

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t exp(std::size_t i) const { return e_[i]; }
    void set_exp(std::size_t i, std::uint32_t v) { e_[i] = v; }
    const std::vector<std::uint32_t>& exps() const { return e_; }

    std::int64_t total_degree() const;
    // Degree restricted to the variables flagged in mask (mask may be empty =
    // no variables).
    std::int64_t masked_degree(const std::vector<std::uint8_t>& mask) const;

    bool is_one() const;
    bool depends_on(std::size_t i) const { return e_[i] != 0; }
    // True when every variable outside `allowed` has exponent zero.
    bool supported_on(const std::vector<std::uint8_t>& allowed) const;

    Monomial mul(const Monomial& o) const;
    bool divides(const Monomial& o) const; // this | o
    Monomial div(const Monomial& o) const; // this / o, assumes o | this
    Monomial lcm(const Monomial& o) const;
    bool coprime(const Monomial& o) const;
    Monomial pow(std::uint64_t k) const; // overflow-guarded

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }
    // Structural (order-independent) comparison, used for canonical sets.
    int raw_compare(const Monomial& o) const;

private:
    std::vector<std::uint32_t> e_;
};

// Graded reverse lexicographic restricted to the variables flagged in mask.
int masked_grevlex(const Monomial& a, const Monomial& b, const std::vector<std::uint8_t>& mask);

// Compares monomials of equal arity.  Block orders make the flagged variables
// dominant (graded reverse lexicographic inside each block), which is what the
// elimination routines rely on.
class MonomialOrder {
public:
    enum class Kind { Grevlex, Lex, Block };

    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    static MonomialOrder block(std::vector<std::uint8_t> dominant_mask) {
        return MonomialOrder(Kind::Block, std::move(dominant_mask));
    }

    Kind kind() const { return kind_; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }

    // > 0 when a > b, 0 when equal, < 0 when a < b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    // Stable identifier for basis caches.
    std::string cache_key() const;

private:
    MonomialOrder(Kind k, std::vector<std::uint8_t> mask) : kind_(k), mask_(std::move(mask)) {}
    Kind kind_;
    std::vector<std::uint8_t> mask_;
};

} // namespace kunz
