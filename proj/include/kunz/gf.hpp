#pragma once

#include <cstdint>
#include <vector>

#include "kunz/errors.hpp"

namespace kunz {

// Arithmetic in F_p for a prime p <= 2^16.  Elements are residues in
// [0, p); inverses go through Fermat.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t reduce(std::int64_t a) const {
        std::int64_t r = a % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const; // a != 0

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(std::uint32_t n);

private:
    std::uint32_t p_;
};

// Dense F_p matrices, just enough linear algebra for the derivation-space and
// subspace-span computations.  Rows are vectors of residues.
class GFMatrix {
public:
    GFMatrix(const PrimeField& f, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Gaussian elimination in place; returns the rank.  Pivot choice is the
    // first nonzero entry scanning rows top-down, so results are deterministic.
    std::size_t row_reduce();

    // Rank without destroying the matrix.
    std::size_t rank() const;

    // Basis of the row space after reduction (nonzero rows), each normalized
    // to a leading 1.
    std::vector<std::vector<std::uint32_t>> row_basis() const;

    const PrimeField& field() const { return field_; }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> data_;
};

} // namespace kunz
