#include "kunz/gf.hpp"

#include <string>

namespace kunz {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || p > (1u << 16))
        throw Error("field characteristic out of range: " + std::to_string(p));
    if (!is_prime(p))
        throw Error("not prime: " + std::to_string(p));
}

bool PrimeField::is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t base = a % p_, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw Error("division by zero in F_" + std::to_string(p_));
    return pow(a % p_, p_ - 2);
}

GFMatrix::GFMatrix(const PrimeField& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

std::size_t GFMatrix::row_reduce() {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t piv = rank;
        while (piv < rows_ && at(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != rank)
            for (std::size_t c = 0; c < cols_; ++c) std::swap(at(piv, c), at(rank, c));
        std::uint32_t s = field_.inv(at(rank, col));
        for (std::size_t c = col; c < cols_; ++c) at(rank, c) = field_.mul(at(rank, c), s);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == rank || at(r, col) == 0) continue;
            std::uint32_t fct = at(r, col);
            for (std::size_t c = col; c < cols_; ++c)
                at(r, c) = field_.sub(at(r, c), field_.mul(fct, at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

std::size_t GFMatrix::rank() const {
    GFMatrix copy = *this;
    return copy.row_reduce();
}

std::vector<std::vector<std::uint32_t>> GFMatrix::row_basis() const {
    GFMatrix copy = *this;
    std::size_t rk = copy.row_reduce();
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(rk);
    for (std::size_t r = 0; r < rk; ++r) {
        std::vector<std::uint32_t> row(cols_);
        for (std::size_t c = 0; c < cols_; ++c) row[c] = copy.at(r, c);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace kunz
