#pragma once

#include <cstddef>
#include <vector>

#include "scdec/pauli.hpp"

namespace scdec {

// Dense matrix over GF(2) with bit-packed rows.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), row_bits_(rows, BitVec(cols)) {}

    static Gf2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return row_bits_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { row_bits_[r].set(c, v); }

    const BitVec& row(std::size_t r) const { return row_bits_[r]; }
    BitVec& row(std::size_t r) { return row_bits_[r]; }
    BitVec col(std::size_t c) const;

    // y = A.v over GF(2).
    BitVec multiply(const BitVec& v) const;
    Gf2Matrix multiply(const Gf2Matrix& b) const;

    std::size_t rank() const;

    // T with A.T == identity(rows). Gaussian elimination with lowest-index
    // pivot columns, free variables zero, so the result is reproducible.
    // Throws if A does not have full row rank.
    Gf2Matrix right_inverse() const;

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVec> row_bits_;
};

}  // namespace scdec
