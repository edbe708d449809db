#include "scdec/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace scdec {

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitVec Gf2Matrix::col(std::size_t c) const {
    BitVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (row_bits_[r].get(c)) v.set(r, true);
    }
    return v;
}

BitVec Gf2Matrix::multiply(const BitVec& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("Gf2Matrix::multiply: vector length " +
                                    std::to_string(v.size()) + " != cols " +
                                    std::to_string(cols_));
    }
    BitVec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (BitVec::parity_of_and(row_bits_[r], v)) y.set(r, true);
    }
    return y;
}

Gf2Matrix Gf2Matrix::multiply(const Gf2Matrix& b) const {
    if (cols_ != b.rows_) {
        throw std::invalid_argument("Gf2Matrix::multiply: inner dimensions disagree");
    }
    Gf2Matrix c(rows_, b.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        // Row r of the product is the XOR of b's rows selected by row r of a.
        for (std::size_t k = 0; k < cols_; ++k) {
            if (row_bits_[r].get(k)) c.row_bits_[r] ^= b.row_bits_[k];
        }
    }
    return c;
}

namespace {

// Row-reduce `m` in place with lowest-index pivot ordering; applies the same
// row operations to `aug` when non-null. Returns the pivot columns.
std::vector<std::size_t> reduce(std::vector<BitVec>& m, std::vector<BitVec>* aug,
                                std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < cols && next_row < m.size(); ++c) {
        std::size_t pivot_row = next_row;
        while (pivot_row < m.size() && !m[pivot_row].get(c)) ++pivot_row;
        if (pivot_row == m.size()) continue;
        std::swap(m[pivot_row], m[next_row]);
        if (aug) std::swap((*aug)[pivot_row], (*aug)[next_row]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != next_row && m[r].get(c)) {
                m[r] ^= m[next_row];
                if (aug) (*aug)[r] ^= (*aug)[next_row];
            }
        }
        pivots.push_back(c);
        ++next_row;
    }
    return pivots;
}

}  // namespace

std::size_t Gf2Matrix::rank() const {
    std::vector<BitVec> work = row_bits_;
    return reduce(work, nullptr, cols_).size();
}

Gf2Matrix Gf2Matrix::right_inverse() const {
    std::vector<BitVec> work = row_bits_;
    std::vector<BitVec> transform;
    transform.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        BitVec e(rows_);
        e.set(r, true);
        transform.push_back(std::move(e));
    }
    const auto pivots = reduce(work, &transform, cols_);
    if (pivots.size() != rows_) {
        throw std::runtime_error("Gf2Matrix::right_inverse: rank " +
                                 std::to_string(pivots.size()) + " < rows " +
                                 std::to_string(rows_));
    }
    // After reduction R = U.A with R's pivot columns forming an identity, so
    // x supported on pivot columns with x[pivots[r]] = U[r][j] solves A.x = e_j.
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < rows_; ++j) {
            if (transform[r].get(j)) t.set(pivots[r], j, true);
        }
    }
    return t;
}

}  // namespace scdec
