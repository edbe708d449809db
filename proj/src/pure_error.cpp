#include "scdec/pure_error.hpp"

#include <stdexcept>
#include <string>

#include "scdec/hash.hpp"

namespace scdec {

PureErrorTable PureErrorTable::build(const CodeLayout& layout) {
    PureErrorTable table;
    table.d_ = layout.distance();
    table.t_x_ = layout.h_x().right_inverse();
    table.t_z_ = layout.h_z().right_inverse();

    const std::size_t half = static_cast<std::size_t>(layout.n_stab_per_kind());
    table.tx_cols_.reserve(half);
    table.tz_cols_.reserve(half);
    for (std::size_t j = 0; j < half; ++j) {
        table.tx_cols_.push_back(table.t_x_.col(j));
        table.tz_cols_.push_back(table.t_z_.col(j));
    }

    std::uint64_t h = fnv1a_64(static_cast<std::uint64_t>(table.d_), kFnvOffsetBasis);
    for (const Gf2Matrix* m : {&table.t_x_, &table.t_z_}) {
        for (std::size_t r = 0; r < m->rows(); ++r) h = fnv1a_64(m->row(r).bytes(), h);
    }
    table.hash_ = h;
    return table;
}

PauliOp PureErrorTable::decode(const SyndromeVector& s) const {
    const std::size_t half = tx_cols_.size();
    if (s.size() != 2 * half) {
        throw std::invalid_argument("PureErrorTable::decode: syndrome length " +
                                    std::to_string(s.size()) + ", expected " +
                                    std::to_string(2 * half));
    }
    PauliOp corr(static_cast<std::size_t>(d_) * d_);
    for (std::size_t j = 0; j < half; ++j) {
        if (s.get(j)) corr.x ^= tx_cols_[j];
        if (s.get(half + j)) corr.z ^= tz_cols_[j];
    }
    return corr;
}

LogicalClass PureErrorTable::class_label(const CodeLayout& layout, const PauliOp& e) const {
    return layout.logical_class(compose(e, decode(layout.syndrome(e))));
}

}  // namespace scdec
