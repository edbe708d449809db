#pragma once

#include <cstdint>
#include <vector>

#include "scdec/gf2.hpp"
#include "scdec/pauli.hpp"
#include "scdec/surface_code.hpp"

namespace scdec {

// Pure-error ("destabilizer") table: a fixed linear map from syndromes to
// corrections. Column j of T_X is an X-type Pauli firing exactly Z-stabilizer
// bit j; likewise T_Z for X-stabilizer bits. Built once per layout as a GF(2)
// right-inverse with lowest-index pivots, so the table is reproducible and
// training labels stay stable across runs.
class PureErrorTable {
public:
    static PureErrorTable build(const CodeLayout& layout);

    int distance() const { return d_; }

    // T_X: d^2 x (d^2-1)/2 with h_x * T_X == I; T_Z likewise for h_z.
    const Gf2Matrix& t_x() const { return t_x_; }
    const Gf2Matrix& t_z() const { return t_z_; }

    // Correction C with syndrome(C) == s for every syndrome s:
    // C.x = T_X * s_Zblock, C.z = T_Z * s_Xblock.
    PauliOp decode(const SyndromeVector& s) const;

    // Logical class of the PED residual: logical_class(e o decode(syndrome(e))).
    LogicalClass class_label(const CodeLayout& layout, const PauliOp& e) const;

    // FNV-1a over (d, T_X rows, T_Z rows); embedded in dataset and model files
    // so a model is never evaluated against a mismatched table.
    std::uint64_t hash() const { return hash_; }

private:
    PureErrorTable() = default;

    int d_ = 0;
    Gf2Matrix t_x_;
    Gf2Matrix t_z_;
    std::vector<BitVec> tx_cols_;
    std::vector<BitVec> tz_cols_;
    std::uint64_t hash_ = 0;
};

}  // namespace scdec
