#include "scdec/surface_code.hpp"

#include <stdexcept>

namespace scdec {

const char* to_string(LogicalClass c) {
    switch (c) {
        case LogicalClass::kI: return "I";
        case LogicalClass::kX: return "X";
        case LogicalClass::kZ: return "Z";
        case LogicalClass::kY: return "Y";
    }
    return "?";
}

CodeLayout CodeLayout::build(int distance) {
    if (distance < 3 || distance > 15 || distance % 2 == 0) {
        throw std::invalid_argument("CodeLayout: distance must be odd and in [3, 15], got " +
                                    std::to_string(distance));
    }
    CodeLayout layout;
    const int d = distance;
    layout.d_ = d;

    // Cells of the extended grid in row-major order; each keeps the corners
    // that land on the data lattice.
    for (int i = -1; i < d; ++i) {
        for (int j = -1; j < d; ++j) {
            std::vector<int> support;
            for (int dr = 0; dr < 2; ++dr) {
                for (int dc = 0; dc < 2; ++dc) {
                    const int r = i + dr;
                    const int c = j + dc;
                    if (r >= 0 && r < d && c >= 0 && c < d) support.push_back(r * d + c);
                }
            }
            if (support.size() < 2) continue;  // extended-grid corner, no plaquette
            const StabKind kind = (((i + j) % 2 + 2) % 2 == 0) ? StabKind::kX : StabKind::kZ;
            const bool top_bottom_edge = (i == -1 || i == d - 1) && (j >= 0 && j <= d - 2);
            const bool left_right_edge = (j == -1 || j == d - 1) && (i >= 0 && i <= d - 2);
            if (top_bottom_edge && kind != StabKind::kZ) continue;
            if (left_right_edge && kind != StabKind::kX) continue;
            auto& list = (kind == StabKind::kX) ? layout.x_stabs_ : layout.z_stabs_;
            list.push_back(Stabilizer{kind, std::move(support)});
        }
    }

    const int n = d * d;
    const int half = (n - 1) / 2;
    layout.h_x_ = Gf2Matrix(half, n);
    layout.h_z_ = Gf2Matrix(half, n);
    for (int k = 0; k < half; ++k) {
        for (int q : layout.z_stabs_[k].support) layout.h_x_.set(k, q, true);
        for (int q : layout.x_stabs_[k].support) layout.h_z_.set(k, q, true);
    }

    layout.logical_x_ = PauliOp(n);
    layout.logical_z_ = PauliOp(n);
    for (int c = 0; c < d; ++c) layout.logical_x_.x.set(c, true);          // top row
    for (int r = 0; r < d; ++r) layout.logical_z_.z.set(r * d, true);      // left column

    return layout;
}

PauliOp CodeLayout::stabilizer_pauli(StabKind kind, std::size_t index) const {
    const auto& list = (kind == StabKind::kX) ? x_stabs_ : z_stabs_;
    const auto& stab = list.at(index);
    PauliOp p(static_cast<std::size_t>(n_data()));
    for (int q : stab.support) {
        if (kind == StabKind::kX) {
            p.x.set(q, true);
        } else {
            p.z.set(q, true);
        }
    }
    return p;
}

SyndromeVector CodeLayout::syndrome(const PauliOp& error) const {
    if (error.n_qubits() != static_cast<std::size_t>(n_data())) {
        throw std::invalid_argument("CodeLayout::syndrome: error acts on " +
                                    std::to_string(error.n_qubits()) + " qubits, expected " +
                                    std::to_string(n_data()));
    }
    const BitVec z_block = h_x_.multiply(error.x);
    const BitVec x_block = h_z_.multiply(error.z);
    SyndromeVector s(static_cast<std::size_t>(n_stab()));
    const std::size_t half = static_cast<std::size_t>(n_stab_per_kind());
    for (std::size_t i = 0; i < half; ++i) {
        if (z_block.get(i)) s.set(i, true);
        if (x_block.get(i)) s.set(half + i, true);
    }
    return s;
}

LogicalClass CodeLayout::logical_class(const PauliOp& residual) const {
    if (syndrome(residual).any()) {
        throw std::invalid_argument("CodeLayout::logical_class: residual has nonzero syndrome");
    }
    const int a = symplectic_product(residual, logical_z_);  // logical-X content
    const int b = symplectic_product(residual, logical_x_);  // logical-Z content
    return class_from_bits(a, b);
}

PauliOp CodeLayout::representative(LogicalClass c) const {
    PauliOp p(static_cast<std::size_t>(n_data()));
    if (class_x_bit(c)) p = compose(p, logical_x_);
    if (class_z_bit(c)) p = compose(p, logical_z_);
    return p;
}

}  // namespace scdec
