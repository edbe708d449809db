#pragma once

#include <cstdint>
#include <vector>

#include "scdec/gf2.hpp"
#include "scdec/pauli.hpp"

namespace scdec {

// Logical coset of a syndrome-free residual. The numeric value is the class
// index used everywhere (labels, network outputs, tie-breaking).
enum class LogicalClass : std::uint8_t { kI = 0, kX = 1, kZ = 2, kY = 3 };

// Class bits: a = logical-X content, b = logical-Z content; index = a + 2b.
inline LogicalClass class_from_bits(int a, int b) {
    return static_cast<LogicalClass>((a & 1) | ((b & 1) << 1));
}
inline int class_x_bit(LogicalClass c) { return static_cast<int>(c) & 1; }
inline int class_z_bit(LogicalClass c) { return (static_cast<int>(c) >> 1) & 1; }
inline LogicalClass class_xor(LogicalClass a, LogicalClass b) {
    return static_cast<LogicalClass>(static_cast<int>(a) ^ static_cast<int>(b));
}
const char* to_string(LogicalClass c);

enum class StabKind : std::uint8_t { kX = 0, kZ = 1 };

struct Stabilizer {
    StabKind kind;
    std::vector<int> support;  // data-qubit indices, ascending
};

// Syndrome bit-vector of length d^2-1, ordered [Z-stabilizer block | X-stabilizer
// block], each block in row-major plaquette order.
using SyndromeVector = BitVec;

// Rotated surface code on a d x d data-qubit grid with d^2-1 stabilizers.
//
// Data qubit at lattice position (r, c) has index r*d + c. Plaquettes are the
// cells of the extended (d+1) x (d+1) grid; a cell with upper-left corner
// (i, j), i,j in [-1, d-1], acts on the data qubits among its four corners.
// Interior cells alternate X/Z in a checkerboard with X on even i+j; weight-2
// Z plaquettes sit on the top and bottom boundary rows, weight-2 X plaquettes
// on the left and right boundary columns. logical_X is all-X on the top row,
// logical_Z is all-Z on the left column.
class CodeLayout {
public:
    // d odd, 3 <= d <= 15; throws std::invalid_argument otherwise.
    static CodeLayout build(int distance);

    int distance() const { return d_; }
    int n_data() const { return d_ * d_; }
    int n_stab() const { return d_ * d_ - 1; }
    int n_stab_per_kind() const { return (d_ * d_ - 1) / 2; }

    const std::vector<Stabilizer>& x_stabilizers() const { return x_stabs_; }
    const std::vector<Stabilizer>& z_stabilizers() const { return z_stabs_; }

    // H_X rows are Z-stabilizer supports (detect X components);
    // H_Z rows are X-stabilizer supports (detect Z components).
    const Gf2Matrix& h_x() const { return h_x_; }
    const Gf2Matrix& h_z() const { return h_z_; }

    const PauliOp& logical_x() const { return logical_x_; }
    const PauliOp& logical_z() const { return logical_z_; }

    PauliOp stabilizer_pauli(StabKind kind, std::size_t index) const;

    // Bit i = symplectic product of stabilizer i with the error; the Z block
    // depends only on error.x, the X block only on error.z.
    SyndromeVector syndrome(const PauliOp& error) const;

    // Coset of a residual whose syndrome is all-zero; throws otherwise.
    LogicalClass logical_class(const PauliOp& residual) const;

    // I -> identity, X -> logical_x, Z -> logical_z, Y -> their composition.
    PauliOp representative(LogicalClass c) const;

private:
    CodeLayout() = default;

    int d_ = 0;
    std::vector<Stabilizer> x_stabs_;
    std::vector<Stabilizer> z_stabs_;
    Gf2Matrix h_x_;
    Gf2Matrix h_z_;
    PauliOp logical_x_;
    PauliOp logical_z_;
};

}  // namespace scdec
