#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scdec {

// Fixed-length bit-vector over GF(2), packed 64 bits per word.
// Bit i lives in word i/64 at position i%64 (little-endian bit order).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& other);

    bool any() const;
    std::size_t popcount() const;

    // Parity of the AND of two equal-length vectors: 1 iff an odd overlap.
    static int parity_of_and(const BitVec& a, const BitVec& b);

    // Hex encoding of the packed bytes, byte 0 first (low bits first).
    std::string to_hex() const;
    static BitVec from_hex(std::string_view hex, std::size_t n);

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<const std::uint8_t> bytes() const;

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Pauli operator on n qubits in binary-symplectic form, global phase dropped.
// Qubit i carries I/X/Z/Y for (x,z) = (0,0)/(1,0)/(0,1)/(1,1).
struct PauliOp {
    BitVec x;
    BitVec z;

    PauliOp() = default;
    explicit PauliOp(std::size_t n_qubits) : x(n_qubits), z(n_qubits) {}

    std::size_t n_qubits() const { return x.size(); }
    bool is_identity() const { return !x.any() && !z.any(); }

    static PauliOp identity(std::size_t n) { return PauliOp(n); }

    friend bool operator==(const PauliOp&, const PauliOp&) = default;
};

// Group product up to phase: componentwise XOR of the bit-vectors.
PauliOp compose(const PauliOp& a, const PauliOp& b);

// (a.x . b.z + a.z . b.x) mod 2; 1 iff a and b anticommute.
int symplectic_product(const PauliOp& a, const PauliOp& b);

// Number of qubits with a non-identity component (Y counts once).
std::size_t weight(const PauliOp& p);

}  // namespace scdec
