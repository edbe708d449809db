#include "scdec/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace scdec {

// Serialization reads packed words as bytes directly.
static_assert(std::endian::native == std::endian::little);

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": size mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

}  // namespace

BitVec& BitVec::operator^=(const BitVec& other) {
    require_same_size(n_, other.n_, "BitVec::operator^=");
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

bool BitVec::any() const {
    for (std::uint64_t w : words_) {
        if (w != 0) return true;
    }
    return false;
}

std::size_t BitVec::popcount() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

int BitVec::parity_of_and(const BitVec& a, const BitVec& b) {
    require_same_size(a.n_, b.n_, "BitVec::parity_of_and");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        acc ^= a.words_[w] & b.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::span<const std::uint8_t> BitVec::bytes() const {
    const std::size_t n_bytes = (n_ + 7) / 8;
    return {reinterpret_cast<const std::uint8_t*>(words_.data()), n_bytes};
}

std::string BitVec::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    const auto bs = bytes();
    out.reserve(bs.size() * 2);
    for (std::uint8_t b : bs) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xf]);
    }
    return out;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t n) {
    const std::size_t n_bytes = (n + 7) / 8;
    if (hex.size() != n_bytes * 2) {
        throw std::invalid_argument("BitVec::from_hex: expected " + std::to_string(n_bytes * 2) +
                                    " hex chars for " + std::to_string(n) + " bits, got " +
                                    std::to_string(hex.size()));
    }
    BitVec v(n);
    for (std::size_t i = 0; i < n_bytes; ++i) {
        const auto byte = static_cast<std::uint8_t>((hex_digit(hex[2 * i]) << 4) |
                                                    hex_digit(hex[2 * i + 1]));
        v.words_[i / 8] |= std::uint64_t{byte} << (8 * (i % 8));
    }
    // Reject stray bits beyond position n-1.
    if (n % 64 != 0 && !v.words_.empty()) {
        const std::uint64_t tail_mask = ~std::uint64_t{0} << (n % 64);
        if (v.words_.back() & tail_mask) {
            throw std::invalid_argument("BitVec::from_hex: nonzero bits beyond length " +
                                        std::to_string(n));
        }
    }
    return v;
}

PauliOp compose(const PauliOp& a, const PauliOp& b) {
    require_same_size(a.n_qubits(), b.n_qubits(), "compose");
    PauliOp r = a;
    r.x ^= b.x;
    r.z ^= b.z;
    return r;
}

int symplectic_product(const PauliOp& a, const PauliOp& b) {
    require_same_size(a.n_qubits(), b.n_qubits(), "symplectic_product");
    return BitVec::parity_of_and(a.x, b.z) ^ BitVec::parity_of_and(a.z, b.x);
}

std::size_t weight(const PauliOp& p) {
    std::size_t total = 0;
    const auto xw = p.x.words();
    const auto zw = p.z.words();
    for (std::size_t w = 0; w < xw.size(); ++w) {
        total += static_cast<std::size_t>(std::popcount(xw[w] | zw[w]));
    }
    return total;
}

}  // namespace scdec
