#include "scdec/hash.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace scdec {

namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001B3ull;
}

std::uint64_t fnv1a_64(std::span<const std::uint8_t> bytes, std::uint64_t state) {
    for (std::uint8_t b : bytes) {
        state ^= b;
        state *= kFnvPrime;
    }
    return state;
}

std::uint64_t fnv1a_64(std::uint64_t value, std::uint64_t state) {
    std::array<std::uint8_t, 8> le{};
    for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(value >> (8 * i));
    return fnv1a_64(le, state);
}

std::uint64_t hash_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("hash_file: cannot open " + path);
    std::uint64_t state = kFnvOffsetBasis;
    std::vector<std::uint8_t> buf(1 << 16);
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) {
        state = fnv1a_64(std::span<const std::uint8_t>(buf.data(), got), state);
    }
    std::fclose(f);
    return state;
}

std::string hash_to_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::uint64_t hash_from_hex(const std::string& hex) {
    if (hex.size() != 16) throw std::invalid_argument("hash hex must be 16 digits");
    std::uint64_t h = 0;
    for (char c : hex) {
        int digit;
        if (c >= '0' && c <= '9') {
            digit = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            digit = c - 'a' + 10;
        } else {
            throw std::invalid_argument("bad hash hex digit");
        }
        h = (h << 4) | static_cast<std::uint64_t>(digit);
    }
    return h;
}

}  // namespace scdec
