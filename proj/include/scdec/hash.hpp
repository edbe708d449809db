#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace scdec {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ull;

// FNV-1a, 64-bit. Incremental: feed byte spans, keep folding the state.
std::uint64_t fnv1a_64(std::span<const std::uint8_t> bytes,
                       std::uint64_t state = kFnvOffsetBasis);
std::uint64_t fnv1a_64(std::uint64_t value, std::uint64_t state);

std::uint64_t hash_file(const std::string& path);

std::string hash_to_hex(std::uint64_t h);
std::uint64_t hash_from_hex(const std::string& hex);

}  // namespace scdec
