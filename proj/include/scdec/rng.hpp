#pragma once

#include <cstdint>

namespace scdec {

// SplitMix64 step; used to whiten seeds into Philox keys and stream offsets.
std::uint64_t splitmix64(std::uint64_t x);

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// The key is derived from (seed, stream_id), the 128-bit counter starts at
// [draw = 0 | trial_index], so every (seed, stream_id, trial_index) names an
// independent reproducible stream regardless of which thread runs it.
class PhiloxRng {
public:
    PhiloxRng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t trial_index);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double next_double();

    // Standard normal via Box-Muller, one spare cached.
    double next_normal();

private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t counter_[4];
    std::uint32_t buf_[4];
    int buf_pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace scdec
