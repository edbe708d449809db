#include "scdec/rng.hpp"

#include <cmath>
#include <numbers>

namespace scdec {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;

inline void one_round(std::uint32_t c[4], const std::uint32_t k[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMultA) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMultB) * c[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t r0 = hi1 ^ c[1] ^ k[0];
    const std::uint32_t r1 = lo1;
    const std::uint32_t r2 = hi0 ^ c[3] ^ k[1];
    const std::uint32_t r3 = lo0;
    c[0] = r0;
    c[1] = r1;
    c[2] = r2;
    c[3] = r3;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

PhiloxRng::PhiloxRng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t trial_index) {
    const std::uint64_t k = splitmix64(seed ^ splitmix64(stream_id));
    key_[0] = static_cast<std::uint32_t>(k);
    key_[1] = static_cast<std::uint32_t>(k >> 32);
    counter_[0] = 0;
    counter_[1] = 0;
    counter_[2] = static_cast<std::uint32_t>(trial_index);
    counter_[3] = static_cast<std::uint32_t>(trial_index >> 32);
}

void PhiloxRng::refill() {
    std::uint32_t c[4] = {counter_[0], counter_[1], counter_[2], counter_[3]};
    std::uint32_t k[2] = {key_[0], key_[1]};
    for (int round = 0; round < 10; ++round) {
        one_round(c, k);
        k[0] += kWeylA;
        k[1] += kWeylB;
    }
    buf_[0] = c[0];
    buf_[1] = c[1];
    buf_[2] = c[2];
    buf_[3] = c[3];
    buf_pos_ = 0;
    // Draw counter occupies the low 64 bits; the trial index never carries.
    if (++counter_[0] == 0) ++counter_[1];
}

std::uint32_t PhiloxRng::next_u32() {
    if (buf_pos_ == 4) refill();
    return buf_[buf_pos_++];
}

std::uint64_t PhiloxRng::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double PhiloxRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PhiloxRng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace scdec
