#pragma once

#include <cstdint>

#include "scdec/pauli.hpp"
#include "scdec/surface_code.hpp"

namespace scdec {

// Depolarizing channel: each data qubit independently gets X, Y, or Z with
// probability p/3 each (total error probability p).
struct NoiseParams {
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Deterministic in (seed, stream_id, trial_index); any trial is computable on
// any thread without shared generator state.
PauliOp sample_error(const CodeLayout& layout, const NoiseParams& params,
                     std::uint64_t trial_index);

}  // namespace scdec
