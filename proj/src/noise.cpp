#include "scdec/noise.hpp"

#include <stdexcept>
#include <string>

#include "scdec/rng.hpp"

namespace scdec {

PauliOp sample_error(const CodeLayout& layout, const NoiseParams& params,
                     std::uint64_t trial_index) {
    if (!(params.p >= 0.0 && params.p <= 1.0)) {
        throw std::invalid_argument("sample_error: p must be in [0, 1], got " +
                                    std::to_string(params.p));
    }
    PhiloxRng rng(params.seed, params.stream_id, trial_index);
    const int n = layout.n_data();
    PauliOp e(static_cast<std::size_t>(n));
    const double third = params.p / 3.0;
    for (int q = 0; q < n; ++q) {
        const double u = rng.next_double();
        if (u >= params.p) continue;
        if (u < third) {
            e.x.set(q, true);  // X
        } else if (u < 2.0 * third) {
            e.x.set(q, true);  // Y
            e.z.set(q, true);
        } else {
            e.z.set(q, true);  // Z
        }
    }
    return e;
}

}  // namespace scdec
