#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scdec/dataset.hpp"
#include "scdec/decoder.hpp"
#include "scdec/ffnn.hpp"

namespace scdec {

struct CurvePoint {
    double p = 0.0;
    long long trials = 0;
    long long failures = 0;
    double ler = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct PairCrossing {
    int d_low = 0;
    int d_high = 0;
    double p = 0.0;
    bool found = false;       // false: curves never cross in range (excluded)
    bool degenerate = false;  // curves coincide; p is the grid midpoint
};

struct ThresholdReport {
    std::map<int, double> pseudo_thresholds;
    double threshold = 0.0;
    std::vector<PairCrossing> crossings;
    bool degenerate = false;
    std::string method;
};

// Two-sided z for the 99% Wilson score interval.
inline constexpr double kZ99 = 2.5758293035489004;

// Returns {low, high}; never degenerate at failures == 0.
std::pair<double, double> wilson_interval(long long failures, long long trials, double z = kZ99);

// Uniform grid [from, to] inclusive with the given step.
std::vector<double> make_grid(double from, double to, double step);

// Default Monte-Carlo depth, deep enough to resolve the crossings.
long long default_trials_per_point(int distance);

// Logical-error-rate sweep. Point i draws from stream stream_base + i, so
// every p-point has an independent reproducible stream; trials fan out over
// threads in fixed chunks and failure counts merge additively.
std::vector<CurvePoint> sweep(const HighLevelDecoder& decoder, const std::vector<double>& p_grid,
                              long long trials_per_point, std::uint64_t seed,
                              std::uint64_t stream_base = 1000, int threads = 0);

// p* with interpolated ler(p*) = p*, log-log between the bracketing grid
// points (exact for power-law curves). Throws if the curve never crosses y=x.
double pseudo_threshold(std::vector<CurvePoint> curve);

// Mean of adjacent-distance pairwise crossings, each found by log-log
// interpolation; non-crossing pairs are excluded and flagged.
ThresholdReport threshold(const std::map<int, std::vector<CurvePoint>>& curves);

struct SizePoint {
    int n = 0;
    int hidden_dim = 0;
    std::size_t param_count = 0;
    double holdout_accuracy = 0.0;
};

// Trains one model per n (hidden = n * distance) and reports held-out
// accuracy. Guards against runs whose summed parameter count exceeds the cap.
std::vector<SizePoint> size_sweep(HeadKind head, int distance, const std::vector<int>& n_list,
                                  const Dataset& data, const TrainConfig& config,
                                  std::size_t param_cap = 50'000'000);

}  // namespace scdec
