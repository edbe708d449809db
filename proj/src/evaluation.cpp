#include "scdec/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "scdec/noise.hpp"

namespace scdec {

namespace {

constexpr long long kChunk = 1024;

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Failures in trials [begin, end) of one curve point; batched inference.
long long run_span(const HighLevelDecoder& decoder, const NoiseParams& params, long long begin,
                   long long end) {
    const CodeLayout& layout = *decoder.layout;
    const int in_dim = decoder.simple->in_dim;
    const int n = layout.n_data();
    const auto count = static_cast<Eigen::Index>(end - begin);

    std::vector<PauliOp> errors;
    errors.reserve(count);
    Eigen::MatrixXd X(in_dim, count);
    for (Eigen::Index b = 0; b < count; ++b) {
        errors.push_back(sample_error(layout, params, static_cast<std::uint64_t>(begin + b)));
        const SyndromeVector s = layout.syndrome(errors.back());
        for (int i = 0; i < in_dim; ++i) X(i, b) = s.get(i) ? 1.0 : 0.0;
    }
    const Eigen::MatrixXd simple_logits = decoder.simple->forward_batch(X);
    const Eigen::MatrixXd class_logits = decoder.classifier->forward_batch(X);

    long long failures = 0;
    for (Eigen::Index b = 0; b < count; ++b) {
        PauliOp corr(static_cast<std::size_t>(n));
        const double* col = simple_logits.col(b).data();
        for (int q = 0; q < n; ++q) {
            const double* v = col + 4 * q;
            int best = 0;
            for (int k = 1; k < 4; ++k) {
                if (v[k] > v[best]) best = k;
            }
            corr.x.set(q, best & 1);
            corr.z.set(q, best & 2);
        }
        const double* cv = class_logits.col(b).data();
        int cls = 0;
        for (int k = 1; k < 4; ++k) {
            if (cv[k] > cv[cls]) cls = k;
        }
        const DecodeOutcome outcome =
            apply_and_judge(layout, errors[b], corr, static_cast<LogicalClass>(cls));
        if (!outcome.success) ++failures;
    }
    return failures;
}

long long run_point(const HighLevelDecoder& decoder, const NoiseParams& params, long long trials,
                    int threads) {
    const long long n_chunks = (trials + kChunk - 1) / kChunk;
    if (threads <= 1 || n_chunks <= 1) {
        long long failures = 0;
        for (long long c = 0; c < n_chunks; ++c) {
            failures += run_span(decoder, params, c * kChunk, std::min(trials, (c + 1) * kChunk));
        }
        return failures;
    }
    std::atomic<long long> next_chunk{0};
    std::atomic<long long> total_failures{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            long long local = 0;
            for (long long c = next_chunk.fetch_add(1); c < n_chunks; c = next_chunk.fetch_add(1)) {
                local += run_span(decoder, params, c * kChunk, std::min(trials, (c + 1) * kChunk));
            }
            total_failures.fetch_add(local);
        });
    }
    for (auto& th : pool) th.join();
    return total_failures.load();
}

// Log-log segment through two curve points, y(x) = a + b*x in log space.
struct LogSegment {
    double a = 0.0;
    double b = 0.0;
};

LogSegment fit_segment(const CurvePoint& lo, const CurvePoint& hi) {
    const double x1 = std::log(lo.p), x2 = std::log(hi.p);
    const double y1 = std::log(lo.ler), y2 = std::log(hi.ler);
    LogSegment s;
    s.b = (y2 - y1) / (x2 - x1);
    s.a = y1 - s.b * x1;
    return s;
}

}  // namespace

std::pair<double, double> wilson_interval(long long failures, long long trials, double z) {
    if (trials <= 0 || failures < 0 || failures > trials) {
        throw std::invalid_argument("wilson_interval: need 0 <= failures <= trials, trials > 0");
    }
    const double nf = static_cast<double>(trials);
    const double phat = static_cast<double>(failures) / nf;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nf;
    const double center = (phat + z2 / (2.0 * nf)) / denom;
    const double half =
        (z / denom) * std::sqrt(phat * (1.0 - phat) / nf + z2 / (4.0 * nf * nf));
    // Clamp so rounding can never push the interval off [0, 1] or off phat
    // itself (at phat = 1 the exact upper endpoint is 1, but the division
    // can land one ulp below it).
    return {std::clamp(center - half, 0.0, phat), std::clamp(center + half, phat, 1.0)};
}

std::vector<double> make_grid(double from, double to, double step) {
    if (!(step > 0.0) || to < from) throw std::invalid_argument("make_grid: bad range");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double p = from + i * step;
        if (p > to + step * 1e-9) break;
        grid.push_back(p);
    }
    return grid;
}

long long default_trials_per_point(int distance) {
    return distance <= 5 ? 100000 : 10000;
}

std::vector<CurvePoint> sweep(const HighLevelDecoder& decoder, const std::vector<double>& p_grid,
                              long long trials_per_point, std::uint64_t seed,
                              std::uint64_t stream_base, int threads) {
    if (trials_per_point < 1) throw std::invalid_argument("sweep: trials_per_point must be >= 1");
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sweep: grid outside [0, 1]");
    }
    const int n_threads = resolve_threads(threads);
    std::vector<CurvePoint> curve;
    curve.reserve(p_grid.size());
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        const NoiseParams params{p_grid[i], seed, stream_base + i};
        CurvePoint point;
        point.p = p_grid[i];
        point.trials = trials_per_point;
        point.failures = run_point(decoder, params, trials_per_point, n_threads);
        point.ler = static_cast<double>(point.failures) / static_cast<double>(point.trials);
        std::tie(point.ci_low, point.ci_high) = wilson_interval(point.failures, point.trials);
        curve.push_back(point);
    }
    return curve;
}

double pseudo_threshold(std::vector<CurvePoint> curve) {
    if (curve.size() < 2) throw std::invalid_argument("pseudo_threshold: need >= 2 points");
    std::sort(curve.begin(), curve.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.p < b.p; });
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const CurvePoint& lo = curve[i];
        const CurvePoint& hi = curve[i + 1];
        const bool below = lo.ler <= lo.p;
        const bool above = hi.ler > hi.p;
        if (!below || !above) continue;
        if (lo.ler <= 0.0) {
            // Zero-failure point: no log form; fall back to a linear root of ler - p.
            const double g1 = lo.ler - lo.p, g2 = hi.ler - hi.p;
            return lo.p + (hi.p - lo.p) * (-g1) / (g2 - g1);
        }
        const LogSegment s = fit_segment(lo, hi);
        if (std::abs(s.b - 1.0) < 1e-12) continue;  // parallel to y=x in log space
        const double x = s.a / (1.0 - s.b);
        return std::exp(x);
    }
    throw std::runtime_error(
        "pseudo_threshold: curve never crosses ler(p) = p within the swept range");
}

ThresholdReport threshold(const std::map<int, std::vector<CurvePoint>>& curves) {
    if (curves.size() < 2) throw std::invalid_argument("threshold: need >= 2 distances");
    ThresholdReport report;
    report.method = "log-log interpolation of adjacent-distance crossings";

    std::vector<int> distances;
    for (const auto& [d, curve] : curves) {
        if (curve.size() < 2) throw std::invalid_argument("threshold: curve too short");
        distances.push_back(d);
    }

    double sum = 0.0;
    int found = 0;
    for (std::size_t k = 0; k + 1 < distances.size(); ++k) {
        auto lo_curve = curves.at(distances[k]);
        auto hi_curve = curves.at(distances[k + 1]);
        std::sort(lo_curve.begin(), lo_curve.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.p < b.p; });
        std::sort(hi_curve.begin(), hi_curve.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.p < b.p; });
        if (lo_curve.size() != hi_curve.size()) {
            throw std::invalid_argument("threshold: curves sweep different grids");
        }
        PairCrossing crossing;
        crossing.d_low = distances[k];
        crossing.d_high = distances[k + 1];

        bool identical = true;
        for (std::size_t i = 0; i < lo_curve.size(); ++i) {
            if (lo_curve[i].p != hi_curve[i].p) {
                throw std::invalid_argument("threshold: curves sweep different grids");
            }
            identical = identical && lo_curve[i].ler == hi_curve[i].ler;
        }
        if (identical) {
            crossing.found = true;
            crossing.degenerate = true;
            crossing.p = (lo_curve.front().p + lo_curve.back().p) / 2.0;
            report.degenerate = true;
        } else {
            // Below threshold the larger distance wins (delta < 0); scan for
            // the first sign change of delta = ler_high - ler_low.
            for (std::size_t i = 0; i + 1 < lo_curve.size(); ++i) {
                const double d1 = hi_curve[i].ler - lo_curve[i].ler;
                const double d2 = hi_curve[i + 1].ler - lo_curve[i + 1].ler;
                if (d1 == 0.0) {
                    crossing.found = true;
                    crossing.p = lo_curve[i].p;
                    break;
                }
                if ((d1 < 0.0) == (d2 < 0.0) && d2 != 0.0) continue;
                const bool logs_ok = lo_curve[i].ler > 0 && lo_curve[i + 1].ler > 0 &&
                                     hi_curve[i].ler > 0 && hi_curve[i + 1].ler > 0;
                if (logs_ok) {
                    const LogSegment a = fit_segment(lo_curve[i], lo_curve[i + 1]);
                    const LogSegment b = fit_segment(hi_curve[i], hi_curve[i + 1]);
                    if (a.b != b.b) {
                        crossing.found = true;
                        crossing.p = std::exp((b.a - a.a) / (a.b - b.b));
                        break;
                    }
                }
                crossing.found = true;
                crossing.p = lo_curve[i].p +
                             (lo_curve[i + 1].p - lo_curve[i].p) * (-d1) / (d2 - d1);
                break;
            }
        }
        if (crossing.found) {
            sum += crossing.p;
            ++found;
        }
        report.crossings.push_back(crossing);
    }
    if (found == 0) throw std::runtime_error("threshold: no adjacent-distance pair crosses");
    report.threshold = sum / found;
    return report;
}

std::vector<SizePoint> size_sweep(HeadKind head, int distance, const std::vector<int>& n_list,
                                  const Dataset& data, const TrainConfig& config,
                                  std::size_t param_cap) {
    const int n_data = distance * distance;
    const int in_dim = n_data - 1;
    const int out_dim = head == HeadKind::kSingleSoftmax4 ? 4 : 4 * n_data;
    std::size_t projected = 0;
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("size_sweep: n must be >= 1");
        const std::size_t hidden = static_cast<std::size_t>(n) * distance;
        projected += hidden * (in_dim + out_dim + 1) + out_dim;
    }
    if (projected > param_cap) {
        throw std::runtime_error("size_sweep: projected parameter count " +
                                 std::to_string(projected) + " exceeds cap " +
                                 std::to_string(param_cap));
    }
    std::vector<SizePoint> points;
    points.reserve(n_list.size());
    for (int n : n_list) {
        const int hidden = n * distance;
        FFNNModel model = FFNNModel::init(in_dim, hidden, out_dim, head, config.seed);
        model.ped_table_hash = data.ped_table_hash();
        const TrainResult result = train(model, data, config);
        SizePoint point;
        point.n = n;
        point.hidden_dim = hidden;
        point.param_count = static_cast<std::size_t>(hidden) * (in_dim + out_dim + 1) + out_dim;
        point.holdout_accuracy = result.holdout_accuracy;
        points.push_back(point);
    }
    return points;
}

}  // namespace scdec
