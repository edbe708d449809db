// Acceptance suite: exercises the full pipeline and prints one PASS/FAIL
// line per criterion. Exit code is the number of failed criteria.
//
// The expensive artifacts (datasets, trained models, error-rate curves) are
// built once and shared across criteria, in dependency order.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "scdec/cim.hpp"
#include "scdec/dataset.hpp"
#include "scdec/decoder.hpp"
#include "scdec/evaluation.hpp"
#include "scdec/ffnn.hpp"
#include "scdec/gf2.hpp"
#include "scdec/noise.hpp"
#include "scdec/pure_error.hpp"
#include "scdec/rng.hpp"
#include "scdec/surface_code.hpp"

#ifndef SCDEC_CLI_PATH
#error "SCDEC_CLI_PATH must point at the command-line binary"
#endif

using namespace scdec;
namespace fs = std::filesystem;

namespace {

// Training recipes that reach the accuracy gates on this hardware. Smaller
// batches than the library default buy the last fraction of a percent of
// exact-match accuracy; d=7 uses a larger batch to keep the runtime sane.
constexpr std::size_t kCountD3 = 65536;
constexpr std::size_t kCountD5 = 400000;
constexpr std::size_t kCountD7 = 3000000;
constexpr int kBatchD3 = 16;
constexpr int kBatchD5 = 16;
constexpr int kBatchD7 = 32;
constexpr int kEpochsD7 = 30;

struct Harness {
    int failures = 0;

    void run(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            pass = body(detail);
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.1fs", secs);
        std::printf("%s criterion %d: %s [%s]%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                    timing, detail.empty() ? "" : " ", detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
    return buf;
}

std::string num(double v, const char* fmt = "%.4f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

// Full high-level recovery from the exact table: pure-error correction
// composed with the representative of the residual's true logical class.
// Succeeds iff the final residual is a stabilizer.
bool exact_recovery_succeeds(const CodeLayout& layout, const PureErrorTable& table,
                             const PauliOp& error) {
    const SyndromeVector s = layout.syndrome(error);
    const PauliOp ped = table.decode(s);
    const LogicalClass cls = layout.logical_class(compose(error, ped));
    const PauliOp residual = compose(error, compose(ped, layout.representative(cls)));
    return !layout.syndrome(residual).any() && layout.logical_class(residual) == LogicalClass::kI;
}

TrainConfig recipe(int batch, std::uint64_t seed = 7, int epochs = 30) {
    TrainConfig cfg;
    cfg.batch_size = batch;
    cfg.seed = seed;
    cfg.epochs = epochs;
    return cfg;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing file: " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SCDEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

}  // namespace

int main() {
    Harness h;

    // Shared code objects.
    const CodeLayout l3 = CodeLayout::build(3);
    const CodeLayout l5 = CodeLayout::build(5);
    const CodeLayout l7 = CodeLayout::build(7);
    const PureErrorTable t3 = PureErrorTable::build(l3);
    const PureErrorTable t5 = PureErrorTable::build(l5);
    const PureErrorTable t7 = PureErrorTable::build(l7);

    h.run(1, "pure-error table solves H*T = I and every d=3 syndrome", [&](std::string& detail) {
        for (int d : {3, 5, 7, 9}) {
            const CodeLayout layout = CodeLayout::build(d);
            const PureErrorTable table = PureErrorTable::build(layout);
            const Gf2Matrix eye = Gf2Matrix::identity(layout.n_stab_per_kind());
            if (layout.h_x().multiply(table.t_x()) != eye) {
                detail = "h_x * t_x != I at d=" + std::to_string(d);
                return false;
            }
            if (layout.h_z().multiply(table.t_z()) != eye) {
                detail = "h_z * t_z != I at d=" + std::to_string(d);
                return false;
            }
        }
        int reproduced = 0;
        for (int bits = 0; bits < 256; ++bits) {
            SyndromeVector s(l3.n_stab());
            for (int i = 0; i < 8; ++i) s.set(i, (bits >> i) & 1);
            if (l3.syndrome(t3.decode(s)) == s) ++reproduced;
        }
        detail = "d=3,5,7,9 identities; " + std::to_string(reproduced) + "/256 syndromes";
        return reproduced == 256;
    });

    h.run(2, "exact-class recovery always clears the error", [&](std::string& detail) {
        // d=3: every weight <= 2 error.
        long long checked = 0;
        long long good = 0;
        const auto put = [](PauliOp& e, int qubit, int pauli) {
            e.x.set(qubit, pauli & 1);
            e.z.set(qubit, (pauli >> 1) & 1);
        };
        for (int q = 0; q < l3.n_data(); ++q) {
            for (int pq = 1; pq < 4; ++pq) {
                PauliOp e = PauliOp::identity(l3.n_data());
                put(e, q, pq);
                ++checked;
                good += exact_recovery_succeeds(l3, t3, e);
                for (int r = q + 1; r < l3.n_data(); ++r) {
                    for (int pr = 1; pr < 4; ++pr) {
                        PauliOp e2 = e;
                        put(e2, r, pr);
                        ++checked;
                        good += exact_recovery_succeeds(l3, t3, e2);
                    }
                }
            }
        }
        const long long exhaustive_checked = checked;
        // d=5: one million depolarizing samples at p = 0.15.
        const NoiseParams noise{0.15, 202, 0};
        for (std::uint64_t trial = 0; trial < 1'000'000; ++trial) {
            ++checked;
            good += exact_recovery_succeeds(l5, t5, sample_error(l5, noise, trial));
        }
        detail = std::to_string(good) + "/" + std::to_string(checked) + " recovered (" +
                 std::to_string(exhaustive_checked) + " exhaustive d=3, 1e6 sampled d=5)";
        return good == checked;
    });

    // Datasets and the four d<=5 models feed criteria 3, 4, 5, 8, 10.
    const Dataset data3 = generate_dataset(l3, t3, 0.15, kCountD3, 11);
    const Dataset data5 = generate_dataset(l5, t5, 0.15, kCountD5, 1);

    FFNNModel simple3 = FFNNModel::init(8, 5 * 3, 36, HeadKind::kGroupedSoftmax4, 7);
    FFNNModel simple5 = FFNNModel::init(24, 15 * 5, 100, HeadKind::kGroupedSoftmax4, 7);
    simple3.ped_table_hash = t3.hash();
    simple5.ped_table_hash = t5.hash();
    TrainResult simple3_result;
    TrainResult simple5_result;

    h.run(3, "simple decoder reaches 99% held-out exact match at d=3 and d=5",
          [&](std::string& detail) {
              simple3_result = train(simple3, data3, recipe(kBatchD3));
              simple5_result = train(simple5, data5, recipe(kBatchD5));
              detail = "d=3 holdout " + pct(simple3_result.holdout_accuracy) + ", d=5 holdout " +
                       pct(simple5_result.holdout_accuracy);
              return simple3_result.holdout_accuracy >= 0.99 &&
                     simple5_result.holdout_accuracy >= 0.99;
          });

    FFNNModel classifier3 = FFNNModel::init(8, 20 * 3, 4, HeadKind::kSingleSoftmax4, 7);
    FFNNModel classifier5 = FFNNModel::init(24, 40 * 5, 4, HeadKind::kSingleSoftmax4, 7);
    classifier3.ped_table_hash = t3.hash();
    classifier5.ped_table_hash = t5.hash();

    const std::vector<double> grid = make_grid(0.03, 0.30, 0.01);
    std::map<int, std::vector<CurvePoint>> curves;

    h.run(4, "pseudo-thresholds land at 10.4% (d=3) and 11.3% (d=5) within 1.5pp",
          [&](std::string& detail) {
              train(classifier3, data3, recipe(kBatchD3));
              train(classifier5, data5, recipe(kBatchD5));
              const HighLevelDecoder dec3(simple3, classifier3, l3);
              const HighLevelDecoder dec5(simple5, classifier5, l5);
              curves[3] = sweep(dec3, grid, 100000, 1001);
              curves[5] = sweep(dec5, grid, 100000, 1002);
              const double pt3 = pseudo_threshold(curves[3]);
              const double pt5 = pseudo_threshold(curves[5]);
              detail = "d=3 " + pct(pt3) + ", d=5 " + pct(pt5);
              return pt3 >= 0.104 - 0.015 && pt3 <= 0.104 + 0.015 && pt5 >= 0.113 - 0.015 &&
                     pt5 <= 0.113 + 0.015;
          });

    h.run(5, "depolarizing threshold from d=3,5,7 crossings lies in [12%, 16%]",
          [&](std::string& detail) {
              const Dataset data7 = generate_dataset(l7, t7, 0.15, kCountD7, 21);
              FFNNModel simple7 = FFNNModel::init(48, 25 * 7, 196, HeadKind::kGroupedSoftmax4, 7);
              FFNNModel classifier7 = FFNNModel::init(48, 60 * 7, 4, HeadKind::kSingleSoftmax4, 7);
              simple7.ped_table_hash = t7.hash();
              classifier7.ped_table_hash = t7.hash();
              const TrainResult r7s = train(simple7, data7, recipe(kBatchD7, 7, kEpochsD7));
              const TrainResult r7c = train(classifier7, data7, recipe(kBatchD7, 7, kEpochsD7));
              const HighLevelDecoder dec7(simple7, classifier7, l7);
              curves[7] = sweep(dec7, grid, default_trials_per_point(7), 1003);
              const ThresholdReport report = threshold(curves);
              detail = "threshold " + pct(report.threshold) + " (d=7 holdouts " +
                       pct(r7s.holdout_accuracy) + "/" + pct(r7c.holdout_accuracy) + ")";
              for (const PairCrossing& c : report.crossings) {
                  detail += c.found ? " d" + std::to_string(c.d_low) + "xd" +
                                          std::to_string(c.d_high) + "=" + pct(c.p)
                                    : " d" + std::to_string(c.d_low) + "xd" +
                                          std::to_string(c.d_high) + "=none";
              }
              return report.threshold >= 0.12 && report.threshold <= 0.16;
          });

    h.run(6, "analytic gradients match central differences to 1e-4", [&](std::string& detail) {
        PhiloxRng rng(909, 0, 0);
        double worst = 0.0;
        for (int rep = 0; rep < 4; ++rep) {
            const FFNNModel single =
                FFNNModel::init(8, 24, 4, HeadKind::kSingleSoftmax4, 50 + rep);
            const FFNNModel grouped =
                FFNNModel::init(8, 24, 36, HeadKind::kGroupedSoftmax4, 60 + rep);
            Eigen::VectorXd x(8);
            for (int i = 0; i < 8; ++i) x[i] = rng.next_double() < 0.5 ? 0.0 : 1.0;
            std::vector<std::uint8_t> group_labels(9);
            for (auto& g : group_labels)
                g = static_cast<std::uint8_t>(rng.next_u64() % 4);
            worst = std::max(worst, grad_check(single, x, {static_cast<std::uint8_t>(rep % 4)}));
            worst = std::max(worst, grad_check(grouped, x, group_labels));
        }
        detail = "worst relative error " + num(worst, "%.2e");
        return worst < 1e-4;
    });

    h.run(7, "latency is monotone in every knob and the pair latency is the max",
          [&](std::string& detail) {
              const FFNNModel big = FFNNModel::init(80, 720, 4, HeadKind::kSingleSoftmax4, 1);
              const HwConfig base = hw_preset(DecoderRole::kClassifier, 9);
              const auto total_with = [&](const std::function<void(HwConfig&)>& tweak) {
                  HwConfig cfg = base;
                  tweak(cfg);
                  return estimate_latency(map_network(big, cfg), cfg).total_ns;
              };
              struct Knob {
                  const char* name;
                  double lo, hi;
                  std::function<void(HwConfig&, double)> set;
              };
              const std::vector<Knob> knobs = {
                  {"digital_frequency_mhz", 200, 2000,
                   [](HwConfig& c, double v) { c.digital_freq_mhz = v; }},
                  {"buffer_bitwidth", 1000, 19600,
                   [](HwConfig& c, double v) { c.buffer_bitwidth = v; }},
                  {"inter_tile_bandwidth_gbps", 128, 2048,
                   [](HwConfig& c, double v) { c.inter_tile_bw_gbps = v; }},
                  {"intra_tile_bandwidth_gbps", 128, 2048,
                   [](HwConfig& c, double v) { c.intra_tile_bw_gbps = v; }},
                  {"num_adc_dac", 16, 256,
                   [](HwConfig& c, double v) { c.num_adc_dac = static_cast<int>(v); }},
              };
              for (const Knob& knob : knobs) {
                  double prev = std::numeric_limits<double>::infinity();
                  for (int i = 0; i < 10; ++i) {
                      const double v = knob.lo + (knob.hi - knob.lo) * i / 9.0;
                      const double total = total_with([&](HwConfig& c) { knob.set(c, v); });
                      if (total > prev + 1e-12) {
                          detail = std::string("not monotone in ") + knob.name + " at " + num(v);
                          return false;
                      }
                      prev = total;
                  }
              }
              for (int d : {3, 5, 7, 9}) {
                  const CodeLayout layout = CodeLayout::build(d);
                  const int in = layout.n_stab();
                  const FFNNModel cm = FFNNModel::init(
                      in, default_hidden_n(HeadKind::kSingleSoftmax4, d) * d, 4,
                      HeadKind::kSingleSoftmax4, 1);
                  const FFNNModel sm = FFNNModel::init(
                      in, default_hidden_n(HeadKind::kGroupedSoftmax4, d) * d, 4 * d * d,
                      HeadKind::kGroupedSoftmax4, 1);
                  const HwConfig ccfg = hw_preset(DecoderRole::kClassifier, d);
                  const HwConfig scfg = hw_preset(DecoderRole::kSimple, d);
                  const CostReport cr = estimate_latency(map_network(cm, ccfg), ccfg);
                  const CostReport sr = estimate_latency(map_network(sm, scfg), scfg);
                  const double expected = std::max(cr.total_ns, sr.total_ns);
                  if (decoder_latency_ns(cr, sr) != expected) {
                      detail = "pair latency != max at d=" + std::to_string(d);
                      return false;
                  }
              }
              detail = "5 knobs x 10 points, pair latency exact for d=3,5,7,9";
              return true;
          });

    h.run(8, "8-bit quantization costs <= 0.5pp and device noise <= 2pp on the d=3 classifier",
          [&](std::string& detail) {
              const Dataset eval3 = generate_dataset(l3, t3, 0.15, 16384, 99);
              const std::size_t n = eval3.size();
              const double float_acc = accuracy(classifier3, eval3, 0, n);
              const FFNNModel quant = quantize_weights(classifier3, 8);
              const double quant_acc = accuracy(quant, eval3, 0, n);
              const double quant_drop_pp = (float_acc - quant_acc) * 100.0;

              NonIdealityParams params;  // documented device defaults
              std::vector<double> accs(20);
              for (int k = 0; k < 20; ++k) {
                  params.seed = 5000 + static_cast<std::uint64_t>(k);
                  accs[k] = accuracy(inject_nonidealities(quant, params), eval3, 0, n);
              }
              double mean = 0.0;
              for (double a : accs) mean += a;
              mean /= 20.0;
              double var = 0.0;
              for (double a : accs) var += (a - mean) * (a - mean);
              const double sd_pp = std::sqrt(var / 19.0) * 100.0;
              const double inject_drop_pp = (float_acc - mean) * 100.0;
              detail = "float " + pct(float_acc) + ", quantized drop " + num(quant_drop_pp) +
                       "pp, injected drop " + num(inject_drop_pp) + "pp (sd " + num(sd_pp) +
                       "pp) over 20 seeds";
              return quant_drop_pp <= 0.5 && inject_drop_pp <= 2.0;
          });

    h.run(9, "cryogenic operation scales 251.65ns to 221.07ns and energy by 0.57",
          [&](std::string& detail) {
              CostReport room;
              room.per_layer_ns.resize(1);
              room.per_layer_ns[0].crossbar_compute = 251.65;
              room.latency_ns.crossbar_compute = 251.65;
              room.total_ns = 251.65;
              room.energy_nj.digital = 100.0;
              room.total_energy_nj = 100.0;
              room.power_w = room.total_energy_nj / room.total_ns;

              const CostReport cold = cryo_adjust(room, "4k");
              const CostReport scaled = cryo_adjust(room, "4k0v4");
              detail = "4k latency " + num(cold.total_ns, "%.4f") + "ns, 4k0v4 energy " +
                       num(scaled.total_energy_nj, "%.4f") + "nj";
              const bool latency_ok = std::abs(cold.total_ns - 221.07) <= 0.01 &&
                                      std::abs(scaled.total_ns - 221.07) <= 0.01;
              const bool energy_ok = cold.total_energy_nj == 100.0 &&
                                     scaled.total_energy_nj == 100.0 * (1.0 - 0.43);
              return latency_ok && energy_ok;
          });

    h.run(10, "datasets, models, and curves are byte-identical across reruns",
          [&](std::string& detail) {
              const fs::path dir = fs::temp_directory_path() / "scdec_acceptance";
              fs::remove_all(dir);
              fs::create_directories(dir);
              const auto at = [&](const char* name) { return (dir / name).string(); };

              for (const char* suffix : {"1", "2"}) {
                  const std::string tag(suffix);
                  if (run_cli("gen --distance 3 --p 0.15 --count 20000 --seed 123 --out " +
                              at(("g" + tag + ".bin").c_str())) != 0) {
                      detail = "gen failed";
                      return false;
                  }
                  if (run_cli("train --role simple --hidden-n 5 --epochs 5 --batch 32 --seed 9"
                              " --data " + at(("g" + tag + ".bin").c_str()) + " --out " +
                              at(("s" + tag + ".model").c_str())) != 0) {
                      detail = "train (simple) failed";
                      return false;
                  }
                  if (run_cli("train --role classifier --hidden-n 4 --epochs 5 --batch 32"
                              " --seed 9 --data " + at(("g" + tag + ".bin").c_str()) + " --out " +
                              at(("c" + tag + ".model").c_str())) != 0) {
                      detail = "train (classifier) failed";
                      return false;
                  }
                  if (run_cli("eval --classifier " + at(("c" + tag + ".model").c_str()) +
                              " --simple " + at(("s" + tag + ".model").c_str()) +
                              " --p-grid 0.05:0.15:0.05 --trials 2000 --out-dir " +
                              at(("e" + tag).c_str())) != 0) {
                      detail = "eval failed";
                      return false;
                  }
              }
              if (slurp(dir / "g1.bin") != slurp(dir / "g2.bin")) {
                  detail = "dataset bytes differ";
                  return false;
              }
              if (slurp(dir / "s1.model") != slurp(dir / "s2.model") ||
                  slurp(dir / "c1.model") != slurp(dir / "c2.model")) {
                  detail = "model bytes differ";
                  return false;
              }
              if (slurp(dir / "e1/curve_d3.csv") != slurp(dir / "e2/curve_d3.csv")) {
                  detail = "curve bytes differ";
                  return false;
              }
              detail = "dataset, two models, and curve CSV identical";
              return true;
          });

    std::printf("%s: %d criterion(s) failed\n", h.failures == 0 ? "ALL PASS" : "RESULT",
                h.failures);
    return h.failures;
}
