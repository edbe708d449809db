#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scdec/ffnn.hpp"

namespace scdec {

struct UnitCost {
    double area_mm2 = 0.0;
    double power_w = 0.0;
};

// Invented per-component unit costs; the model is parametric, validated by
// trend directions and orderings, never by absolute figures.
struct UnitCosts {
    UnitCost crossbar{2e-4, 3e-4};       // per 256x256 array
    UnitCost adc{3e-4, 2e-3};            // per ADC
    UnitCost dac{2e-5, 2e-4};            // per DAC
    UnitCost buffer_kb{2e-3, 5e-4};      // per KB of buffer
    UnitCost digital{1e-2, 5e-2};        // per digital merge block
    UnitCost interconnect{5e-3, 1e-2};   // per tile link
};

// The five sweepable knobs (JSON names in parentheses) plus fixed device
// parameters. Crossbars are 256x256 single-bit cells; signed weights use a
// differential device pair per cell slot, which leaves the crossbar-count
// arithmetic untouched.
struct HwConfig {
    double digital_freq_mhz = 1500.0;     // (digital_frequency_mhz) max 2000
    double buffer_bitwidth = 3000.0;      // (buffer_bitwidth) bits, max 19600
    double inter_tile_bw_gbps = 1000.0;   // (inter_tile_bandwidth_gbps) max 2048
    double intra_tile_bw_gbps = 1000.0;   // (intra_tile_bandwidth_gbps) max 2048
    int num_adc_dac = 96;                 // (num_adc_dac) per crossbar, max 256

    int xbar_rows = 256;
    int xbar_cols = 256;
    int cell_bits = 1;
    int weight_bits = 8;
    int activation_bits = 8;
    double adc_sample_ns = 0.1;  // 10 GS/s converters
    double dac_settle_ns = 0.1;
    UnitCosts unit;

    void validate() const;  // throws std::invalid_argument on out-of-range fields
};

enum class DecoderRole : std::uint8_t { kClassifier = 0, kSimple = 1 };

// Tuned hardware operating points per role and distance.
HwConfig hw_preset(DecoderRole role, int distance);

struct LayerMapping {
    int in_dim = 0;
    int out_dim = 0;
    int grid_rows = 0;  // ceil(in / xbar_rows)
    int grid_cols = 0;  // ceil(out * weight_bits / xbar_cols)
    int crossbars() const { return grid_rows * grid_cols; }
};

struct NetworkMapping {
    std::vector<LayerMapping> layers;
    int total_crossbars() const;
};

// Every weight bit lands in exactly one cell slot; multi-bit weights occupy
// adjacent columns (bit slicing). Deterministic in (model dims, cfg).
NetworkMapping map_network(const FFNNModel& model, const HwConfig& cfg);

struct StageBreakdown {
    double crossbar_compute = 0.0;
    double adc_dac = 0.0;
    double buffer = 0.0;
    double digital = 0.0;
    double interconnect = 0.0;
    double total() const { return crossbar_compute + adc_dac + buffer + digital + interconnect; }
};

struct CostReport {
    std::vector<StageBreakdown> per_layer_ns;
    StageBreakdown latency_ns;   // stage totals across layers
    double total_ns = 0.0;
    StageBreakdown energy_nj;    // same stage buckets
    double total_energy_nj = 0.0;
    StageBreakdown area_mm2;     // crossbar/adc+dac/buffer/digital/interconnect buckets
    double total_area_mm2 = 0.0;
    double power_w = 0.0;        // defined as energy / latency
    std::string cryo_mode = "none";
};

// Pipeline latency per layer:
//   crossbar_compute: activation_bits x ceil(rows/adc_dac) x ceil(cols/adc_dac)
//                     x max(adc_sample, dac_settle), max over concurrent tiles;
//   adc_dac:          pipeline fill/drain, activation_bits x (sample + settle);
//   buffer:           (in + out activation bits) / buffer_bitwidth cycles;
//   digital:          (grid_rows-1) + (weight_bits-1) + (activation_bits-1) merges;
//   interconnect:     layer input bits (plus final output) over inter-tile BW,
//                     requantized partial sums between row tiles over intra-tile BW.
CostReport estimate_latency(const NetworkMapping& mapping, const HwConfig& cfg);

// Adds energy (component power x active stage time), area, and power.
CostReport estimate_energy_area(const NetworkMapping& mapping, const HwConfig& cfg);

// The parallel decoder finishes when the slower network finishes.
double decoder_latency_ns(const CostReport& classifier, const CostReport& simple);

struct NonIdealityParams {
    double sa0_rate = 0.0904;      // stuck at minimum conductance
    double sa1_rate = 0.0175;      // stuck at full conductance
    double on_off_ratio = 20.0;
    double variation_sigma = 0.10;
    std::uint64_t seed = 0;
};

// Device-level perturbation of a quantized model: each weight bit is a
// differential conductance pair; stuck-at faults freeze devices, finite
// on/off ratio makes zero bits leak, surviving devices get multiplicative
// Gaussian variation. Deterministic by seed; biases stay digital.
FFNNModel inject_nonidealities(const FFNNModel& model, const NonIdealityParams& params);

// 4K: latency x (1 - 0.1215), energy unchanged. 4K_0.4V: additionally
// energy x (1 - 0.43). Power recomputed; reapplication rejected.
CostReport cryo_adjust(const CostReport& report, const std::string& mode);

}  // namespace scdec
