#include "scdec/cim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scdec/rng.hpp"

namespace scdec {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

double cycle_ns(const HwConfig& cfg) { return 1000.0 / cfg.digital_freq_mhz; }

}  // namespace

void HwConfig::validate() const {
    require(digital_freq_mhz > 0.0 && digital_freq_mhz <= 2000.0,
            "digital_frequency_mhz must be in (0, 2000]");
    require(buffer_bitwidth > 0.0 && buffer_bitwidth <= 19600.0,
            "buffer_bitwidth must be in (0, 19600]");
    require(inter_tile_bw_gbps > 0.0 && inter_tile_bw_gbps <= 2048.0,
            "inter_tile_bandwidth_gbps must be in (0, 2048]");
    require(intra_tile_bw_gbps > 0.0 && intra_tile_bw_gbps <= 2048.0,
            "intra_tile_bandwidth_gbps must be in (0, 2048]");
    require(num_adc_dac >= 1 && num_adc_dac <= 256, "num_adc_dac must be in [1, 256]");
    require(xbar_rows == 256 && xbar_cols == 256, "crossbar geometry is fixed at 256x256");
    require(cell_bits == 1, "cells store a single bit");
    require(num_adc_dac <= xbar_cols, "num_adc_dac cannot exceed crossbar columns");
    require(weight_bits >= 2 && weight_bits <= 16, "weight_bits must be in [2, 16]");
    require(activation_bits >= 1 && activation_bits <= 16, "activation_bits must be in [1, 16]");
    require(adc_sample_ns > 0.0 && dac_settle_ns > 0.0, "converter timings must be positive");
    for (const UnitCost* u : {&unit.crossbar, &unit.adc, &unit.dac, &unit.buffer_kb,
                              &unit.digital, &unit.interconnect}) {
        require(u->area_mm2 >= 0.0 && u->power_w >= 0.0, "unit costs must be non-negative");
    }
}

HwConfig hw_preset(DecoderRole role, int distance) {
    std::size_t idx = 0;
    switch (distance) {
        case 3: idx = 0; break;
        case 5: idx = 1; break;
        case 7: idx = 2; break;
        case 9: idx = 3; break;
        default: throw std::invalid_argument("hw_preset: distance must be one of 3, 5, 7, 9");
    }
    HwConfig cfg;
    cfg.digital_freq_mhz = 1500.0;
    if (role == DecoderRole::kClassifier) {
        constexpr double kBuffer[4] = {3000, 8000, 11000, 11000};
        constexpr double kInter[4] = {1000, 1000, 1500, 1500};
        constexpr double kIntra[4] = {1000, 1000, 1000, 1000};
        constexpr int kConv[4] = {96, 144, 144, 144};
        cfg.buffer_bitwidth = kBuffer[idx];
        cfg.inter_tile_bw_gbps = kInter[idx];
        cfg.intra_tile_bw_gbps = kIntra[idx];
        cfg.num_adc_dac = kConv[idx];
    } else {
        constexpr double kBuffer[4] = {2000, 4000, 8000, 11000};
        constexpr double kInter[4] = {1000, 1000, 1000, 1500};
        constexpr double kIntra[4] = {600, 800, 1000, 1000};
        constexpr int kConv[4] = {64, 112, 208, 256};
        cfg.buffer_bitwidth = kBuffer[idx];
        cfg.inter_tile_bw_gbps = kInter[idx];
        cfg.intra_tile_bw_gbps = kIntra[idx];
        cfg.num_adc_dac = kConv[idx];
    }
    cfg.validate();
    return cfg;
}

int NetworkMapping::total_crossbars() const {
    int total = 0;
    for (const auto& layer : layers) total += layer.crossbars();
    return total;
}

NetworkMapping map_network(const FFNNModel& model, const HwConfig& cfg) {
    cfg.validate();
    NetworkMapping mapping;
    const int dims[3] = {model.in_dim, model.hidden_dim, model.out_dim};
    for (int l = 0; l < 2; ++l) {
        LayerMapping layer;
        layer.in_dim = dims[l];
        layer.out_dim = dims[l + 1];
        layer.grid_rows = ceil_div(layer.in_dim, cfg.xbar_rows);
        layer.grid_cols = ceil_div(layer.out_dim * cfg.weight_bits, cfg.xbar_cols);
        mapping.layers.push_back(layer);
    }
    return mapping;
}

CostReport estimate_latency(const NetworkMapping& mapping, const HwConfig& cfg) {
    cfg.validate();
    CostReport report;
    const double step_ns = std::max(cfg.adc_sample_ns, cfg.dac_settle_ns);
    for (std::size_t l = 0; l < mapping.layers.size(); ++l) {
        const LayerMapping& layer = mapping.layers[l];
        StageBreakdown st;

        // Tiles run concurrently; the fullest tile sets the pace.
        for (int r = 0; r < layer.grid_rows; ++r) {
            const int rows = std::min(cfg.xbar_rows, layer.in_dim - r * cfg.xbar_rows);
            for (int c = 0; c < layer.grid_cols; ++c) {
                const int cols = std::min(cfg.xbar_cols,
                                          layer.out_dim * cfg.weight_bits - c * cfg.xbar_cols);
                const double t = cfg.activation_bits * ceil_div(rows, cfg.num_adc_dac) *
                                 ceil_div(cols, cfg.num_adc_dac) * step_ns;
                st.crossbar_compute = std::max(st.crossbar_compute, t);
            }
        }
        st.adc_dac = cfg.activation_bits * (cfg.adc_sample_ns + cfg.dac_settle_ns);

        const double in_bits = static_cast<double>(layer.in_dim) * cfg.activation_bits;
        const double out_bits = static_cast<double>(layer.out_dim) * cfg.activation_bits;
        st.buffer = (in_bits + out_bits) / cfg.buffer_bitwidth * cycle_ns(cfg);

        const int merge_cycles =
            (layer.grid_rows - 1) + (cfg.weight_bits - 1) + (cfg.activation_bits - 1);
        st.digital = merge_cycles * cycle_ns(cfg);

        // Inter-tile traffic: the layer's input activations, plus the network
        // output after the last layer. Intra-tile traffic: partial sums
        // requantized to activation width hop between row tiles.
        st.interconnect = in_bits / cfg.inter_tile_bw_gbps;
        if (l + 1 == mapping.layers.size()) st.interconnect += out_bits / cfg.inter_tile_bw_gbps;
        st.interconnect +=
            (layer.grid_rows - 1) * out_bits / cfg.intra_tile_bw_gbps;

        report.per_layer_ns.push_back(st);
        report.latency_ns.crossbar_compute += st.crossbar_compute;
        report.latency_ns.adc_dac += st.adc_dac;
        report.latency_ns.buffer += st.buffer;
        report.latency_ns.digital += st.digital;
        report.latency_ns.interconnect += st.interconnect;
    }
    report.total_ns = report.latency_ns.total();
    return report;
}

CostReport estimate_energy_area(const NetworkMapping& mapping, const HwConfig& cfg) {
    CostReport report = estimate_latency(mapping, cfg);
    const int crossbars = mapping.total_crossbars();
    const int converters = crossbars * cfg.num_adc_dac;
    int links = 0;
    for (const auto& layer : mapping.layers) links += layer.crossbars();
    const double buffer_kb = cfg.buffer_bitwidth / 8.0 / 1024.0;

    const double p_xbar = crossbars * cfg.unit.crossbar.power_w;
    const double p_conv = converters * (cfg.unit.adc.power_w + cfg.unit.dac.power_w);
    const double p_buf = buffer_kb * cfg.unit.buffer_kb.power_w;
    const double p_dig = cfg.unit.digital.power_w;
    const double p_link = links * cfg.unit.interconnect.power_w;

    // Energy per stage: component power x time that stage keeps it busy.
    // Converters run through both the compute phase and the fill/drain tail.
    const StageBreakdown& t = report.latency_ns;
    report.energy_nj.crossbar_compute = p_xbar * t.crossbar_compute;
    report.energy_nj.adc_dac = p_conv * (t.crossbar_compute + t.adc_dac);
    report.energy_nj.buffer = p_buf * t.buffer;
    report.energy_nj.digital = p_dig * t.digital;
    report.energy_nj.interconnect = p_link * t.interconnect;
    report.total_energy_nj = report.energy_nj.total();

    report.area_mm2.crossbar_compute = crossbars * cfg.unit.crossbar.area_mm2;
    report.area_mm2.adc_dac = converters * (cfg.unit.adc.area_mm2 + cfg.unit.dac.area_mm2);
    report.area_mm2.buffer = buffer_kb * cfg.unit.buffer_kb.area_mm2;
    report.area_mm2.digital = cfg.unit.digital.area_mm2;
    report.area_mm2.interconnect = links * cfg.unit.interconnect.area_mm2;
    report.total_area_mm2 = report.area_mm2.total();

    report.power_w = report.total_ns > 0.0 ? report.total_energy_nj / report.total_ns : 0.0;
    return report;
}

double decoder_latency_ns(const CostReport& classifier, const CostReport& simple) {
    return std::max(classifier.total_ns, simple.total_ns);
}

namespace {

// One weight's worth of device draws, its own counter stream: for each bit,
// positive then negative device, each drawing fault uniform then variation.
double perturb_weight(double w, double scale, int bits, double leak, double sa0, double sa1,
                      double sigma, PhiloxRng& rng) {
    const double qmax = static_cast<double>((1 << (bits - 1)) - 1);
    const double q = std::clamp(std::round(w / scale), -qmax, qmax);
    const auto q_pos = static_cast<std::uint32_t>(q > 0 ? q : 0);
    const auto q_neg = static_cast<std::uint32_t>(q < 0 ? -q : 0);
    double effective = 0.0;
    for (int k = 0; k < bits - 1; ++k) {
        double pair = 0.0;
        for (int side = 0; side < 2; ++side) {
            const bool programmed_on = (((side == 0 ? q_pos : q_neg) >> k) & 1u) != 0;
            const double u = rng.next_double();
            double g;
            if (u < sa1) {
                g = 1.0;  // stuck on, frozen
            } else if (u < sa1 + sa0) {
                g = leak;  // stuck off, frozen
            } else {
                g = (programmed_on ? 1.0 : leak) * (1.0 + sigma * rng.next_normal());
            }
            pair += (side == 0 ? g : -g);
        }
        effective += std::ldexp(pair, k);
    }
    return effective * scale;
}

}  // namespace

FFNNModel inject_nonidealities(const FFNNModel& model, const NonIdealityParams& params) {
    if (!model.quant.has_value()) {
        throw std::invalid_argument("inject_nonidealities requires a quantized model");
    }
    require(params.sa0_rate >= 0.0 && params.sa0_rate <= 1.0, "sa0_rate must be in [0, 1]");
    require(params.sa1_rate >= 0.0 && params.sa1_rate <= 1.0, "sa1_rate must be in [0, 1]");
    require(params.sa0_rate + params.sa1_rate <= 1.0, "fault rates must sum to at most 1");
    require(params.on_off_ratio > 1.0, "on_off_ratio must exceed 1");
    require(params.variation_sigma >= 0.0, "variation_sigma must be non-negative");

    const int bits = model.quant->bits;
    const double leak = 1.0 / params.on_off_ratio;
    FFNNModel out = model;
    Eigen::MatrixXd* mats[2] = {&out.w1, &out.w2};
    const double scales[2] = {model.quant->scale_w1, model.quant->scale_w2};
    for (int l = 0; l < 2; ++l) {
        Eigen::MatrixXd& m = *mats[l];
        const double scale = scales[l];
        if (scale == 0.0) continue;  // all-zero tensor, device state scaled by zero anyway
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            PhiloxRng rng(params.seed, static_cast<std::uint64_t>(l) + 1,
                          static_cast<std::uint64_t>(i));
            m.data()[i] = perturb_weight(m.data()[i], scale, bits, leak, params.sa0_rate,
                                         params.sa1_rate, params.variation_sigma, rng);
        }
    }
    return out;
}

CostReport cryo_adjust(const CostReport& report, const std::string& mode) {
    if (report.cryo_mode != "none") {
        throw std::invalid_argument("cryo_adjust: report already adjusted");
    }
    double latency_scale = 1.0;
    double energy_scale = 1.0;
    if (mode == "4k") {
        latency_scale = 1.0 - 0.1215;
    } else if (mode == "4k0v4") {
        latency_scale = 1.0 - 0.1215;
        energy_scale = 1.0 - 0.43;
    } else if (mode != "none") {
        throw std::invalid_argument("cryo_adjust: mode must be none, 4k, or 4k0v4");
    }
    CostReport out = report;
    auto scale_stages = [](StageBreakdown& st, double s) {
        st.crossbar_compute *= s;
        st.adc_dac *= s;
        st.buffer *= s;
        st.digital *= s;
        st.interconnect *= s;
    };
    for (auto& st : out.per_layer_ns) scale_stages(st, latency_scale);
    scale_stages(out.latency_ns, latency_scale);
    out.total_ns *= latency_scale;
    scale_stages(out.energy_nj, energy_scale);
    out.total_energy_nj *= energy_scale;
    out.power_w = out.total_ns > 0.0 ? out.total_energy_nj / out.total_ns : 0.0;
    out.cryo_mode = mode;
    return out;
}

}  // namespace scdec
