#include "scdec/storage.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "scdec/hash.hpp"

namespace scdec {

namespace {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("short write to " + path);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("bad numeric field '" + s + "'");
    }
    return v;
}

template <typename Mat>
void append_row_major(std::string& blob, const Mat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double v = m(r, c);
            char bytes[8];
            std::memcpy(bytes, &v, 8);
            blob.append(bytes, 8);
        }
    }
}

template <typename Mat>
void read_row_major(const std::string& blob, std::size_t& offset, Mat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (offset + 8 > blob.size()) throw std::runtime_error("model file truncated");
            double v;
            std::memcpy(&v, blob.data() + offset, 8);
            m(r, c) = v;
            offset += 8;
        }
    }
}

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error(std::string("malformed JSON in ") + what);
    return j;
}

std::vector<std::string> rows_to_hex(const Gf2Matrix& m) {
    std::vector<std::string> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).to_hex());
    return rows;
}

}  // namespace

std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void save_model(const FFNNModel& model, const std::string& path) {
    json header;
    header["in_dim"] = model.in_dim;
    header["hidden_dim"] = model.hidden_dim;
    header["out_dim"] = model.out_dim;
    header["head_kind"] = to_string(model.head_kind);
    header["seed"] = model.seed;
    header["ped_table_hash"] = hash_to_hex(model.ped_table_hash);
    if (model.quant.has_value()) {
        header["quant"] = {{"bits", model.quant->bits},
                           {"scale_w1", model.quant->scale_w1},
                           {"scale_w2", model.quant->scale_w2}};
    }
    std::string out = header.dump();
    out.push_back('\n');
    append_row_major(out, model.w1);
    append_row_major(out, model.b1);
    append_row_major(out, model.w2);
    append_row_major(out, model.b2);
    write_text_file(path, out);
}

FFNNModel load_model(const std::string& path) {
    const std::string text = read_text_file(path);
    const std::size_t nl = text.find('\n');
    if (nl == std::string::npos) throw std::runtime_error("model file has no header line");
    json header = parse_json(text.substr(0, nl), "model header");

    FFNNModel model;
    model.in_dim = header.at("in_dim").get<int>();
    model.hidden_dim = header.at("hidden_dim").get<int>();
    model.out_dim = header.at("out_dim").get<int>();
    model.head_kind = head_kind_from_string(header.at("head_kind").get<std::string>());
    model.seed = header.at("seed").get<std::uint64_t>();
    model.ped_table_hash = hash_from_hex(header.at("ped_table_hash").get<std::string>());
    if (header.contains("quant")) {
        QuantMeta q;
        q.bits = header["quant"].at("bits").get<int>();
        q.scale_w1 = header["quant"].at("scale_w1").get<double>();
        q.scale_w2 = header["quant"].at("scale_w2").get<double>();
        model.quant = q;
    }
    if (model.in_dim < 1 || model.hidden_dim < 1 || model.out_dim < 1) {
        throw std::runtime_error("model header has non-positive dimensions");
    }

    model.w1.resize(model.hidden_dim, model.in_dim);
    model.b1.resize(model.hidden_dim);
    model.w2.resize(model.out_dim, model.hidden_dim);
    model.b2.resize(model.out_dim);
    std::size_t offset = nl + 1;
    read_row_major(text, offset, model.w1);
    read_row_major(text, offset, model.b1);
    read_row_major(text, offset, model.w2);
    read_row_major(text, offset, model.b2);
    if (offset != text.size()) throw std::runtime_error("model file has trailing bytes");
    return model;
}

void save_curve_csv(const std::vector<CurvePoint>& curve, const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& meta) {
    std::string out;
    if (!meta.empty()) {
        out += "#";
        for (const auto& [key, value] : meta) {
            out += " " + key + "=" + value;
        }
        out += "\n";
    }
    out += "p,trials,failures,ler,ci_low,ci_high\n";
    for (const CurvePoint& pt : curve) {
        out += format_shortest(pt.p) + "," + std::to_string(pt.trials) + "," +
               std::to_string(pt.failures) + "," + format_shortest(pt.ler) + "," +
               format_shortest(pt.ci_low) + "," + format_shortest(pt.ci_high) + "\n";
    }
    write_text_file(path, out);
}

std::vector<CurvePoint> load_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<CurvePoint> curve;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "p,trials,failures,ler,ci_low,ci_high") {
                throw std::runtime_error("unexpected curve CSV header: " + line);
            }
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw std::runtime_error("bad curve CSV row: " + line);
        CurvePoint pt;
        pt.p = parse_double(fields[0]);
        pt.trials = std::stoll(fields[1]);
        pt.failures = std::stoll(fields[2]);
        pt.ler = parse_double(fields[3]);
        pt.ci_low = parse_double(fields[4]);
        pt.ci_high = parse_double(fields[5]);
        curve.push_back(pt);
    }
    if (!saw_header) throw std::runtime_error("curve CSV has no header row: " + path);
    return curve;
}

std::string threshold_report_to_json(const ThresholdReport& report) {
    json j;
    j["method"] = report.method;
    j["threshold"] = report.threshold;
    j["degenerate"] = report.degenerate;
    json pseudo = json::object();
    for (const auto& [d, p] : report.pseudo_thresholds) pseudo[std::to_string(d)] = p;
    j["pseudo_thresholds"] = pseudo;
    json crossings = json::array();
    for (const PairCrossing& c : report.crossings) {
        crossings.push_back({{"d_low", c.d_low},
                             {"d_high", c.d_high},
                             {"p", c.p},
                             {"found", c.found},
                             {"degenerate", c.degenerate}});
    }
    j["crossings"] = crossings;
    return j.dump(2) + "\n";
}

void save_threshold_report(const ThresholdReport& report, const std::string& path) {
    write_text_file(path, threshold_report_to_json(report));
}

std::string hw_config_to_json(const HwConfig& cfg) {
    json j;
    j["digital_frequency_mhz"] = cfg.digital_freq_mhz;
    j["buffer_bitwidth"] = cfg.buffer_bitwidth;
    j["inter_tile_bandwidth_gbps"] = cfg.inter_tile_bw_gbps;
    j["intra_tile_bandwidth_gbps"] = cfg.intra_tile_bw_gbps;
    j["num_adc_dac"] = cfg.num_adc_dac;
    j["weight_bits"] = cfg.weight_bits;
    j["activation_bits"] = cfg.activation_bits;
    j["adc_sample_ns"] = cfg.adc_sample_ns;
    j["dac_settle_ns"] = cfg.dac_settle_ns;
    auto unit = [](const UnitCost& u) {
        return json{{"area_mm2", u.area_mm2}, {"power_w", u.power_w}};
    };
    j["unit_costs"] = {{"crossbar", unit(cfg.unit.crossbar)},
                       {"adc", unit(cfg.unit.adc)},
                       {"dac", unit(cfg.unit.dac)},
                       {"buffer_kb", unit(cfg.unit.buffer_kb)},
                       {"digital_block", unit(cfg.unit.digital)},
                       {"interconnect", unit(cfg.unit.interconnect)}};
    return j.dump(2) + "\n";
}

HwConfig hw_config_from_json_text(const std::string& text) {
    json j = parse_json(text, "hardware config");
    HwConfig cfg;
    cfg.digital_freq_mhz = j.value("digital_frequency_mhz", cfg.digital_freq_mhz);
    cfg.buffer_bitwidth = j.value("buffer_bitwidth", cfg.buffer_bitwidth);
    cfg.inter_tile_bw_gbps = j.value("inter_tile_bandwidth_gbps", cfg.inter_tile_bw_gbps);
    cfg.intra_tile_bw_gbps = j.value("intra_tile_bandwidth_gbps", cfg.intra_tile_bw_gbps);
    cfg.num_adc_dac = j.value("num_adc_dac", cfg.num_adc_dac);
    cfg.weight_bits = j.value("weight_bits", cfg.weight_bits);
    cfg.activation_bits = j.value("activation_bits", cfg.activation_bits);
    cfg.adc_sample_ns = j.value("adc_sample_ns", cfg.adc_sample_ns);
    cfg.dac_settle_ns = j.value("dac_settle_ns", cfg.dac_settle_ns);
    if (j.contains("unit_costs")) {
        const json& u = j["unit_costs"];
        auto read_unit = [&u](const char* key, UnitCost& out) {
            if (!u.contains(key)) return;
            out.area_mm2 = u[key].value("area_mm2", out.area_mm2);
            out.power_w = u[key].value("power_w", out.power_w);
        };
        read_unit("crossbar", cfg.unit.crossbar);
        read_unit("adc", cfg.unit.adc);
        read_unit("dac", cfg.unit.dac);
        read_unit("buffer_kb", cfg.unit.buffer_kb);
        read_unit("digital_block", cfg.unit.digital);
        read_unit("interconnect", cfg.unit.interconnect);
    }
    cfg.validate();
    return cfg;
}

HwConfig load_hw_config(const std::string& path) {
    return hw_config_from_json_text(read_text_file(path));
}

void save_hw_config(const HwConfig& cfg, const std::string& path) {
    write_text_file(path, hw_config_to_json(cfg));
}

std::string nonideality_to_json(const NonIdealityParams& params) {
    json j;
    j["sa0_rate"] = params.sa0_rate;
    j["sa1_rate"] = params.sa1_rate;
    j["on_off_ratio"] = params.on_off_ratio;
    j["variation_sigma"] = params.variation_sigma;
    j["seed"] = params.seed;
    return j.dump(2) + "\n";
}

NonIdealityParams nonideality_from_json_text(const std::string& text) {
    json j = parse_json(text, "non-ideality params");
    NonIdealityParams params;
    params.sa0_rate = j.value("sa0_rate", params.sa0_rate);
    params.sa1_rate = j.value("sa1_rate", params.sa1_rate);
    params.on_off_ratio = j.value("on_off_ratio", params.on_off_ratio);
    params.variation_sigma = j.value("variation_sigma", params.variation_sigma);
    params.seed = j.value("seed", params.seed);
    return params;
}

NonIdealityParams load_nonideality(const std::string& path) {
    return nonideality_from_json_text(read_text_file(path));
}

std::string cost_report_to_json(const CostReport& report) {
    auto stages = [](const StageBreakdown& st) {
        return json{{"crossbar_compute", st.crossbar_compute},
                    {"adc_dac", st.adc_dac},
                    {"buffer", st.buffer},
                    {"digital", st.digital},
                    {"interconnect", st.interconnect},
                    {"total", st.total()}};
    };
    json j;
    json per_layer = json::array();
    for (const StageBreakdown& st : report.per_layer_ns) per_layer.push_back(stages(st));
    j["per_layer_ns"] = per_layer;
    j["latency_ns"] = stages(report.latency_ns);
    j["total_ns"] = report.total_ns;
    j["energy_nj"] = stages(report.energy_nj);
    j["total_energy_nj"] = report.total_energy_nj;
    j["area_mm2"] = stages(report.area_mm2);
    j["total_area_mm2"] = report.total_area_mm2;
    j["power_w"] = report.power_w;
    j["cryo_mode"] = report.cryo_mode;
    return j.dump(2) + "\n";
}

std::string layout_to_json(const CodeLayout& layout) {
    json j;
    j["distance"] = layout.distance();
    j["num_data_qubits"] = layout.n_data();
    auto stabs = [](const std::vector<Stabilizer>& list) {
        json arr = json::array();
        for (const Stabilizer& s : list) arr.push_back(s.support);
        return arr;
    };
    j["x_stabilizers"] = stabs(layout.x_stabilizers());
    j["z_stabilizers"] = stabs(layout.z_stabilizers());
    j["h_x"] = rows_to_hex(layout.h_x());
    j["h_z"] = rows_to_hex(layout.h_z());
    j["logical_x"] = layout.logical_x().x.to_hex();
    j["logical_z"] = layout.logical_z().z.to_hex();
    return j.dump(2) + "\n";
}

std::string ped_table_to_json(const CodeLayout& layout, const PureErrorTable& table) {
    json j;
    j["distance"] = layout.distance();
    j["hash"] = hash_to_hex(table.hash());
    j["t_x"] = rows_to_hex(table.t_x());
    j["t_z"] = rows_to_hex(table.t_z());
    return j.dump(2) + "\n";
}

std::string manifest_to_json(const ExperimentManifest& manifest) {
    json j;
    j["tool_version"] = manifest.tool_version;
    j["distance"] = manifest.distance;
    j["seed"] = manifest.seed;
    j["ped_table_hash"] = manifest.ped_table_hash;
    auto files = [](const std::vector<ManifestFile>& list) {
        json arr = json::array();
        for (const ManifestFile& f : list) {
            arr.push_back({{"path", f.path}, {"fnv1a64", f.fnv1a64}});
        }
        return arr;
    };
    j["datasets"] = files(manifest.datasets);
    j["models"] = files(manifest.models);
    j["p_grid"] = manifest.p_grid;
    j["trials"] = manifest.trials;
    j["hw_config"] = manifest.hw_config;
    return j.dump(2) + "\n";
}

ExperimentManifest manifest_from_json_text(const std::string& text) {
    json j = parse_json(text, "manifest");
    ExperimentManifest m;
    m.tool_version = j.value("tool_version", std::string());
    m.distance = j.at("distance").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.ped_table_hash = j.value("ped_table_hash", std::string());
    auto files = [&j](const char* key) {
        std::vector<ManifestFile> list;
        if (!j.contains(key)) return list;
        for (const json& f : j[key]) {
            list.push_back({f.at("path").get<std::string>(), f.at("fnv1a64").get<std::string>()});
        }
        return list;
    };
    m.datasets = files("datasets");
    m.models = files("models");
    m.p_grid = j.value("p_grid", std::string());
    m.trials = j.value("trials", 0ll);
    m.hw_config = j.value("hw_config", std::string());
    return m;
}

void save_manifest(const ExperimentManifest& manifest, const std::string& path) {
    write_text_file(path, manifest_to_json(manifest));
}

ExperimentManifest load_manifest(const std::string& path) {
    return manifest_from_json_text(read_text_file(path));
}

void verify_manifest(const ExperimentManifest& manifest) {
    auto check = [](const std::vector<ManifestFile>& list) {
        for (const ManifestFile& f : list) {
            const std::string actual = hash_to_hex(hash_file(f.path));
            if (actual != f.fnv1a64) {
                throw std::runtime_error("hash mismatch for " + f.path + ": manifest " +
                                         f.fnv1a64 + ", file " + actual);
            }
        }
    };
    check(manifest.datasets);
    check(manifest.models);
}

}  // namespace scdec
