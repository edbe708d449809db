#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scdec/cim.hpp"
#include "scdec/evaluation.hpp"
#include "scdec/ffnn.hpp"
#include "scdec/pure_error.hpp"
#include "scdec/surface_code.hpp"

namespace scdec {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal string that parses back to the identical double.
std::string format_shortest(double v);

// Model file: one JSON header line, then row-major little-endian float64
// blobs for W1, b1, W2, b2.
void save_model(const FFNNModel& model, const std::string& path);
FFNNModel load_model(const std::string& path);

// Curve CSV: optional "# key=value ..." provenance line, a fixed header row
// "p,trials,failures,ler,ci_low,ci_high", then one row per grid point.
// Doubles are written in shortest round-trip form, so emit/parse is exact.
void save_curve_csv(const std::vector<CurvePoint>& curve, const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& meta = {});
std::vector<CurvePoint> load_curve_csv(const std::string& path);

std::string threshold_report_to_json(const ThresholdReport& report);
void save_threshold_report(const ThresholdReport& report, const std::string& path);

std::string hw_config_to_json(const HwConfig& cfg);
HwConfig hw_config_from_json_text(const std::string& text);
HwConfig load_hw_config(const std::string& path);
void save_hw_config(const HwConfig& cfg, const std::string& path);

std::string nonideality_to_json(const NonIdealityParams& params);
NonIdealityParams nonideality_from_json_text(const std::string& text);
NonIdealityParams load_nonideality(const std::string& path);

std::string cost_report_to_json(const CostReport& report);

// Human-inspectable dumps: stabilizer supports and matrix rows as hex strings.
std::string layout_to_json(const CodeLayout& layout);
std::string ped_table_to_json(const CodeLayout& layout, const PureErrorTable& table);

struct ManifestFile {
    std::string path;
    std::string fnv1a64;  // hex digest of the file bytes
};

struct ExperimentManifest {
    int distance = 0;
    std::uint64_t seed = 0;
    std::string ped_table_hash;
    std::vector<ManifestFile> datasets;
    std::vector<ManifestFile> models;
    std::string p_grid;
    long long trials = 0;
    std::string hw_config;  // path, empty when presets were used
    std::string tool_version = kToolVersion;
};

std::string manifest_to_json(const ExperimentManifest& manifest);
ExperimentManifest manifest_from_json_text(const std::string& text);
void save_manifest(const ExperimentManifest& manifest, const std::string& path);
ExperimentManifest load_manifest(const std::string& path);

// Recomputes every referenced file's hash; throws on the first mismatch.
void verify_manifest(const ExperimentManifest& manifest);

}  // namespace scdec
