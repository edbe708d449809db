#include <cmath>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scdec/cim.hpp"
#include "scdec/dataset.hpp"
#include "scdec/decoder.hpp"
#include "scdec/evaluation.hpp"
#include "scdec/ffnn.hpp"
#include "scdec/hash.hpp"
#include "scdec/pure_error.hpp"
#include "scdec/storage.hpp"
#include "scdec/surface_code.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scdec;

namespace {

int env_threads() {
    const char* v = std::getenv("SCDEC_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    return std::max(0, std::atoi(v));
}

int distance_from_in_dim(int in_dim) {
    const int d = static_cast<int>(std::lround(std::sqrt(in_dim + 1.0)));
    if (d * d - 1 != in_dim || d < 3 || d > 15 || d % 2 == 0) {
        throw std::runtime_error("model input width " + std::to_string(in_dim) +
                                 " is not d^2-1 for a supported distance");
    }
    return d;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::runtime_error("grid spec must be from:to:step, got '" + spec + "'");
    }
    const double from = std::stod(spec.substr(0, c1));
    const double to = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(spec.substr(c2 + 1));
    return make_grid(from, to, step);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << text;
}

struct GenArgs {
    int distance = 3;
    double p = 0.15;
    long long count = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::string out;
    std::string format = "bin";
};

json run_gen(const GenArgs& a) {
    CodeLayout layout = CodeLayout::build(a.distance);
    PureErrorTable table = PureErrorTable::build(layout);
    const std::size_t count =
        a.count > 0 ? static_cast<std::size_t>(a.count) : default_training_count(a.distance);
    Dataset data = generate_dataset(layout, table, a.p, count, a.seed, a.stream);
    if (a.format == "bin") {
        data.save_binary(a.out);
    } else {
        data.save_csv(a.out);
    }
    return {{"path", a.out},         {"format", a.format},
            {"distance", a.distance}, {"p", a.p},
            {"count", count},        {"seed", a.seed},
            {"stream", a.stream},    {"ped_table_hash", hash_to_hex(table.hash())},
            {"fnv1a64", hash_to_hex(hash_file(a.out))}};
}

struct TrainArgs {
    std::string role;
    int distance = 0;
    int hidden_n = 0;
    TrainConfig cfg;
    std::string data;
    std::string out;
};

json run_train(const TrainArgs& a) {
    Dataset data = Dataset::load_binary(a.data);
    const int d = data.distance();
    if (a.distance != 0 && a.distance != d) {
        throw std::runtime_error("--distance " + std::to_string(a.distance) +
                                 " does not match dataset distance " + std::to_string(d));
    }
    const HeadKind head =
        a.role == "classifier" ? HeadKind::kSingleSoftmax4 : HeadKind::kGroupedSoftmax4;
    const int n = a.hidden_n > 0 ? a.hidden_n : default_hidden_n(head, d);
    const int out_dim = head == HeadKind::kSingleSoftmax4 ? 4 : 4 * d * d;
    FFNNModel model = FFNNModel::init(d * d - 1, n * d, out_dim, head, a.cfg.seed);
    model.ped_table_hash = data.ped_table_hash();
    const TrainResult result = train(model, data, a.cfg);
    save_model(model, a.out);
    return {{"path", a.out},
            {"role", a.role},
            {"distance", d},
            {"hidden_n", n},
            {"hidden_dim", n * d},
            {"train_accuracy", result.train_accuracy},
            {"holdout_accuracy", result.holdout_accuracy},
            {"train_count", result.train_count},
            {"holdout_count", result.holdout_count},
            {"final_loss", result.epoch_loss.empty() ? 0.0 : result.epoch_loss.back()},
            {"fnv1a64", hash_to_hex(hash_file(a.out))}};
}

struct EvalArgs {
    std::vector<std::string> classifiers;
    std::vector<std::string> simples;
    std::string grid_spec = "0.03:0.3:0.01";
    long long trials = 0;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 1000;
    std::string out_dir;
};

json run_eval(const EvalArgs& a) {
    if (a.classifiers.size() != a.simples.size() || a.classifiers.empty()) {
        throw std::runtime_error("--classifier and --simple need one model each per distance");
    }
    fs::create_directories(a.out_dir);
    const std::vector<double> grid = parse_grid_spec(a.grid_spec);

    std::deque<FFNNModel> models;
    std::deque<CodeLayout> layouts;
    std::map<int, std::vector<CurvePoint>> curves;
    ThresholdReport report;
    json curves_json = json::object();
    for (std::size_t i = 0; i < a.classifiers.size(); ++i) {
        const FFNNModel& classifier = models.emplace_back(load_model(a.classifiers[i]));
        const FFNNModel& simple = models.emplace_back(load_model(a.simples[i]));
        const int d = distance_from_in_dim(classifier.in_dim);
        if (curves.count(d) != 0) {
            throw std::runtime_error("two model pairs share distance " + std::to_string(d));
        }
        layouts.push_back(CodeLayout::build(d));
        HighLevelDecoder decoder(simple, classifier, layouts.back());
        const long long trials = a.trials > 0 ? a.trials : default_trials_per_point(d);
        std::vector<CurvePoint> curve =
            sweep(decoder, grid, trials, a.seed, a.stream_base, env_threads());
        const std::string curve_path =
            (fs::path(a.out_dir) / ("curve_d" + std::to_string(d) + ".csv")).string();
        save_curve_csv(curve, curve_path,
                       {{"distance", std::to_string(d)},
                        {"classifier", hash_to_hex(hash_file(a.classifiers[i]))},
                        {"simple", hash_to_hex(hash_file(a.simples[i]))},
                        {"seed", std::to_string(a.seed)},
                        {"stream_base", std::to_string(a.stream_base)}});
        curves_json[std::to_string(d)] = curve_path;
        try {
            report.pseudo_thresholds[d] = pseudo_threshold(curve);
        } catch (const std::runtime_error&) {
            // Curve never crosses ler = p in range; omit the entry.
        }
        curves[d] = std::move(curve);
    }

    if (curves.size() >= 2) {
        ThresholdReport crossing = threshold(curves);
        crossing.pseudo_thresholds = report.pseudo_thresholds;
        report = crossing;
    } else {
        report.method = "pseudo-thresholds only (single distance)";
    }
    const std::string report_path = (fs::path(a.out_dir) / "threshold.json").string();
    save_threshold_report(report, report_path);

    json out = json::parse(threshold_report_to_json(report));
    out["curves"] = curves_json;
    out["report_path"] = report_path;
    return out;
}

struct DecodeArgs {
    std::string classifier;
    std::string simple;
    std::string syndrome;
};

json run_decode(const DecodeArgs& a) {
    const FFNNModel classifier = load_model(a.classifier);
    const FFNNModel simple = load_model(a.simple);
    const int d = distance_from_in_dim(classifier.in_dim);
    const CodeLayout layout = CodeLayout::build(d);
    if (a.syndrome.size() != static_cast<std::size_t>(layout.n_stab())) {
        throw std::runtime_error("syndrome must be " + std::to_string(layout.n_stab()) +
                                 " bits for distance " + std::to_string(d));
    }
    SyndromeVector s(layout.n_stab());
    for (std::size_t i = 0; i < a.syndrome.size(); ++i) {
        if (a.syndrome[i] != '0' && a.syndrome[i] != '1') {
            throw std::runtime_error("syndrome must be a 0/1 bit string");
        }
        s.set(i, a.syndrome[i] == '1');
    }
    HighLevelDecoder decoder(simple, classifier, layout);
    const auto [correction, cls] = decoder.decode(s);
    return {{"distance", d},
            {"correction_x", correction.x.to_hex()},
            {"correction_z", correction.z.to_hex()},
            {"class", to_string(cls)},
            {"syndrome_cleared", layout.syndrome(correction) == s}};
}

HwConfig resolve_hw(const std::string& hw_path, const FFNNModel& model, int d) {
    if (!hw_path.empty()) return load_hw_config(hw_path);
    const DecoderRole role = model.head_kind == HeadKind::kSingleSoftmax4
                                 ? DecoderRole::kClassifier
                                 : DecoderRole::kSimple;
    return hw_preset(role, d);
}

struct CimArgs {
    std::string model;
    std::string hw;
    std::string cryo = "none";
    std::string inject;
    std::string data;
    int seeds = 20;
    std::string out;
};

json mapping_json(const NetworkMapping& mapping) {
    json layers = json::array();
    for (const LayerMapping& l : mapping.layers) {
        layers.push_back({{"in_dim", l.in_dim},
                          {"out_dim", l.out_dim},
                          {"grid_rows", l.grid_rows},
                          {"grid_cols", l.grid_cols},
                          {"crossbars", l.crossbars()}});
    }
    return {{"layers", layers}, {"total_crossbars", mapping.total_crossbars()}};
}

json run_cim(const CimArgs& a) {
    const FFNNModel model = load_model(a.model);
    const int d = distance_from_in_dim(model.in_dim);
    const HwConfig cfg = resolve_hw(a.hw, model, d);
    const NetworkMapping mapping = map_network(model, cfg);
    CostReport report = estimate_energy_area(mapping, cfg);
    if (a.cryo != "none") report = cryo_adjust(report, a.cryo);

    json out = json::parse(cost_report_to_json(report));
    out["mapping"] = mapping_json(mapping);
    out["distance"] = d;

    if (!a.inject.empty()) {
        if (a.data.empty()) {
            throw std::runtime_error("--inject needs --data for the accuracy study");
        }
        if (a.seeds < 1) throw std::runtime_error("--seeds must be >= 1");
        NonIdealityParams params = load_nonideality(a.inject);
        Dataset data = Dataset::load_binary(a.data);
        if (data.ped_table_hash() != model.ped_table_hash) {
            throw std::runtime_error("dataset and model come from different code tables");
        }
        const FFNNModel base =
            model.quant.has_value() ? model : quantize_weights(model, cfg.weight_bits);
        const double clean = accuracy(base, data, 0, data.size());
        std::vector<double> accs;
        accs.reserve(a.seeds);
        double mean = 0.0;
        for (int k = 0; k < a.seeds; ++k) {
            NonIdealityParams run = params;
            run.seed = params.seed + static_cast<std::uint64_t>(k);
            const FFNNModel perturbed = inject_nonidealities(base, run);
            accs.push_back(accuracy(perturbed, data, 0, data.size()));
            mean += accs.back();
        }
        mean /= a.seeds;
        double var = 0.0;
        for (double acc : accs) var += (acc - mean) * (acc - mean);
        const double stddev = a.seeds > 1 ? std::sqrt(var / (a.seeds - 1)) : 0.0;
        out["injection"] = {{"clean_accuracy", clean},
                            {"mean_accuracy", mean},
                            {"stddev", stddev},
                            {"drop_pp", (clean - mean) * 100.0},
                            {"seeds", a.seeds},
                            {"per_seed", accs}};
    }
    return out;
}

struct CimSweepArgs {
    std::string model;
    std::string hw;
    std::string param;
    double from = 0.0;
    double to = 0.0;
    int points = 10;
    std::string out;
};

json run_cim_sweep(const CimSweepArgs& a) {
    if (a.points < 2) throw std::runtime_error("--points must be >= 2");
    const FFNNModel model = load_model(a.model);
    const int d = distance_from_in_dim(model.in_dim);
    const HwConfig base = resolve_hw(a.hw, model, d);

    std::string csv = "param,value,crossbar_compute,adc_dac,buffer,digital,interconnect,total_ns\n";
    for (int i = 0; i < a.points; ++i) {
        const double value = a.from + (a.to - a.from) * i / (a.points - 1);
        HwConfig cfg = base;
        if (a.param == "digital_frequency_mhz") {
            cfg.digital_freq_mhz = value;
        } else if (a.param == "buffer_bitwidth") {
            cfg.buffer_bitwidth = value;
        } else if (a.param == "inter_tile_bandwidth_gbps") {
            cfg.inter_tile_bw_gbps = value;
        } else if (a.param == "intra_tile_bandwidth_gbps") {
            cfg.intra_tile_bw_gbps = value;
        } else if (a.param == "num_adc_dac") {
            cfg.num_adc_dac = static_cast<int>(std::lround(value));
        } else {
            throw std::runtime_error("unknown sweep parameter '" + a.param + "'");
        }
        const CostReport report = estimate_latency(map_network(model, cfg), cfg);
        const double shown =
            a.param == "num_adc_dac" ? std::lround(value) : value;
        const StageBreakdown& st = report.latency_ns;
        csv += a.param + "," + format_shortest(shown) + "," +
               format_shortest(st.crossbar_compute) + "," + format_shortest(st.adc_dac) + "," +
               format_shortest(st.buffer) + "," + format_shortest(st.digital) + "," +
               format_shortest(st.interconnect) + "," + format_shortest(report.total_ns) + "\n";
    }
    emit(csv, a.out);
    return {{"param", a.param}, {"points", a.points}, {"out", a.out}};
}

struct ReproArgs {
    std::string manifest;
    std::string out_dir;
};

json run_repro(const ReproArgs& a) {
    std::ifstream in(a.manifest);
    if (!in) throw std::runtime_error("cannot open " + a.manifest);
    json spec = json::parse(in, nullptr, false);
    if (spec.is_discarded()) throw std::runtime_error("malformed JSON in " + a.manifest);

    const int d = spec.at("distance").get<int>();
    const double p_train = spec.value("p", 0.15);
    const std::uint64_t seed = spec.value("seed", std::uint64_t{1});
    const auto count = spec.value("count", static_cast<std::uint64_t>(default_training_count(d)));
    TrainConfig cfg;
    cfg.epochs = spec.value("epochs", cfg.epochs);
    cfg.learning_rate = spec.value("lr", cfg.learning_rate);
    cfg.batch_size = spec.value("batch", cfg.batch_size);
    const int classifier_n =
        spec.value("classifier_n", default_hidden_n(HeadKind::kSingleSoftmax4, d));
    const int simple_n = spec.value("simple_n", default_hidden_n(HeadKind::kGroupedSoftmax4, d));
    const std::string grid_spec = spec.value("p_grid", std::string("0.03:0.3:0.01"));
    const long long trials = spec.value("trials", default_trials_per_point(d));
    const std::string hw_path = spec.value("hw", std::string());
    const std::string cryo = spec.value("cryo", std::string("none"));

    fs::create_directories(a.out_dir);
    const auto path_in_dir = [&a](const std::string& name) {
        return (fs::path(a.out_dir) / name).string();
    };
    const std::string tag = "_d" + std::to_string(d);

    GenArgs gen;
    gen.distance = d;
    gen.p = p_train;
    gen.count = static_cast<long long>(count);
    gen.seed = seed;
    gen.out = path_in_dir("data" + tag + ".bin");
    const json gen_info = run_gen(gen);

    TrainArgs simple_train;
    simple_train.role = "simple";
    simple_train.hidden_n = simple_n;
    simple_train.cfg = cfg;
    simple_train.cfg.seed = seed + 1;
    simple_train.data = gen.out;
    simple_train.out = path_in_dir("simple" + tag + ".model");
    const json simple_info = run_train(simple_train);

    TrainArgs classifier_train = simple_train;
    classifier_train.role = "classifier";
    classifier_train.hidden_n = classifier_n;
    classifier_train.cfg.seed = seed + 2;
    classifier_train.out = path_in_dir("classifier" + tag + ".model");
    const json classifier_info = run_train(classifier_train);

    EvalArgs eval;
    eval.classifiers = {classifier_train.out};
    eval.simples = {simple_train.out};
    eval.grid_spec = grid_spec;
    eval.trials = trials;
    eval.seed = seed;
    eval.out_dir = a.out_dir;
    const json eval_info = run_eval(eval);

    json cim_info = json::object();
    CostReport reports[2];
    for (int r = 0; r < 2; ++r) {
        CimArgs cim;
        cim.model = r == 0 ? classifier_train.out : simple_train.out;
        cim.hw = hw_path;
        cim.cryo = cryo;
        const json info = run_cim(cim);
        const std::string role = r == 0 ? "classifier" : "simple";
        emit(info.dump(2) + "\n", path_in_dir("cim_" + role + tag + ".json"));
        cim_info[role] = info;
        reports[r].total_ns = info.at("total_ns").get<double>();
        reports[r].total_energy_nj = info.at("total_energy_nj").get<double>();
        reports[r].total_area_mm2 = info.at("total_area_mm2").get<double>();
    }

    ExperimentManifest manifest;
    manifest.distance = d;
    manifest.seed = seed;
    manifest.ped_table_hash = gen_info.at("ped_table_hash").get<std::string>();
    manifest.datasets.push_back({gen.out, gen_info.at("fnv1a64").get<std::string>()});
    manifest.models.push_back({simple_train.out, simple_info.at("fnv1a64").get<std::string>()});
    manifest.models.push_back(
        {classifier_train.out, classifier_info.at("fnv1a64").get<std::string>()});
    manifest.p_grid = grid_spec;
    manifest.trials = trials;
    manifest.hw_config = hw_path;
    save_manifest(manifest, path_in_dir("manifest.json"));

    const double latency = std::max(reports[0].total_ns, reports[1].total_ns);
    const double energy = reports[0].total_energy_nj + reports[1].total_energy_nj;
    json summary;
    summary["distance"] = d;
    if (eval_info.contains("pseudo_thresholds") &&
        eval_info["pseudo_thresholds"].contains(std::to_string(d))) {
        summary["pseudo_threshold"] = eval_info["pseudo_thresholds"][std::to_string(d)];
    }
    summary["decoder_latency_ns"] = latency;
    summary["area_mm2"] = reports[0].total_area_mm2 + reports[1].total_area_mm2;
    summary["energy_nj"] = energy;
    summary["power_w"] = latency > 0.0 ? energy / latency : 0.0;
    summary["simple_holdout_accuracy"] = simple_info.at("holdout_accuracy");
    summary["classifier_holdout_accuracy"] = classifier_info.at("holdout_accuracy");
    summary["cryo"] = cryo;
    emit(summary.dump(2) + "\n", path_in_dir("summary.json"));

    json out;
    out["summary"] = summary;
    out["manifest"] = path_in_dir("manifest.json");
    out["gen"] = gen_info;
    out["train"] = {{"simple", simple_info}, {"classifier", classifier_info}};
    out["eval"] = eval_info;
    return out;
}

std::string human_summary(const std::string& command, const json& out) {
    std::string text;
    if (command == "gen") {
        text = "wrote " + out.at("path").get<std::string>() + ": d=" +
               std::to_string(out.at("distance").get<int>()) + " count=" +
               std::to_string(out.at("count").get<std::size_t>()) + " hash=" +
               out.at("fnv1a64").get<std::string>();
    } else if (command == "train") {
        text = "wrote " + out.at("path").get<std::string>() +
               ": train_accuracy=" + format_shortest(out.at("train_accuracy").get<double>()) +
               " holdout_accuracy=" + format_shortest(out.at("holdout_accuracy").get<double>());
    } else if (command == "eval") {
        for (const auto& [d, p] : out.at("pseudo_thresholds").items()) {
            text += "pseudo-threshold d=" + d + ": " + format_shortest(p.get<double>()) + "\n";
        }
        if (out.contains("threshold") && out.at("crossings").size() > 0) {
            text += "threshold: " + format_shortest(out.at("threshold").get<double>()) + "\n";
        }
        text += "report: " + out.at("report_path").get<std::string>();
    } else if (command == "repro") {
        const json& s = out.at("summary");
        text = "d=" + std::to_string(s.at("distance").get<int>());
        if (s.contains("pseudo_threshold")) {
            text += " Pth=" + format_shortest(s.at("pseudo_threshold").get<double>());
        }
        text += " latency_ns=" + format_shortest(s.at("decoder_latency_ns").get<double>()) +
                " area_mm2=" + format_shortest(s.at("area_mm2").get<double>()) +
                " power_w=" + format_shortest(s.at("power_w").get<double>()) +
                " energy_nj=" + format_shortest(s.at("energy_nj").get<double>());
    }
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"surface-code high-level decoder toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable output");

    GenArgs gen;
    TrainArgs train_args;
    EvalArgs eval_args;
    DecodeArgs decode_args;
    CimArgs cim_args;
    CimSweepArgs cim_sweep_args;
    ReproArgs repro_args;
    int dump_distance = 3;
    std::string dump_out;

    CLI::App* layout_cmd = app.add_subcommand("layout", "dump code layout as JSON");
    layout_cmd->fallthrough();
    layout_cmd->add_option("--distance", dump_distance, "code distance")->required();
    layout_cmd->add_option("--out", dump_out, "output file (default stdout)");

    CLI::App* ped_cmd = app.add_subcommand("ped", "dump pure-error table as JSON");
    ped_cmd->fallthrough();
    ped_cmd->add_option("--distance", dump_distance, "code distance")->required();
    ped_cmd->add_option("--out", dump_out, "output file (default stdout)");

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a labeled training dataset");
    gen_cmd->fallthrough();
    gen_cmd->add_option("--distance", gen.distance, "code distance")->required();
    gen_cmd->add_option("--p", gen.p, "depolarizing rate");
    gen_cmd->add_option("--count", gen.count, "samples (0 = per-distance default)");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--stream", gen.stream, "RNG stream id");
    gen_cmd->add_option("--out", gen.out, "output path")->required();
    gen_cmd->add_option("--format", gen.format, "bin or csv")
        ->check(CLI::IsMember({"bin", "csv"}));

    CLI::App* train_cmd = app.add_subcommand("train", "train one decoder network");
    train_cmd->fallthrough();
    train_cmd->add_option("--role", train_args.role, "classifier or simple")
        ->required()
        ->check(CLI::IsMember({"classifier", "simple"}));
    train_cmd->add_option("--distance", train_args.distance,
                          "code distance (checked against the dataset)");
    train_cmd->add_option("--hidden-n", train_args.hidden_n,
                          "hidden width multiplier n (0 = tuned default)");
    train_cmd->add_option("--epochs", train_args.cfg.epochs, "training epochs");
    train_cmd->add_option("--lr", train_args.cfg.learning_rate, "Adam learning rate");
    train_cmd->add_option("--batch", train_args.cfg.batch_size, "minibatch size");
    train_cmd->add_option("--data", train_args.data, "training dataset (binary)")->required();
    train_cmd->add_option("--seed", train_args.cfg.seed, "init and shuffle seed");
    train_cmd->add_option("--out", train_args.out, "model output path")->required();

    CLI::App* eval_cmd = app.add_subcommand("eval", "sweep logical error rates");
    eval_cmd->fallthrough();
    eval_cmd->add_option("--classifier", eval_args.classifiers, "classifier model per distance")
        ->required();
    eval_cmd->add_option("--simple", eval_args.simples, "simple-decoder model per distance")
        ->required();
    eval_cmd->add_option("--p-grid", eval_args.grid_spec, "from:to:step physical error grid");
    eval_cmd->add_option("--trials", eval_args.trials,
                         "Monte Carlo trials per point (0 = per-distance default)");
    eval_cmd->add_option("--seed", eval_args.seed, "sampling seed");
    eval_cmd->add_option("--stream-base", eval_args.stream_base, "stream id of the first point");
    eval_cmd->add_option("--out-dir", eval_args.out_dir, "output directory")->required();

    CLI::App* decode_cmd = app.add_subcommand("decode", "decode one syndrome");
    decode_cmd->fallthrough();
    decode_cmd->add_option("--classifier", decode_args.classifier, "classifier model")->required();
    decode_cmd->add_option("--simple", decode_args.simple, "simple-decoder model")->required();
    decode_cmd->add_option("--syndrome", decode_args.syndrome, "bit string, stabilizer order")
        ->required();

    CLI::App* cim_cmd = app.add_subcommand("cim", "crossbar cost model and non-ideality study");
    cim_cmd->fallthrough();
    cim_cmd->add_option("--model", cim_args.model, "model file")->required();
    cim_cmd->add_option("--hw", cim_args.hw, "hardware config JSON (default role preset)");
    cim_cmd->add_option("--cryo", cim_args.cryo, "cryogenic mode")
        ->check(CLI::IsMember({"none", "4k", "4k0v4"}));
    cim_cmd->add_option("--inject", cim_args.inject, "non-ideality params JSON");
    cim_cmd->add_option("--data", cim_args.data, "held-out dataset for the injection study");
    cim_cmd->add_option("--seeds", cim_args.seeds, "injection seeds to average");
    cim_cmd->add_option("--out", cim_args.out, "output file (default stdout)");

    CLI::App* sweep_cmd = cim_cmd->add_subcommand("sweep", "sweep one hardware knob");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("--param", cim_sweep_args.param, "hardware parameter name")->required();
    sweep_cmd->add_option("--from", cim_sweep_args.from, "first value")->required();
    sweep_cmd->add_option("--to", cim_sweep_args.to, "last value")->required();
    sweep_cmd->add_option("--points", cim_sweep_args.points, "sweep points");
    sweep_cmd->add_option("--out", cim_sweep_args.out, "CSV output (default stdout)");

    CLI::App* repro_cmd = app.add_subcommand("repro", "run gen-train-eval-cim from a manifest");
    repro_cmd->fallthrough();
    repro_cmd->add_option("--manifest", repro_args.manifest, "experiment spec JSON")->required();
    repro_cmd->add_option("--out-dir", repro_args.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);

        json out;
        std::string command;
        if (layout_cmd->parsed()) {
            command = "layout";
            emit(layout_to_json(CodeLayout::build(dump_distance)), dump_out);
        } else if (ped_cmd->parsed()) {
            command = "ped";
            const CodeLayout layout = CodeLayout::build(dump_distance);
            emit(ped_table_to_json(layout, PureErrorTable::build(layout)), dump_out);
        } else if (gen_cmd->parsed()) {
            command = "gen";
            out = run_gen(gen);
        } else if (train_cmd->parsed()) {
            command = "train";
            out = run_train(train_args);
        } else if (eval_cmd->parsed()) {
            command = "eval";
            out = run_eval(eval_args);
        } else if (decode_cmd->parsed()) {
            command = "decode";
            out = run_decode(decode_args);
            std::cout << out.dump(2) << "\n";
            return 0;
        } else if (cim_cmd->parsed()) {
            if (sweep_cmd->parsed()) {
                command = "cim sweep";
                cim_sweep_args.model = cim_args.model;
                cim_sweep_args.hw = cim_args.hw;
                out = run_cim_sweep(cim_sweep_args);
                // The CSV owns stdout when --out is absent; otherwise report
                // where it went.
                if (json_out && !cim_sweep_args.out.empty()) {
                    std::cout << out.dump(2) << "\n";
                }
                return 0;
            } else {
                command = "cim";
                out = run_cim(cim_args);
                emit(out.dump(2) + "\n", cim_args.out);
                return 0;
            }
        } else if (repro_cmd->parsed()) {
            command = "repro";
            out = run_repro(repro_args);
        }

        if (command == "gen" || command == "train" || command == "eval" || command == "repro") {
            if (json_out) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << human_summary(command, out) << "\n";
            }
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << json{{"error", std::string(e.what())}}.dump() << "\n";
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << json{{"error", std::string(e.what())}}.dump() << "\n";
        return 1;
    }
}
