#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "scdec/dataset.hpp"
#include "scdec/pauli.hpp"
#include "scdec/surface_code.hpp"

namespace scdec {

// Output head: one softmax over 4 logical classes (classifier), or d^2
// independent softmax-4 groups, one per data qubit (simple decoder).
enum class HeadKind : std::uint8_t { kSingleSoftmax4 = 0, kGroupedSoftmax4 = 1 };

const char* to_string(HeadKind head);
HeadKind head_kind_from_string(std::string_view name);

struct QuantMeta {
    int bits = 0;
    double scale_w1 = 0.0;
    double scale_w2 = 0.0;
};

// Two-layer fully connected network, double precision:
// logits = W2 * relu(W1 * x + b1) + b2.
struct FFNNModel {
    int in_dim = 0;
    int hidden_dim = 0;
    int out_dim = 0;
    HeadKind head_kind = HeadKind::kSingleSoftmax4;
    std::uint64_t seed = 0;
    std::uint64_t ped_table_hash = 0;

    Eigen::MatrixXd w1;  // hidden_dim x in_dim
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2;  // out_dim x hidden_dim
    Eigen::VectorXd b2;

    std::optional<QuantMeta> quant;

    // He-style uniform init, biases zero, deterministic by seed.
    static FFNNModel init(int in_dim, int hidden_dim, int out_dim, HeadKind head,
                          std::uint64_t seed);

    Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;  // columns = samples

    // Argmax over the 4 class logits, ties to the lowest class index.
    LogicalClass predict_class(const SyndromeVector& s) const;

    // Per-qubit argmax over each 4-logit group, assembled in lattice order.
    PauliOp predict_correction(const SyndromeVector& s) const;
};

// Syndrome bits as a 0/1 feature vector.
Eigen::VectorXd syndrome_features(const SyndromeVector& s);

// Default hidden width multiplier (hidden_dim = n * distance).
int default_hidden_n(HeadKind head, int distance);

struct TrainConfig {
    int epochs = 30;
    double learning_rate = 0.001;
    int batch_size = 256;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
    double holdout_fraction = 0.1;  // tail of the dataset, excluded from training
};

struct TrainResult {
    std::vector<double> epoch_loss;  // mean per-sample loss per epoch
    double train_accuracy = 0.0;
    double holdout_accuracy = 0.0;
    std::size_t train_count = 0;
    std::size_t holdout_count = 0;
};

// Cross-entropy training with Adam. Labels come from the dataset: the class
// label for the single head, per-qubit PED states for the grouped head.
// Bit-reproducible for a fixed (model seed, dataset, config) on one platform.
TrainResult train(FFNNModel& model, const Dataset& data, const TrainConfig& cfg);

// Classifier head: class-label accuracy. Grouped head: exact-match rate
// against the PED correction, over samples [begin, end).
double accuracy(const FFNNModel& model, const Dataset& data, std::size_t begin, std::size_t end);

// Symmetric per-tensor quantization of W1/W2 to signed `bits` integers,
// dequantized back to doubles; biases stay full precision.
FFNNModel quantize_weights(const FFNNModel& model, int bits);

// Max relative error between analytic and central-difference gradients on one
// input. labels: 1 entry for the single head, out_dim/4 entries for grouped.
double grad_check(const FFNNModel& model, const Eigen::VectorXd& x,
                  const std::vector<std::uint8_t>& labels);

}  // namespace scdec
