#include "scdec/decoder.hpp"

#include <stdexcept>
#include <string>

namespace scdec {

HighLevelDecoder::HighLevelDecoder(const FFNNModel& simple_model,
                                   const FFNNModel& classifier_model, const CodeLayout& code)
    : simple(&simple_model), classifier(&classifier_model), layout(&code) {
    const int n = code.n_data();
    if (simple_model.head_kind != HeadKind::kGroupedSoftmax4 ||
        classifier_model.head_kind != HeadKind::kSingleSoftmax4) {
        throw std::invalid_argument("HighLevelDecoder: wrong head kinds");
    }
    if (simple_model.in_dim != n - 1 || classifier_model.in_dim != n - 1 ||
        simple_model.out_dim != 4 * n) {
        throw std::invalid_argument("HighLevelDecoder: model dims do not match the layout");
    }
    if (simple_model.ped_table_hash != classifier_model.ped_table_hash) {
        throw std::invalid_argument("HighLevelDecoder: models were trained against different "
                                    "pure-error tables");
    }
}

std::pair<PauliOp, LogicalClass> HighLevelDecoder::decode(const SyndromeVector& s) const {
    return {simple->predict_correction(s), classifier->predict_class(s)};
}

DecodeOutcome HighLevelDecoder::decode_and_judge(const PauliOp& true_error) const {
    const auto [correction, cls] = decode(layout->syndrome(true_error));
    return apply_and_judge(*layout, true_error, correction, cls);
}

DecodeOutcome apply_and_judge(const CodeLayout& layout, const PauliOp& true_error,
                              const PauliOp& correction, LogicalClass cls) {
    const std::size_t n = static_cast<std::size_t>(layout.n_data());
    if (true_error.n_qubits() != n || correction.n_qubits() != n) {
        throw std::invalid_argument("apply_and_judge: operator size does not match layout");
    }
    DecodeOutcome outcome;
    outcome.correction = compose(correction, layout.representative(cls));
    const PauliOp residual = compose(true_error, outcome.correction);
    outcome.syndrome_cleared = !layout.syndrome(residual).any();
    if (outcome.syndrome_cleared) {
        outcome.residual_class = layout.logical_class(residual);
        outcome.success = outcome.residual_class == LogicalClass::kI;
    }
    return outcome;
}

}  // namespace scdec
