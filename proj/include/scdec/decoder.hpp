#pragma once

#include "scdec/ffnn.hpp"
#include "scdec/pauli.hpp"
#include "scdec/surface_code.hpp"

namespace scdec {

struct DecodeOutcome {
    PauliOp correction;         // simple-decoder output composed with the class representative
    LogicalClass residual_class = LogicalClass::kI;  // meaningful only when syndrome_cleared
    bool syndrome_cleared = false;
    bool success = false;       // syndrome_cleared and residual_class == I
};

// Parallel high-level decoder: the two inferences are independent; neither
// consumes the other's output.
struct HighLevelDecoder {
    const FFNNModel* simple = nullptr;
    const FFNNModel* classifier = nullptr;
    const CodeLayout* layout = nullptr;

    HighLevelDecoder(const FFNNModel& simple_model, const FFNNModel& classifier_model,
                     const CodeLayout& code);

    std::pair<PauliOp, LogicalClass> decode(const SyndromeVector& s) const;
    DecodeOutcome decode_and_judge(const PauliOp& true_error) const;
};

// Applies correction composed with representative(cls) to the true error and judges the
// residual. A correction that leaves a nonzero syndrome counts as a failure
// (the NN simple decoder only approximates the PED).
DecodeOutcome apply_and_judge(const CodeLayout& layout, const PauliOp& true_error,
                              const PauliOp& correction, LogicalClass cls);

}  // namespace scdec
