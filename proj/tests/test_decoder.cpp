#include <doctest.h>

#include <cstdint>

#include "scdec/decoder.hpp"
#include "scdec/ffnn.hpp"
#include "scdec/noise.hpp"
#include "scdec/pure_error.hpp"
#include "scdec/surface_code.hpp"

using namespace scdec;

namespace {

struct Fixture {
    CodeLayout layout = CodeLayout::build(3);
    PureErrorTable table = PureErrorTable::build(layout);
    FFNNModel simple = FFNNModel::init(8, 15, 36, HeadKind::kGroupedSoftmax4, 1);
    FFNNModel classifier = FFNNModel::init(8, 20, 4, HeadKind::kSingleSoftmax4, 2);

    Fixture() {
        simple.ped_table_hash = table.hash();
        classifier.ped_table_hash = table.hash();
    }
};

}  // namespace

TEST_CASE("decoder construction validates roles, dims, and table provenance") {
    Fixture f;
    CHECK_NOTHROW(HighLevelDecoder(f.simple, f.classifier, f.layout));

    SUBCASE("swapped roles are rejected") {
        CHECK_THROWS_AS(HighLevelDecoder(f.classifier, f.simple, f.layout),
                        std::invalid_argument);
    }
    SUBCASE("distance mismatch is rejected") {
        const CodeLayout d5 = CodeLayout::build(5);
        CHECK_THROWS_AS(HighLevelDecoder(f.simple, f.classifier, d5), std::invalid_argument);
    }
    SUBCASE("grouped head must cover every data qubit") {
        FFNNModel narrow = FFNNModel::init(8, 15, 32, HeadKind::kGroupedSoftmax4, 1);
        narrow.ped_table_hash = f.table.hash();
        CHECK_THROWS_AS(HighLevelDecoder(narrow, f.classifier, f.layout),
                        std::invalid_argument);
    }
    SUBCASE("pure-error table mismatch is rejected") {
        FFNNModel stale = f.simple;
        stale.ped_table_hash ^= 1;
        CHECK_THROWS_AS(HighLevelDecoder(stale, f.classifier, f.layout), std::invalid_argument);
    }
}

TEST_CASE("decode returns exactly the two network predictions") {
    Fixture f;
    const HighLevelDecoder decoder(f.simple, f.classifier, f.layout);
    for (std::uint64_t trial = 0; trial < 32; ++trial) {
        const PauliOp e = sample_error(f.layout, {0.2, 77, 0}, trial);
        const SyndromeVector s = f.layout.syndrome(e);
        const auto [correction, cls] = decoder.decode(s);
        CHECK(correction == f.simple.predict_correction(s));
        CHECK(cls == f.classifier.predict_class(s));

        const DecodeOutcome direct = decoder.decode_and_judge(e);
        const DecodeOutcome replay = apply_and_judge(f.layout, e, correction, cls);
        CHECK(direct.success == replay.success);
        CHECK(direct.syndrome_cleared == replay.syndrome_cleared);
        CHECK(direct.correction == replay.correction);
    }
}

TEST_CASE("judging an exact PED correction with the exact class always succeeds") {
    for (int d : {3, 5}) {
        const CodeLayout layout = CodeLayout::build(d);
        const PureErrorTable table = PureErrorTable::build(layout);
        for (std::uint64_t trial = 0; trial < 200; ++trial) {
            const PauliOp e = sample_error(layout, {0.15, 5, 0}, trial);
            const PauliOp correction = table.decode(layout.syndrome(e));
            const LogicalClass cls = table.class_label(layout, e);
            const DecodeOutcome outcome = apply_and_judge(layout, e, correction, cls);
            CHECK(outcome.syndrome_cleared);
            CHECK(outcome.residual_class == LogicalClass::kI);
            CHECK(outcome.success);
        }
    }
}

TEST_CASE("judging reports the residual class left by a wrong class guess") {
    const CodeLayout layout = CodeLayout::build(3);
    const PureErrorTable table = PureErrorTable::build(layout);
    for (std::uint64_t trial = 0; trial < 64; ++trial) {
        const PauliOp e = sample_error(layout, {0.2, 6, 0}, trial);
        const PauliOp correction = table.decode(layout.syndrome(e));
        const LogicalClass truth = table.class_label(layout, e);
        for (int guess = 0; guess < 4; ++guess) {
            const auto cls = static_cast<LogicalClass>(guess);
            const DecodeOutcome outcome = apply_and_judge(layout, e, correction, cls);
            CHECK(outcome.syndrome_cleared);
            CHECK(outcome.residual_class == class_xor(truth, cls));
            CHECK(outcome.success == (cls == truth));
        }
    }
}

TEST_CASE("a correction that misses the syndrome is judged a failure") {
    const CodeLayout layout = CodeLayout::build(3);
    PauliOp e(9);
    e.x.set(4, true);  // center-qubit X fires interior stabilizers
    const PauliOp identity_correction(9);
    const DecodeOutcome outcome =
        apply_and_judge(layout, e, identity_correction, LogicalClass::kI);
    CHECK_FALSE(outcome.syndrome_cleared);
    CHECK_FALSE(outcome.success);
}

TEST_CASE("stabilizer and logical residuals are judged by coset") {
    const CodeLayout layout = CodeLayout::build(3);
    const PauliOp identity(9);

    const PauliOp stab = layout.stabilizer_pauli(StabKind::kX, 0);
    CHECK(apply_and_judge(layout, stab, identity, LogicalClass::kI).success);

    // A logical X error is only corrected by guessing class X.
    CHECK_FALSE(apply_and_judge(layout, layout.logical_x(), identity, LogicalClass::kI).success);
    CHECK(apply_and_judge(layout, layout.logical_x(), identity, LogicalClass::kX).success);
    CHECK(apply_and_judge(layout, layout.logical_z(), identity, LogicalClass::kZ).success);

    const PauliOp logical_y = compose(layout.logical_x(), layout.logical_z());
    CHECK(apply_and_judge(layout, logical_y, identity, LogicalClass::kY).success);
    CHECK_FALSE(apply_and_judge(layout, logical_y, identity, LogicalClass::kX).success);
}

TEST_CASE("judging validates operator sizes") {
    const CodeLayout layout = CodeLayout::build(3);
    CHECK_THROWS_AS(apply_and_judge(layout, PauliOp(25), PauliOp(9), LogicalClass::kI),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_and_judge(layout, PauliOp(9), PauliOp(25), LogicalClass::kI),
                    std::invalid_argument);
}
