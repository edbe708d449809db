#include <doctest.h>

#include <random>
#include <stdexcept>

#include "scdec/pure_error.hpp"

using namespace scdec;

namespace {

PauliOp random_pauli(std::size_t n, std::mt19937_64& rng) {
    PauliOp p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto bits = rng() & 3;
        p.x.set(i, bits & 1);
        p.z.set(i, bits & 2);
    }
    return p;
}

}  // namespace

TEST_CASE("right-inverse identity holds for d up to 9") {
    for (int d : {3, 5, 7, 9}) {
        const CodeLayout layout = CodeLayout::build(d);
        const PureErrorTable table = PureErrorTable::build(layout);
        const auto id = Gf2Matrix::identity(static_cast<std::size_t>(layout.n_stab_per_kind()));
        CHECK(layout.h_x().multiply(table.t_x()) == id);
        CHECK(layout.h_z().multiply(table.t_z()) == id);
    }
}

TEST_CASE("every d=3 syndrome decodes to a matching correction, exhaustively") {
    const CodeLayout layout = CodeLayout::build(3);
    const PureErrorTable table = PureErrorTable::build(layout);
    for (int bits = 0; bits < 256; ++bits) {
        SyndromeVector s(8);
        for (int i = 0; i < 8; ++i) s.set(i, (bits >> i) & 1);
        const PauliOp corr = table.decode(s);
        CHECK(layout.syndrome(corr) == s);
    }
    CHECK(table.decode(SyndromeVector(8)).is_identity());
    CHECK_THROWS_AS(table.decode(SyndromeVector(7)), std::invalid_argument);
}

TEST_CASE("table columns are pure errors firing a single syndrome bit") {
    for (int d : {3, 5}) {
        const CodeLayout layout = CodeLayout::build(d);
        const PureErrorTable table = PureErrorTable::build(layout);
        const std::size_t half = static_cast<std::size_t>(layout.n_stab_per_kind());
        for (std::size_t j = 0; j < half; ++j) {
            PauliOp ex(static_cast<std::size_t>(layout.n_data()));
            ex.x = table.t_x().col(j);
            SyndromeVector expect(static_cast<std::size_t>(layout.n_stab()));
            expect.set(j, true);
            CHECK(layout.syndrome(ex) == expect);

            PauliOp ez(static_cast<std::size_t>(layout.n_data()));
            ez.z = table.t_z().col(j);
            SyndromeVector expect_z(static_cast<std::size_t>(layout.n_stab()));
            expect_z.set(half + j, true);
            CHECK(layout.syndrome(ez) == expect_z);
        }
    }
}

TEST_CASE("decode is linear in the syndrome") {
    const CodeLayout layout = CodeLayout::build(5);
    const PureErrorTable table = PureErrorTable::build(layout);
    std::mt19937_64 rng(43);
    for (int t = 0; t < 50; ++t) {
        SyndromeVector s1(24), s2(24);
        for (int i = 0; i < 24; ++i) {
            s1.set(i, rng() & 1);
            s2.set(i, rng() & 1);
        }
        SyndromeVector sx = s1;
        sx ^= s2;
        CHECK(table.decode(sx) == compose(table.decode(s1), table.decode(s2)));
    }
}

TEST_CASE("building twice yields the identical table and hash") {
    for (int d : {3, 5}) {
        const CodeLayout layout = CodeLayout::build(d);
        const PureErrorTable a = PureErrorTable::build(layout);
        const PureErrorTable b = PureErrorTable::build(layout);
        CHECK(a.t_x() == b.t_x());
        CHECK(a.t_z() == b.t_z());
        CHECK(a.hash() == b.hash());
    }
    CHECK(PureErrorTable::build(CodeLayout::build(3)).hash() !=
          PureErrorTable::build(CodeLayout::build(5)).hash());
}

TEST_CASE("class_label basics") {
    const CodeLayout layout = CodeLayout::build(3);
    const PureErrorTable table = PureErrorTable::build(layout);
    CHECK(table.class_label(layout, PauliOp::identity(9)) == LogicalClass::kI);
    CHECK(table.class_label(layout, layout.logical_x()) == LogicalClass::kX);
    CHECK(table.class_label(layout, layout.logical_z()) == LogicalClass::kZ);
    for (StabKind kind : {StabKind::kX, StabKind::kZ}) {
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(table.class_label(layout, layout.stabilizer_pauli(kind, i)) == LogicalClass::kI);
        }
    }
}

TEST_CASE("class_label is invariant under stabilizer multiplication") {
    const CodeLayout layout = CodeLayout::build(3);
    const PureErrorTable table = PureErrorTable::build(layout);
    std::mt19937_64 rng(47);
    for (int t = 0; t < 8; ++t) {
        const PauliOp e = random_pauli(9, rng);
        const LogicalClass base = table.class_label(layout, e);
        for (int mask = 0; mask < 256; ++mask) {
            PauliOp g = PauliOp::identity(9);
            for (int i = 0; i < 4; ++i) {
                if (mask & (1 << i)) g = compose(g, layout.stabilizer_pauli(StabKind::kX, i));
                if (mask & (16 << i)) g = compose(g, layout.stabilizer_pauli(StabKind::kZ, i));
            }
            CHECK(table.class_label(layout, compose(e, g)) == base);
        }
    }
}

TEST_CASE("PED residual always clears the syndrome") {
    const CodeLayout layout = CodeLayout::build(5);
    const PureErrorTable table = PureErrorTable::build(layout);
    std::mt19937_64 rng(53);
    for (int t = 0; t < 200; ++t) {
        const PauliOp e = random_pauli(25, rng);
        const PauliOp residual = compose(e, table.decode(layout.syndrome(e)));
        CHECK_FALSE(layout.syndrome(residual).any());
    }
}

TEST_CASE("PED plus exact class label corrects every error") {
    const CodeLayout layout = CodeLayout::build(3);
    const PureErrorTable table = PureErrorTable::build(layout);
    std::mt19937_64 rng(59);
    for (int t = 0; t < 500; ++t) {
        const PauliOp e = random_pauli(9, rng);
        const PauliOp corr = table.decode(layout.syndrome(e));
        const PauliOp rep = layout.representative(table.class_label(layout, e));
        const PauliOp residual = compose(compose(e, corr), rep);
        CHECK(layout.logical_class(residual) == LogicalClass::kI);
    }
}
