#include <doctest.h>

#include "grasshom/chain_complex.hpp"

using namespace grasshom;

namespace {

// Entry of a boundary matrix by generator subsets, 0 when absent.
int entry_of(const ChainComplex& c, int r, const std::vector<int>& row_subset,
             const std::vector<int>& col_subset) {
    int row = -1, col = -1;
    for (int j = 0; j < static_cast<int>(c.generators[r].size()); ++j)
        if (c.generators[r][j].subset == col_subset) col = j;
    for (int i = 0; i < static_cast<int>(c.generators[r - 1].size()); ++i)
        if (c.generators[r - 1][i].subset == row_subset) row = i;
    REQUIRE(row >= 0);
    REQUIRE(col >= 0);
    for (const SparseEntry& e : c.boundaries[r].entries)
        if (e.row == row && e.col == col) return e.value;
    return 0;
}

}  // namespace

TEST_CASE("convention names round-trip") {
    for (auto conv : {SignConvention::PaperLemma11, SignConvention::CorrectedAlternating,
                      SignConvention::ModTwo})
        CHECK(parse_convention(to_string(conv)) == conv);
    CHECK(!parse_convention("nope").has_value());
}

TEST_CASE("incidence coefficient examples") {
    const CriticalPoint p24({2, 4}, 4);
    CHECK(incidence_coefficient(SignConvention::PaperLemma11, p24, 2) == 2);
    CHECK(incidence_coefficient(SignConvention::PaperLemma11, p24, 1) == 0);

    const CriticalPoint p46({4, 6}, 6);
    CHECK(incidence_coefficient(SignConvention::CorrectedAlternating, p46, 2) == -2);

    CHECK(incidence_coefficient(SignConvention::ModTwo, p24, 2) == 0);
    CHECK_THROWS_AS(incidence_coefficient(SignConvention::PaperLemma11, CriticalPoint({1, 2}, 4), 1),
                    ParameterError);
}

TEST_CASE("boundary of G_{4,2} under the paper convention") {
    const ChainComplex c = build_complex(4, 2, SignConvention::PaperLemma11);
    // From O_{24} (degree 3): zero on O_{14}, 2 on O_{23}.
    CHECK(entry_of(c, 3, {1, 4}, {2, 4}) == 0);
    CHECK(entry_of(c, 3, {2, 3}, {2, 4}) == 2);
    // From O_{13} (degree 1): the zero map.
    CHECK(entry_of(c, 1, {1, 2}, {1, 3}) == 0);
}

TEST_CASE("mod2 boundaries are empty") {
    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= n; ++m) {
            const ChainComplex c = build_complex(n, m, SignConvention::ModTwo);
            for (const auto& b : c.boundaries) CHECK(b.entries.empty());
        }
}

TEST_CASE("matrix shapes and entry bounds") {
    for (auto conv : {SignConvention::PaperLemma11, SignConvention::CorrectedAlternating})
        for (int n = 2; n <= 8; ++n)
            for (int m = 1; m <= n; ++m) {
                const ChainComplex c = build_complex(n, m, conv);
                const auto census = index_census(n, m);
                REQUIRE(c.top_degree() == m * (n - m));
                for (int r = 0; r <= c.top_degree(); ++r) {
                    CHECK(c.boundaries[r].cols == census[r]);
                    CHECK(c.boundaries[r].rows == (r > 0 ? census[r - 1] : 0));
                    CHECK(static_cast<long long>(c.boundaries[r].entries.size()) <=
                          m * census[r]);
                    for (const SparseEntry& e : c.boundaries[r].entries) {
                        CHECK(e.value != 0);
                        CHECK(std::abs(e.value) == 2);      // even, |.| <= 2
                        if (conv == SignConvention::PaperLemma11) CHECK(e.value > 0);
                    }
                }
            }
}

TEST_CASE("paper and corrected conventions coincide for m = 1") {
    for (int n = 2; n <= 12; ++n) {
        const ChainComplex a = build_complex(n, 1, SignConvention::PaperLemma11);
        const ChainComplex b = build_complex(n, 1, SignConvention::CorrectedAlternating);
        for (int r = 0; r <= a.top_degree(); ++r) {
            REQUIRE(a.boundaries[r].entries.size() == b.boundaries[r].entries.size());
            for (size_t t = 0; t < a.boundaries[r].entries.size(); ++t) {
                CHECK(a.boundaries[r].entries[t].row == b.boundaries[r].entries[t].row);
                CHECK(a.boundaries[r].entries[t].col == b.boundaries[r].entries[t].col);
                CHECK(a.boundaries[r].entries[t].value == b.boundaries[r].entries[t].value);
            }
        }
    }
}

TEST_CASE("squared boundary residuals") {
    // Paper convention: m = 1 squares to zero.
    for (int n = 2; n <= 12; ++n) {
        const auto res = boundary_square_residual(build_complex(n, 1, SignConvention::PaperLemma11));
        CHECK(res.max_abs_entry == 0);
    }

    // Paper convention at (6,2): the known witness.
    const auto res62 = boundary_square_residual(build_complex(6, 2, SignConvention::PaperLemma11));
    CHECK(res62.max_abs_entry == 8);
    REQUIRE(res62.witness.has_value());
    CHECK(res62.witness->row_generator.subset == std::vector<int>{2, 5});
    CHECK(res62.witness->col_generator.subset == std::vector<int>{3, 6});

    // Corrected convention squares to zero, exhaustively.
    for (int n = 1; n <= 10; ++n)
        for (int m = 1; m <= n; ++m) {
            const auto res =
                boundary_square_residual(build_complex(n, m, SignConvention::CorrectedAlternating));
            CHECK(res.max_abs_entry == 0);
        }
}
