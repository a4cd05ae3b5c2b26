#include <doctest.h>

#include <random>

#include "grasshom/smith.hpp"

using namespace grasshom;

namespace {

IntMatrix make(int rows, int cols, const std::vector<long>& values) {
    IntMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a.at(i, j) = values[i * cols + j];
    return a;
}

void check_decomposition(const IntMatrix& a) {
    const SmithDecomposition snf = smith_normal_form(a);

    // Reconstruction: U * A * V equals the diagonal.
    const IntMatrix lhs = snf.left_transform.multiplied_by(a).multiplied_by(snf.right_transform);
    for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < lhs.cols(); ++j) {
            const Integer expect = (i == j && i < static_cast<int>(snf.diagonal.size()))
                                       ? snf.diagonal[i]
                                       : Integer(0);
            CHECK(lhs.at(i, j) == expect);
        }

    // Unimodularity via exact determinants.
    CHECK(abs(determinant(snf.left_transform)) == 1);
    CHECK(abs(determinant(snf.right_transform)) == 1);

    // Divisibility chain, non-negativity, rank.
    int nonzero = 0;
    for (size_t t = 0; t < snf.diagonal.size(); ++t) {
        CHECK(snf.diagonal[t] >= 0);
        if (snf.diagonal[t] != 0) {
            ++nonzero;
            CHECK(nonzero == static_cast<int>(t) + 1);  // nonzeros come first
            if (t > 0 && snf.diagonal[t - 1] != 0)
                CHECK(snf.diagonal[t] % snf.diagonal[t - 1] == 0);
        }
    }
    CHECK(nonzero == snf.original_rank);
}

// Direct homology route: torsion from the invariant factors of the higher
// boundary, free rank from the two ranks.  Independent of the kernel-basis
// route used by homology_at_degree.
HomologyGroup direct_route(const ChainComplex& c, int r) {
    if (r < 0 || r > c.top_degree()) return {};
    const IntMatrix b_r = IntMatrix::from_sparse(c.boundaries[r]);
    const IntMatrix b_up = (r + 1 <= c.top_degree())
                               ? IntMatrix::from_sparse(c.boundaries[r + 1])
                               : IntMatrix(static_cast<int>(c.generators[r].size()), 0);
    const SmithDecomposition s_r = smith_normal_form(b_r);
    const SmithDecomposition s_up = smith_normal_form(b_up);
    HomologyGroup g;
    g.free_rank = static_cast<long long>(c.generators[r].size()) - s_r.original_rank -
                  s_up.original_rank;
    for (const Integer& d : s_up.diagonal)
        if (d > 1) g.torsion.push_back(d);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

HomologyGroup z() { return HomologyGroup{1, {}}; }
HomologyGroup z2() { return HomologyGroup{0, {2}}; }
HomologyGroup trivial() { return HomologyGroup{}; }

// Closed form for real projective space RP^{n-1}.
HomologyGroup projective_space_group(int n, int r) {
    const int dim = n - 1;
    if (r == 0) return z();
    if (r == dim) return (dim % 2 == 1) ? z() : trivial();
    if (r < 0 || r > dim) return trivial();
    return (r % 2 == 1) ? z2() : trivial();
}

}  // namespace

TEST_CASE("smith normal form worked examples") {
    CHECK(smith_normal_form(make(2, 2, {2, 0, 0, 0})).diagonal ==
          std::vector<Integer>{2, 0});
    CHECK(smith_normal_form(make(2, 2, {2, 4, 6, 8})).diagonal ==
          std::vector<Integer>{2, 4});
    CHECK(smith_normal_form(make(1, 1, {0})).diagonal == std::vector<Integer>{0});
    CHECK(smith_normal_form(IntMatrix(0, 3)).diagonal.empty());
    CHECK(smith_normal_form(IntMatrix(3, 0)).diagonal.empty());
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> dim(1, 8), entry(-9, 9);
    for (int trial = 0; trial < 1000; ++trial) {
        IntMatrix a(dim(rng), dim(rng));
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
        check_decomposition(a);
    }
}

TEST_CASE("smith normal form on boundary matrices") {
    for (int n = 2; n <= 8; ++n)
        for (int m = 1; m <= n; ++m)
            for (auto conv : {SignConvention::PaperLemma11, SignConvention::CorrectedAlternating}) {
                const ChainComplex c = build_complex(n, m, conv);
                for (const auto& b : c.boundaries)
                    check_decomposition(IntMatrix::from_sparse(b));
            }
}

TEST_CASE("integer kernel basis") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 7), entry(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix a(dim(rng), dim(rng));
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
        const IntMatrix k = integer_kernel_basis(a);
        const IntMatrix prod = a.multiplied_by(k);
        for (int i = 0; i < prod.rows(); ++i)
            for (int j = 0; j < prod.cols(); ++j) CHECK(prod.at(i, j) == 0);
        // Saturation: the kernel basis extends to a lattice basis.
        if (k.cols() > 0) {
            const SmithDecomposition snf = smith_normal_form(k);
            CHECK(snf.original_rank == k.cols());
            for (int t = 0; t < snf.original_rank; ++t) CHECK(snf.diagonal[t] == 1);
        }
    }
}

TEST_CASE("group rendering") {
    CHECK(render_group(trivial()) == "0");
    CHECK(render_group(z()) == "Z");
    CHECK(render_group(HomologyGroup{2, {}}) == "Z^2");
    CHECK(render_group(HomologyGroup{1, {2}}) == "Z \xE2\x8A\x95 Z_2");
    CHECK(render_group(HomologyGroup{0, {2, 4}}) == "Z_2 \xE2\x8A\x95 Z_4");
}

TEST_CASE("projective plane and 3-space") {
    const ChainComplex rp2 = build_complex(3, 1, SignConvention::PaperLemma11);
    CHECK(homology_at_degree(rp2, 0) == z());
    CHECK(homology_at_degree(rp2, 1) == z2());
    CHECK(homology_at_degree(rp2, 2) == trivial());
    CHECK(homology_at_degree(rp2, -1) == trivial());
    CHECK(homology_at_degree(rp2, 99) == trivial());

    const ChainComplex rp3 = build_complex(4, 1, SignConvention::PaperLemma11);
    CHECK(homology_at_degree(rp3, 0) == z());
    CHECK(homology_at_degree(rp3, 1) == z2());
    CHECK(homology_at_degree(rp3, 2) == trivial());
    CHECK(homology_at_degree(rp3, 3) == z());
}

TEST_CASE("projective space family") {
    for (int n = 2; n <= 12; ++n) {
        const ChainComplex c = build_complex(n, 1, SignConvention::PaperLemma11);
        const auto groups = homology_table(c);
        for (int r = 0; r <= c.top_degree(); ++r)
            CHECK(groups[r] == projective_space_group(n, r));
    }
}

TEST_CASE("homology refuses a non-complex") {
    const ChainComplex bad = build_complex(6, 2, SignConvention::PaperLemma11);
    CHECK_THROWS_AS(homology_at_degree(bad, 3), NotAChainComplex);
    try {
        homology_at_degree(bad, 3);
    } catch (const NotAChainComplex& e) {
        CHECK(e.residual.max_abs_entry == 8);
        REQUIRE(e.residual.witness.has_value());
        CHECK(e.residual.witness->row_generator.subset == std::vector<int>{2, 5});
    }
}

TEST_CASE("kernel-basis route agrees with the direct route") {
    for (int n = 2; n <= 7; ++n)
        for (int m = 1; m <= n; ++m) {
            const ChainComplex c = build_complex(n, m, SignConvention::CorrectedAlternating);
            const auto groups = homology_table(c);
            for (int r = 0; r <= c.top_degree(); ++r) CHECK(groups[r] == direct_route(c, r));
        }
}

TEST_CASE("euler characteristic and rank-nullity") {
    for (int n = 2; n <= 9; ++n)
        for (int m = 1; m <= n; ++m) {
            const ChainComplex c = build_complex(n, m, SignConvention::CorrectedAlternating);
            const auto census = index_census(n, m);
            const auto groups = homology_table(c);

            long long chi_census = 0, chi_homology = 0;
            for (int r = 0; r <= c.top_degree(); ++r) {
                const int sign = (r % 2 == 0) ? 1 : -1;
                chi_census += sign * census[r];
                chi_homology += sign * groups[r].free_rank;

                const IntMatrix b = IntMatrix::from_sparse(c.boundaries[r]);
                const SmithDecomposition snf = smith_normal_form(b);
                const IntMatrix kernel = integer_kernel_basis(b);
                CHECK(kernel.cols() + snf.original_rank == census[r]);
            }
            CHECK(chi_census == chi_homology);
        }
}

TEST_CASE("closed-form prediction readings") {
    // Degree 0: the raw-sum reading has no tuples, the shifted reading sees
    // the bottom cell once per slot.
    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= n; ++m) {
            CHECK(theorem4_prediction(n, m, 0, Theorem4Reading::RawSum) == trivial());
            const HomologyGroup shifted =
                theorem4_prediction(n, m, 0, Theorem4Reading::MorseIndexShift);
            CHECK(shifted.free_rank == 0);
            CHECK(shifted.torsion == std::vector<Integer>(m, 2));
        }

    CHECK(theorem4_prediction(4, 1, 1, Theorem4Reading::RawSum) == z2());
    CHECK(theorem4_prediction(4, 1, 1, Theorem4Reading::MorseIndexShift) == z());
}
