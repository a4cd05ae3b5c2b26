#include "grasshom/chain_complex.hpp"

#include <algorithm>
#include <map>

namespace grasshom {

std::string to_string(SignConvention c) {
    switch (c) {
        case SignConvention::PaperLemma11: return "paper";
        case SignConvention::CorrectedAlternating: return "corrected";
        case SignConvention::ModTwo: return "mod2";
    }
    return "?";
}

std::optional<SignConvention> parse_convention(const std::string& s) {
    if (s == "paper") return SignConvention::PaperLemma11;
    if (s == "corrected") return SignConvention::CorrectedAlternating;
    if (s == "mod2") return SignConvention::ModTwo;
    return std::nullopt;
}

namespace {

inline int parity_sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

int incidence_coefficient(SignConvention convention, const CriticalPoint& p, int slot_k) {
    if (!lowering_valid(p.subset, slot_k))
        throw ParameterError("slot does not name a valid lowering");
    const int ik = p.subset[slot_k - 1];
    switch (convention) {
        case SignConvention::PaperLemma11:
            return 1 + parity_sign(ik - slot_k);
        case SignConvention::CorrectedAlternating: {
            int exp = 0;
            for (int t = 1; t < slot_k; ++t) exp += p.subset[t - 1] - t;
            return parity_sign(exp) * (1 + parity_sign(ik - p.m));
        }
        case SignConvention::ModTwo:
            return (1 + parity_sign(ik - slot_k)) % 2;
    }
    return 0;
}

ChainComplex build_complex(int n, int m, SignConvention convention) {
    ChainComplex c;
    c.n = n;
    c.m = m;
    c.convention = convention;

    const int top = m * (n - m);
    c.generators.assign(top + 1, {});
    for (CriticalPoint& p : enumerate_critical_points(n, m))
        c.generators[p.morse_index].push_back(std::move(p));

    // Position of each generator within its degree, keyed by subset.
    std::map<std::vector<int>, int> position;
    for (const auto& degree : c.generators)
        for (int j = 0; j < static_cast<int>(degree.size()); ++j)
            position[degree[j].subset] = j;

    c.boundaries.resize(top + 1);
    for (int r = 0; r <= top; ++r) {
        SparseIntMatrix& b = c.boundaries[r];
        b.rows = static_cast<int>(r > 0 ? c.generators[r - 1].size() : 0);
        b.cols = static_cast<int>(c.generators[r].size());
        if (r == 0) continue;
        for (int j = 0; j < b.cols; ++j) {
            const CriticalPoint& p = c.generators[r][j];
            for (const Lowering& low : lowerings(p)) {
                const int value = incidence_coefficient(convention, p, low.slot);
                if (value == 0) continue;
                b.entries.push_back(SparseEntry{position.at(low.to.subset), j, value});
            }
        }
        std::sort(b.entries.begin(), b.entries.end(), [](const SparseEntry& a, const SparseEntry& z) {
            return std::pair(a.col, a.row) < std::pair(z.col, z.row);
        });
    }
    return c;
}

BoundaryResidual boundary_square_residual(const ChainComplex& c) {
    BoundaryResidual res;
    for (int r = 1; r < static_cast<int>(c.boundaries.size()); ++r) {
        const SparseIntMatrix& inner = c.boundaries[r];      // C_r -> C_{r-1}
        const SparseIntMatrix& outer = c.boundaries[r - 1];  // C_{r-1} -> C_{r-2}
        if (r - 1 == 0 || inner.entries.empty() || outer.entries.empty()) continue;

        // outer rows grouped by their column (= inner's row index).
        std::vector<std::vector<std::pair<int, int>>> by_col(outer.cols);
        for (const SparseEntry& e : outer.entries)
            by_col[e.col].push_back({e.row, e.value});

        for (int j = 0; j < inner.cols; ++j) {
            std::map<int, Integer> acc;
            for (const SparseEntry& e : inner.entries) {
                if (e.col != j) continue;
                for (const auto& [row, value] : by_col[e.row])
                    acc[row] += Integer(e.value) * value;
            }
            for (const auto& [row, value] : acc) {
                Integer a = abs(value);
                if (a > res.max_abs_entry) {
                    res.max_abs_entry = a;
                    res.witness = BoundaryWitness{r - 1, c.generators[r - 2][row], c.generators[r][j]};
                }
            }
        }
    }
    return res;
}

}  // namespace grasshom
