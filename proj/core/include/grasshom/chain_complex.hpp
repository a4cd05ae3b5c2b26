#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "grasshom/critical_points.hpp"

namespace grasshom {

using Integer = mpz_class;

// How the signed trajectory count n(p, q) attached to each lowering is chosen.
//
//   PaperLemma11          coefficient 1 + (-1)^{i_k - k}, always >= 0.
//                         Not a chain complex for m >= 2 (see
//                         boundary_square_residual).
//   CorrectedAlternating  (-1)^{sum_{t<k}(i_t - t)} * (1 + (-1)^{i_k - m}).
//                         Squares to zero; equals PaperLemma11 when m = 1.
//   ModTwo                PaperLemma11 reduced mod 2, i.e. identically 0.
enum class SignConvention { PaperLemma11, CorrectedAlternating, ModTwo };

std::string to_string(SignConvention c);                       // "paper" etc.
std::optional<SignConvention> parse_convention(const std::string& s);

// Sparse integer matrix in coordinate form; entries sorted by (col, row).
struct SparseEntry {
    int row = 0;
    int col = 0;
    int value = 0;
};

struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseEntry> entries;
};

// The boundary-operator data of the critical-point chain complex:
// generators grouped by Morse index (lexicographic within each degree),
// one sparse matrix per degree mapping degree r to degree r-1.
struct ChainComplex {
    int n = 0;
    int m = 0;
    SignConvention convention = SignConvention::CorrectedAlternating;
    std::vector<std::vector<CriticalPoint>> generators;  // [r][j]
    std::vector<SparseIntMatrix> boundaries;             // [r]: C_r -> C_{r-1}

    int top_degree() const { return static_cast<int>(generators.size()) - 1; }
    long long generator_count(int r) const {
        if (r < 0 || r > top_degree()) return 0;
        return static_cast<long long>(generators[r].size());
    }
};

// Signed coefficient attached to the lowering of p at slot_k under the
// convention.  slot_k must name a valid lowering.
int incidence_coefficient(SignConvention convention, const CriticalPoint& p, int slot_k);

ChainComplex build_complex(int n, int m, SignConvention convention);

struct BoundaryWitness {
    int degree = 0;              // residual found in d_degree o d_{degree+1}
    CriticalPoint row_generator; // degree-1 side
    CriticalPoint col_generator; // degree+1 side
};

struct BoundaryResidual {
    Integer max_abs_entry = 0;
    std::optional<BoundaryWitness> witness;
};

// Max |entry| over all compositions d_r o d_{r+1}, plus one witness position.
BoundaryResidual boundary_square_residual(const ChainComplex& c);

}  // namespace grasshom
