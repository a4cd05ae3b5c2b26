#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "grasshom/chain_complex.hpp"

namespace grasshom {

// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static IntMatrix identity(int n);
    static IntMatrix from_sparse(const SparseIntMatrix& s);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Integer& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Integer& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    IntMatrix multiplied_by(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Integer> data_;
};

// Fraction-free exact determinant (Bareiss).  Square input required.
Integer determinant(const IntMatrix& a);

// U * A * V = diag(d_1, ..., d_k, 0, ...) with d_1 | d_2 | ..., d_i > 0,
// U and V unimodular.
struct SmithDecomposition {
    std::vector<Integer> diagonal;
    IntMatrix left_transform;   // U, rows x rows
    IntMatrix right_transform;  // V, cols x cols
    int original_rank = 0;      // number of nonzero diagonal entries
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

// Columns form a basis of the integer kernel lattice of a (a saturated
// sublattice, so the basis extends to a basis of the ambient lattice).
IntMatrix integer_kernel_basis(const IntMatrix& a);

// Exact solution y of k * y = b; throws if no integer solution exists.
IntMatrix solve_exact(const IntMatrix& k, const IntMatrix& b);

// Finitely generated abelian group: Z^free_rank + sum of Z_d for d in torsion,
// torsion sorted as a divisibility chain with every entry >= 2.
struct HomologyGroup {
    long long free_rank = 0;
    std::vector<Integer> torsion;

    bool operator==(const HomologyGroup&) const = default;
};

// "Z", "Z^2 + Z_2", "0", ... with " (+) " as the direct-sum separator.
std::string render_group(const HomologyGroup& g);

class NotAChainComplex : public std::runtime_error {
public:
    NotAChainComplex(std::string message, BoundaryResidual residual)
        : std::runtime_error(std::move(message)), residual(std::move(residual)) {}
    BoundaryResidual residual;
};

// ker(d_r) / im(d_{r+1}) via Smith normal form of d_{r+1} expressed in an
// integer kernel basis of d_r.  Requires a squared boundary of zero.
HomologyGroup homology_at_degree(const ChainComplex& c, int r);

// All degrees 0..m(n-m); the d^2 = 0 precondition is checked once.
std::vector<HomologyGroup> homology_table(const ChainComplex& c);

// Closed-form prediction for the homology in a given degree.  The index set
// of the source formula is ambiguous; both documented readings are available
// and the result is only ever used for comparison reports.
enum class Theorem4Reading {
    RawSum,          // tuples j_1 < ... < j_m with j_1 + ... + j_m = r
    MorseIndexShift  // tuples with j_1 + ... + j_m - m(m+1)/2 = r
};

HomologyGroup theorem4_prediction(int n, int m, int r, Theorem4Reading reading);

}  // namespace grasshom
