#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace grasshom {

// Critical point of the height-style Morse function on the real Grassmannian
// G_{n,m}(R).  Each critical point sits at the origin of one coordinate chart
// and is named by the strictly increasing m-subset of column labels (1-based)
// whose minor is normalized to the identity there.
struct CriticalPoint {
    std::vector<int> subset;  // i_1 < i_2 < ... < i_m, labels in [1, n]
    int n = 0;
    int m = 0;
    int morse_index = 0;

    CriticalPoint() = default;
    CriticalPoint(std::vector<int> subset_, int n_);

    bool operator==(const CriticalPoint& other) const {
        return n == other.n && subset == other.subset;
    }
    bool operator!=(const CriticalPoint& other) const { return !(*this == other); }

    std::string label() const;  // "O_{i1 i2 ... im}"
};

// Index sum formula: morse index = sum_t i_t - m(m+1)/2.
int morse_index_of(const std::vector<int>& subset);
inline int morse_index(const CriticalPoint& p) { return p.morse_index; }

// One admissible index-lowering move: replace i_k by i_k - 1.
struct Lowering {
    CriticalPoint from;
    int slot = 0;  // k in [1, m]
    CriticalPoint to;
};

// All C(n, m) critical points in lexicographic subset order.
std::vector<CriticalPoint> enumerate_critical_points(int n, int m);

// Valid lowerings of p, ordered by slot.
std::vector<Lowering> lowerings(const CriticalPoint& p);

// Whether replacing i_k by i_k - 1 keeps the subset strictly increasing.
bool lowering_valid(const std::vector<int>& subset, int slot_k);

long long binomial(int n, int m);

// Counts of partitions of 0..rows*cols that fit in a rows x cols box,
// by explicit enumeration.  Coefficient list of the Gaussian binomial.
std::vector<long long> box_partition_counts(int rows, int cols);

// c_r = number of critical points of Morse index r, r = 0..m(n-m).
// Cross-checked against box_partition_counts; a mismatch throws.
std::vector<long long> index_census(int n, int m);

class ParameterError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace grasshom
