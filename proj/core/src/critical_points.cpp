#include "grasshom/critical_points.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace grasshom {

namespace {

void validate_subset(const std::vector<int>& subset, int n) {
    if (n < 1) throw ParameterError("ambient dimension n must be >= 1");
    if (subset.empty() || static_cast<int>(subset.size()) > n)
        throw ParameterError("plane dimension m must satisfy 1 <= m <= n");
    int prev = 0;
    for (int v : subset) {
        if (v <= prev || v > n)
            throw ParameterError("subset must be strictly increasing within [1, n]");
        prev = v;
    }
}

}  // namespace

CriticalPoint::CriticalPoint(std::vector<int> subset_, int n_)
    : subset(std::move(subset_)), n(n_), m(static_cast<int>(subset.size())) {
    validate_subset(subset, n);
    morse_index = morse_index_of(subset);
}

std::string CriticalPoint::label() const {
    std::ostringstream os;
    os << "O_{";
    for (size_t t = 0; t < subset.size(); ++t) {
        if (t) os << ' ';
        os << subset[t];
    }
    os << '}';
    return os.str();
}

int morse_index_of(const std::vector<int>& subset) {
    int m = static_cast<int>(subset.size());
    int sum = 0;
    for (int v : subset) sum += v;
    return sum - m * (m + 1) / 2;
}

std::vector<CriticalPoint> enumerate_critical_points(int n, int m) {
    if (n < 1 || m < 1 || m > n) throw ParameterError("need 1 <= m <= n");
    std::vector<CriticalPoint> out;
    std::vector<int> cur(m);
    for (int t = 0; t < m; ++t) cur[t] = t + 1;
    while (true) {
        out.emplace_back(cur, n);
        int t = m - 1;
        while (t >= 0 && cur[t] == n - m + t + 1) --t;
        if (t < 0) break;
        ++cur[t];
        for (int u = t + 1; u < m; ++u) cur[u] = cur[u - 1] + 1;
    }
    return out;
}

bool lowering_valid(const std::vector<int>& subset, int slot_k) {
    int k = slot_k - 1;
    if (k < 0 || k >= static_cast<int>(subset.size())) return false;
    int v = subset[k] - 1;
    if (v < 1) return false;
    if (k > 0 && v <= subset[k - 1]) return false;
    return true;
}

std::vector<Lowering> lowerings(const CriticalPoint& p) {
    std::vector<Lowering> out;
    for (int k = 1; k <= p.m; ++k) {
        if (!lowering_valid(p.subset, k)) continue;
        std::vector<int> t = p.subset;
        --t[k - 1];
        out.push_back(Lowering{p, k, CriticalPoint(std::move(t), p.n)});
    }
    return out;
}

long long binomial(int n, int m) {
    if (m < 0 || m > n) return 0;
    m = std::min(m, n - m);
    long long r = 1;
    for (int t = 1; t <= m; ++t) r = r * (n - m + t) / t;
    return r;
}

std::vector<long long> box_partition_counts(int rows, int cols) {
    std::vector<long long> counts(static_cast<size_t>(rows) * cols + 1, 0);
    std::vector<int> parts(rows, 0);
    // Enumerate lambda_1 >= lambda_2 >= ... >= lambda_rows >= 0, lambda_1 <= cols.
    std::function<void(int, int, int)> rec = [&](int row, int maxPart, int weight) {
        if (row == rows) {
            ++counts[weight];
            return;
        }
        for (int v = maxPart; v >= 0; --v) rec(row + 1, v, weight + v);
    };
    rec(0, cols, 0);
    return counts;
}

std::vector<long long> index_census(int n, int m) {
    if (n < 1 || m < 1 || m > n) throw ParameterError("need 1 <= m <= n");
    std::vector<long long> counts(static_cast<size_t>(m) * (n - m) + 1, 0);
    for (const CriticalPoint& p : enumerate_critical_points(n, m))
        ++counts[p.morse_index];
    const std::vector<long long> oracle = box_partition_counts(m, n - m);
    if (counts != oracle)
        throw std::logic_error("index census disagrees with box-partition counts");
    return counts;
}

}  // namespace grasshom
