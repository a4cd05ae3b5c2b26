#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "grasshom/critical_points.hpp"

namespace grasshom {

// Strictly increasing positive weights 0 < lambda_1 < ... < lambda_n.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> lambdas);
    static Spectrum default_for(int n);  // lambda_i = i

    int size() const { return static_cast<int>(lambdas_.size()); }
    double lambda(int label) const { return lambdas_[label - 1]; }  // 1-based
    const std::vector<double>& values() const { return lambdas_; }

private:
    std::vector<double> lambdas_;
};

// A point of G_{n,m}(R) in the chart named by `chart`: the representing
// m x n matrix has the identity in the chart columns and `coords` in the
// complement columns (row alpha, complement position s).
struct ChartPoint {
    CriticalPoint chart;
    Eigen::MatrixXd coords;

    ChartPoint(CriticalPoint chart_, Eigen::MatrixXd coords_);

    static ChartPoint origin(const CriticalPoint& chart);
};

std::vector<int> complement_labels(const CriticalPoint& chart);

// Row-major linear index of coordinate (row alpha, complement column label).
int coordinate_index(const CriticalPoint& chart, int row, int column_label);

// The m x n representing matrix (identity block in chart columns).
Eigen::MatrixXd implied_matrix(const ChartPoint& p);

// f = det(Gram of rows) / det(Gram of weight-scaled rows); positive.
double morse_value(const ChartPoint& p, const Spectrum& s);

// Local metric matrix of size m(n-m), row-major coordinate order, with the
// closed-form inverse and the max-norm defect of their product.
struct MetricPair {
    Eigen::MatrixXd g;
    Eigen::MatrixXd g_inverse;
    double identity_defect = 0.0;
};

MetricPair metric_with_inverse(const ChartPoint& p);
Eigen::MatrixXd metric_matrix(const ChartPoint& p);

// Coordinate representation of the metric gradient of f (ascent direction),
// as an m x (n-m) matrix: inverse metric applied to the Euclidean partials.
Eigen::MatrixXd gradient(const ChartPoint& p, const Spectrum& s);

// Same vector assembled from the factored cofactor expression; the two
// routes agree to roundoff and are cross-checked in the verification suite.
Eigen::MatrixXd gradient_structured(const ChartPoint& p, const Spectrum& s);

// Closed-form Hessian diagonal at a chart origin, row-major, no zeros.
Eigen::VectorXd hessian_at_critical(const CriticalPoint& p0, const Spectrum& s);

// Unstable/stable coordinate pairs (row, column label) at a chart origin,
// row-major; the unstable list is the reference orientation basis.
std::vector<std::pair<int, int>> unstable_directions(const CriticalPoint& p0);
std::vector<std::pair<int, int>> stable_directions(const CriticalPoint& p0);

class ChartError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Re-express p in the chart of `target` (left-normalize the target minor).
// Throws ChartError when the target minor is singular.
ChartPoint chart_transition(const ChartPoint& p, const CriticalPoint& target);

// Exact derivative of the transition map at p, as a m(n-m) square matrix in
// row-major coordinate order (target coordinates by source coordinates).
Eigen::MatrixXd transition_jacobian(const ChartPoint& p, const CriticalPoint& target);

// Sign of det of the transition Jacobian restricted to ordered coordinate
// bases (row, column label) on each side.  Lists must have equal length.
int restricted_jacobian_det_sign(const ChartPoint& p, const CriticalPoint& target,
                                 const std::vector<std::pair<int, int>>& source_dirs,
                                 const std::vector<std::pair<int, int>>& target_dirs);

}  // namespace grasshom
