#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grasshom/reports.hpp"

namespace grasshom {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckLine> lines;

    bool all_pass() const;
    void add(std::string name, bool pass, std::string detail = {});
    std::string to_string() const;
};

// Squared-boundary residuals over the (n, m) grid.  Under corrected/mod2
// every residual must vanish; under the paper convention only m = 1 rows
// are required to vanish and the rest are reported informationally.
VerifyReport verify_boundary_grid(int max_n, SignConvention convention);

// Gradient/Hessian/metric checks at every critical point of G_{n,m} plus
// seeded random-point checks of the metric and both gradient routes.
VerifyReport verify_geometry(int n, int m, const Spectrum& s, std::uint64_t seed);

struct FlowVerification {
    VerifyReport report;
    std::vector<FlowPairRecord> pairs;
};

// Trajectory counting, monotonicity, confinement and sign extraction for
// every lowering pair of G_{n,m}, plus the linearization check at origins.
FlowVerification verify_flow(int n, int m, const Spectrum& s, const FlowConfig& cfg = {});

// Second-order central differences of the Morse function at a chart origin,
// evaluated in extended precision.  Oracle for the closed-form Hessian.
Eigen::MatrixXd finite_difference_hessian(const CriticalPoint& chart_origin, const Spectrum& s,
                                          double step = 1e-4);

// First-order central differences of the Morse function at p.
Eigen::MatrixXd finite_difference_gradient(const ChartPoint& p, const Spectrum& s,
                                           double step = 1e-6);

}  // namespace grasshom
