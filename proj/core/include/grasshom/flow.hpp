#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "grasshom/geometry.hpp"

namespace grasshom {

// Step controls for the descent integrator.  Time is rescaled by the
// Hessian prefactor of the launch point so step sizes are geometry-free.
struct FlowConfig {
    double launch_offset = 1e-4;       // initial displacement along the unstable axis
    double base_step = 1e-3;           // RK4 step in rescaled time
    double min_step = 1e-12;
    double handoff_threshold = 10.0;   // chart change when any |coord| exceeds this
    double convergence_radius = 1e-8;  // done when max |coord| drops below this
    double max_time = 1000.0;          // 1e6 base steps
    int sample_stride = 100;
};

struct TransitionRecord {
    CriticalPoint from_chart;
    CriticalPoint to_chart;
    Eigen::MatrixXd coords_at_handoff;  // in from_chart coordinates
    double time = 0.0;
};

struct FlowResult {
    CriticalPoint source;
    std::optional<CriticalPoint> sink;  // absent on timeout
    int slot = 0;
    int direction_sign = +1;

    std::vector<double> sample_times;
    std::vector<ChartPoint> sample_points;
    std::vector<double> f_samples;
    double f_start = 0.0;
    double f_end = 0.0;

    double confinement_max = 0.0;  // largest |coordinate| off the active slot
    long long steps = 0;
    int transition_count = 0;
    std::vector<TransitionRecord> transitions;
};

class FlowError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrate the descent flow from `source` displaced by +/- launch_offset
// along the unstable coordinate of the given lowering slot.
FlowResult integrate_trajectory(const CriticalPoint& source, int slot_k, int sign,
                                const Spectrum& s, const FlowConfig& cfg = {});

// Number of integrated connecting trajectories from source to target, found
// by launching both signs along every admissible slot.  Requires the Morse
// indices to differ by exactly 1.
int count_trajectories(const CriticalPoint& source, const CriticalPoint& target,
                       const Spectrum& s, const FlowConfig& cfg = {});

// Orientation sign carried by a converged slot-lowering trajectory, under
// the reference orientations given by the row-major unstable bases:  the
// launch vector is deleted without reordering, coordinates shared by
// consecutive charts contribute the sign of their diagonal Jacobian entry,
// and the coordinate relabelled by the chart change is identified with its
// positional partner.
int trajectory_sign(const FlowResult& fr, const Spectrum& s);

// Diagnostic variant: sign of the determinant of the full chart-transition
// Jacobian restricted to the transported unstable frame.  Differs from
// trajectory_sign by (-1)^(m-k) on the positive launch.
int trajectory_frame_determinant_sign(const FlowResult& fr, const Spectrum& s);

}  // namespace grasshom
