#include "grasshom/flow.hpp"

#include <algorithm>
#include <cmath>

namespace grasshom {

namespace {

double time_scale(const CriticalPoint& source, const Spectrum& s) {
    double nu = 2.0;
    for (int v : source.subset) nu *= s.lambda(v) * s.lambda(v);
    return nu;
}

Eigen::MatrixXd descent_field(const CriticalPoint& chart, const Eigen::MatrixXd& z,
                              const Spectrum& s, double nu) {
    return -gradient(ChartPoint(chart, z), s) / nu;
}

// Chart whose minor has the largest |det|; keeps normalized coords small.
CriticalPoint best_chart(const Eigen::MatrixXd& mat, const std::vector<CriticalPoint>& charts) {
    const CriticalPoint* best = nullptr;
    double bestAbs = -1.0;
    for (const CriticalPoint& c : charts) {
        Eigen::MatrixXd minor(mat.rows(), c.m);
        for (int j = 0; j < c.m; ++j) minor.col(j) = mat.col(c.subset[j] - 1);
        const double a = std::abs(minor.determinant());
        if (a > bestAbs) { bestAbs = a; best = &c; }
    }
    return *best;
}

double off_slot_max(const Eigen::MatrixXd& z, int active_row, int active_col) {
    double out = 0.0;
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j)
            if (i != active_row || j != active_col) out = std::max(out, std::abs(z(i, j)));
    return out;
}

// The single subset label the transition swaps: from -> to replaces
// `added_complement` (new free column) by `removed_complement`.
struct SwapLabels {
    int leaves_subset = 0;  // label that left the subset = new complement column
    int enters_subset = 0;  // label that joined the subset = lost complement column
};

SwapLabels swap_labels(const CriticalPoint& from, const CriticalPoint& to) {
    SwapLabels out;
    int diff = 0;
    for (int v : from.subset)
        if (std::find(to.subset.begin(), to.subset.end(), v) == to.subset.end()) {
            out.leaves_subset = v;
            ++diff;
        }
    for (int v : to.subset)
        if (std::find(from.subset.begin(), from.subset.end(), v) == from.subset.end())
            out.enters_subset = v;
    if (diff != 1)
        throw FlowError("chart transition is not a single-column swap");
    return out;
}

int permutation_parity(const std::vector<std::pair<int, int>>& got,
                       const std::vector<std::pair<int, int>>& want) {
    if (got.size() != want.size()) throw FlowError("frame size mismatch at sink");
    std::vector<int> perm(got.size());
    for (size_t i = 0; i < got.size(); ++i) {
        const auto it = std::find(want.begin(), want.end(), got[i]);
        if (it == want.end()) throw FlowError("transported frame does not match sink basis");
        perm[i] = static_cast<int>(it - want.begin());
    }
    int sign = 1;
    std::vector<bool> seen(perm.size(), false);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = static_cast<int>(i); !seen[j]; j = perm[j]) { seen[j] = true; ++len; }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

CriticalPoint lowering_target(const CriticalPoint& source, int slot_k) {
    if (!lowering_valid(source.subset, slot_k))
        throw ParameterError("slot does not name a valid lowering");
    std::vector<int> t = source.subset;
    --t[slot_k - 1];
    return CriticalPoint(std::move(t), source.n);
}

}  // namespace

FlowResult integrate_trajectory(const CriticalPoint& source, int slot_k, int sign,
                                const Spectrum& s, const FlowConfig& cfg) {
    if (sign != 1 && sign != -1) throw ParameterError("sign must be +1 or -1");
    if (s.size() != source.n) throw ParameterError("spectrum size must equal n");
    const bool launched = cfg.launch_offset != 0.0;
    if (launched) (void)lowering_target(source, slot_k);  // validates the slot

    FlowResult fr;
    fr.source = source;
    fr.slot = slot_k;
    fr.direction_sign = sign;

    const int m = source.m, nm = source.n - source.m;
    const double nu = time_scale(source, s);
    const std::vector<CriticalPoint> charts = enumerate_critical_points(source.n, m);

    CriticalPoint chart = source;
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(m, nm);
    int active_row = slot_k - 1;
    int active_col = 0;
    if (launched) {
        const std::vector<int> comp = complement_labels(source);
        const int j0 = source.subset[slot_k - 1] - 1;
        active_col = static_cast<int>(std::find(comp.begin(), comp.end(), j0) - comp.begin());
        z(active_row, active_col) = sign * cfg.launch_offset;
    }

    double time = 0.0;
    double h = cfg.base_step;
    double f = morse_value(ChartPoint(chart, z), s);
    int accepted_since_halving = 0;

    fr.f_start = f;
    fr.sample_times.push_back(time);
    fr.sample_points.emplace_back(chart, z);
    fr.f_samples.push_back(f);

    long long stride_counter = 0;
    bool stalled = false;
    while (true) {
        if (z.cwiseAbs().maxCoeff() < cfg.convergence_radius) {
            fr.sink = chart;
            break;
        }
        if (time >= cfg.max_time || stalled) break;  // sink stays absent

        // One RK4 step, halving while f fails to decrease.
        Eigen::MatrixXd znext;
        double fnext;
        for (;;) {
            const Eigen::MatrixXd k1 = descent_field(chart, z, s, nu);
            const Eigen::MatrixXd k2 = descent_field(chart, z + 0.5 * h * k1, s, nu);
            const Eigen::MatrixXd k3 = descent_field(chart, z + 0.5 * h * k2, s, nu);
            const Eigen::MatrixXd k4 = descent_field(chart, z + h * k3, s, nu);
            znext = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!znext.allFinite()) throw FlowError("non-finite state during integration");
            fnext = morse_value(ChartPoint(chart, znext), s);
            if (fnext <= f + 1e-12) break;
            h *= 0.5;
            accepted_since_halving = 0;
            if (h < cfg.min_step) { stalled = true; break; }
        }
        if (stalled) continue;
        z = std::move(znext);
        f = fnext;
        time += h;
        ++fr.steps;
        if (++accepted_since_halving >= 50 && h < cfg.base_step) {
            h = std::min(cfg.base_step, 2.0 * h);
            accepted_since_halving = 0;
        }

        fr.confinement_max = std::max(fr.confinement_max, off_slot_max(z, active_row, active_col));

        if (++stride_counter % cfg.sample_stride == 0) {
            fr.sample_times.push_back(time);
            fr.sample_points.emplace_back(chart, z);
            fr.f_samples.push_back(f);
        }

        if (z.cwiseAbs().maxCoeff() > cfg.handoff_threshold) {
            const ChartPoint here(chart, z);
            const CriticalPoint next = best_chart(implied_matrix(here), charts);
            if (next != chart) {
                fr.transitions.push_back(TransitionRecord{chart, next, z, time});
                const ChartPoint moved = chart_transition(here, next);
                chart = next;
                z = moved.coords;
                ++fr.transition_count;
                int r = 0, c = 0;
                z.cwiseAbs().maxCoeff(&r, &c);
                active_row = r;
                active_col = c;
                fr.sample_times.push_back(time);
                fr.sample_points.emplace_back(chart, z);
                fr.f_samples.push_back(morse_value(ChartPoint(chart, z), s));
            }
        }
    }

    if (fr.sample_times.back() != time) {
        fr.sample_times.push_back(time);
        fr.sample_points.emplace_back(chart, z);
        fr.f_samples.push_back(f);
    }
    fr.f_end = fr.f_samples.back();
    return fr;
}

int count_trajectories(const CriticalPoint& source, const CriticalPoint& target,
                       const Spectrum& s, const FlowConfig& cfg) {
    if (source.n != target.n || source.m != target.m)
        throw ParameterError("critical points must live on the same Grassmannian");
    if (source.morse_index - target.morse_index != 1)
        throw ParameterError("count_trajectories needs an index gap of exactly 1");
    int count = 0;
    for (const Lowering& low : lowerings(source))
        for (int sign : {+1, -1}) {
            const FlowResult fr = integrate_trajectory(source, low.slot, sign, s, cfg);
            if (fr.sink && *fr.sink == target) ++count;
        }
    return count;
}

namespace {

void require_converged_lowering(const FlowResult& fr) {
    if (!fr.sink) throw ParameterError("trajectory did not converge");
    const CriticalPoint expected = lowering_target(fr.source, fr.slot);
    if (*fr.sink != expected)
        throw ParameterError("sink is not the slot lowering target");
}

}  // namespace

int trajectory_sign(const FlowResult& fr, const Spectrum& s) {
    (void)s;  // transport depends only on the chart changes
    require_converged_lowering(fr);

    // Deletion-order complement frame at the source.
    const int j0 = fr.source.subset[fr.slot - 1] - 1;
    std::vector<std::pair<int, int>> frame;
    for (const auto& dir : unstable_directions(fr.source))
        if (dir != std::pair{fr.slot, j0}) frame.push_back(dir);

    int sign = fr.direction_sign;
    for (const TransitionRecord& tr : fr.transitions) {
        const ChartPoint at(tr.from_chart, tr.coords_at_handoff);
        const Eigen::MatrixXd jac = transition_jacobian(at, tr.to_chart);
        const SwapLabels swap = swap_labels(tr.from_chart, tr.to_chart);
        for (auto& [row, label] : frame) {
            if (label == swap.enters_subset) {
                label = swap.leaves_subset;  // positional partner, coefficient +1
                continue;
            }
            const double entry = jac(coordinate_index(tr.to_chart, row, label),
                                     coordinate_index(tr.from_chart, row, label));
            if (entry == 0.0) throw FlowError("vanishing diagonal transport coefficient");
            if (entry < 0.0) sign = -sign;
        }
    }
    sign *= permutation_parity(frame, unstable_directions(*fr.sink));
    return sign;
}

int trajectory_frame_determinant_sign(const FlowResult& fr, const Spectrum& s) {
    (void)s;
    require_converged_lowering(fr);

    const int m = fr.source.m, nm = fr.source.n - fr.source.m, d = m * nm;
    const int j0 = fr.source.subset[fr.slot - 1] - 1;
    std::vector<std::pair<int, int>> start;
    for (const auto& dir : unstable_directions(fr.source))
        if (dir != std::pair{fr.slot, j0}) start.push_back(dir);

    Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(d, static_cast<int>(start.size()));
    for (int j = 0; j < frame.cols(); ++j)
        frame(coordinate_index(fr.source, start[j].first, start[j].second), j) = 1.0;

    for (const TransitionRecord& tr : fr.transitions) {
        const ChartPoint at(tr.from_chart, tr.coords_at_handoff);
        frame = transition_jacobian(at, tr.to_chart) * frame;
    }

    const auto sink_dirs = unstable_directions(*fr.sink);
    if (static_cast<int>(sink_dirs.size()) != frame.cols())
        throw FlowError("frame size mismatch at sink");
    if (frame.cols() == 0) return fr.direction_sign;
    Eigen::MatrixXd restricted(frame.cols(), frame.cols());
    for (int i = 0; i < restricted.rows(); ++i)
        restricted.row(i) = frame.row(coordinate_index(*fr.sink, sink_dirs[i].first, sink_dirs[i].second));
    const double det = restricted.determinant();
    if (det == 0.0) throw FlowError("transported frame is degenerate");
    return fr.direction_sign * (det > 0 ? 1 : -1);
}

}  // namespace grasshom
