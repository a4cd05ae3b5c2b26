#include "grasshom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace grasshom {

bool VerifyReport::all_pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

void VerifyReport::add(std::string name, bool pass, std::string detail) {
    lines.push_back(CheckLine{std::move(name), pass, std::move(detail)});
}

std::string VerifyReport::to_string() const {
    std::ostringstream os;
    for (const CheckLine& l : lines) {
        os << (l.pass ? "[PASS] " : "[FAIL] ") << l.name;
        if (!l.detail.empty()) os << ": " << l.detail;
        os << "\n";
    }
    return os.str();
}

namespace {

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

}  // namespace

VerifyReport verify_boundary_grid(int max_n, SignConvention convention) {
    VerifyReport rep;
    for (int n = 1; n <= max_n; ++n)
        for (int m = 1; m <= n; ++m) {
            const BoundaryResidual res = boundary_square_residual(build_complex(n, m, convention));
            std::ostringstream name, detail;
            name << "d^2 residual (" << n << "," << m << ") " << to_string(convention);
            detail << "max |entry| = " << res.max_abs_entry.get_str();
            if (res.witness)
                detail << " at (" << res.witness->row_generator.label() << ", "
                       << res.witness->col_generator.label() << ")";
            const bool must_vanish = (convention != SignConvention::PaperLemma11) || m == 1;
            rep.add(name.str(), !must_vanish || res.max_abs_entry == 0, detail.str());
        }
    return rep;
}

namespace {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

long double morse_value_extended(const CriticalPoint& chart, const LongMatrix& coords,
                                 const Spectrum& s) {
    const int n = chart.n, m = chart.m;
    LongMatrix mat = LongMatrix::Zero(m, n);
    for (int a = 0; a < m; ++a) mat(a, chart.subset[a] - 1) = 1.0L;
    const std::vector<int> comp = complement_labels(chart);
    for (int t = 0; t < n - m; ++t) mat.col(comp[t] - 1) = coords.col(t);
    LongMatrix scaled = mat;
    for (int c = 0; c < n; ++c) scaled.col(c) /= static_cast<long double>(s.lambda(c + 1));
    const long double num = (mat * mat.transpose()).determinant();
    const long double den = (scaled * scaled.transpose()).determinant();
    return num / den;
}

}  // namespace

Eigen::MatrixXd finite_difference_hessian(const CriticalPoint& chart_origin, const Spectrum& s,
                                          double step) {
    const int m = chart_origin.m, nm = chart_origin.n - chart_origin.m, d = m * nm;
    const long double h = step;
    Eigen::MatrixXd out(d, d);
    auto eval = [&](int a, long double da, int b, long double db) {
        LongMatrix z = LongMatrix::Zero(m, nm);
        z(a / nm, a % nm) += da;
        z(b / nm, b % nm) += db;
        return morse_value_extended(chart_origin, z, s);
    };
    const long double f0 = eval(0, 0.0L, 0, 0.0L);
    for (int a = 0; a < d; ++a) {
        out(a, a) = static_cast<double>((eval(a, h, a, 0.0L) - 2.0L * f0 + eval(a, -h, a, 0.0L)) / (h * h));
        for (int b = a + 1; b < d; ++b) {
            const long double v = (eval(a, h, b, h) - eval(a, h, b, -h) - eval(a, -h, b, h) +
                                   eval(a, -h, b, -h)) /
                                  (4.0L * h * h);
            out(a, b) = out(b, a) = static_cast<double>(v);
        }
    }
    return out;
}

Eigen::MatrixXd finite_difference_gradient(const ChartPoint& p, const Spectrum& s, double step) {
    Eigen::MatrixXd out(p.coords.rows(), p.coords.cols());
    for (int i = 0; i < p.coords.rows(); ++i)
        for (int j = 0; j < p.coords.cols(); ++j) {
            Eigen::MatrixXd zp = p.coords, zm = p.coords;
            zp(i, j) += step;
            zm(i, j) -= step;
            out(i, j) = (morse_value(ChartPoint(p.chart, zp), s) -
                         morse_value(ChartPoint(p.chart, zm), s)) /
                        (2.0 * step);
        }
    return out;
}

VerifyReport verify_geometry(int n, int m, const Spectrum& s, std::uint64_t seed) {
    VerifyReport rep;
    const int nm = n - m, d = m * nm;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (const CriticalPoint& p : enumerate_critical_points(n, m)) {
        const ChartPoint origin = ChartPoint::origin(p);

        const double gnorm = gradient(origin, s).cwiseAbs().maxCoeff();
        rep.add("gradient vanishes at " + p.label(), gnorm < 1e-10,
                "max |entry| = " + sci(gnorm));

        const MetricPair metric = metric_with_inverse(origin);
        const double iddef =
            (metric.g - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
        rep.add("metric is identity at " + p.label(), iddef < 1e-10,
                "max |G - I| = " + sci(iddef));

        const Eigen::VectorXd closed = hessian_at_critical(p, s);
        const Eigen::MatrixXd fd = finite_difference_hessian(p, s);
        double rel = 0.0, offdiag = 0.0;
        for (int a = 0; a < d; ++a) {
            rel = std::max(rel, std::abs(fd(a, a) - closed(a)) / std::abs(closed(a)));
            for (int b = 0; b < d; ++b)
                if (a != b) offdiag = std::max(offdiag, std::abs(fd(a, b)));
        }
        std::ostringstream hessdetail;
        hessdetail << "diag (";
        for (int a = 0; a < d; ++a) hessdetail << (a ? ", " : "") << closed(a);
        hessdetail << "), max rel err = " << sci(rel);
        rep.add("Hessian diagonal matches finite differences at " + p.label(), rel < 1e-6,
                hessdetail.str());
        rep.add("Hessian off-diagonal vanishes at " + p.label(), offdiag < 1e-6,
                "max |entry| = " + sci(offdiag));

        const long long negatives = (closed.array() < 0.0).count();
        rep.add("negative eigenvalue count is the Morse index at " + p.label(),
                negatives == p.morse_index,
                std::to_string(negatives) + " vs " + std::to_string(p.morse_index));
    }

    // Sampled checks away from the origins.
    double metric_sym = 0.0, metric_min_eig = 1e300, inverse_defect = 0.0;
    double grad_fd_rel = 0.0, route_rel = 0.0;
    const std::vector<CriticalPoint> charts = enumerate_critical_points(n, m);
    for (int trial = 0; trial < 100; ++trial) {
        const CriticalPoint& chart = charts[trial % charts.size()];
        Eigen::MatrixXd z(m, nm);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < nm; ++j) z(i, j) = unit(rng);
        const ChartPoint p(chart, z);

        const MetricPair metric = metric_with_inverse(p);
        metric_sym = std::max(metric_sym,
                              (metric.g - metric.g.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(metric.g);
        metric_min_eig = std::min(metric_min_eig, eig.eigenvalues().minCoeff());
        inverse_defect = std::max(inverse_defect, metric.identity_defect);

        const Eigen::MatrixXd grad = gradient(p, s);
        route_rel = std::max(route_rel, (grad - gradient_structured(p, s)).cwiseAbs().maxCoeff() /
                                            std::max(grad.cwiseAbs().maxCoeff(), 1e-30));

        Eigen::VectorXd gv(d);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < nm; ++j) gv(i * nm + j) = grad(i, j);
        Eigen::VectorXd lowered = metric.g * gv;
        const Eigen::MatrixXd fd = finite_difference_gradient(p, s);
        double scale = std::max(fd.cwiseAbs().maxCoeff(), 1e-30);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < nm; ++j)
                grad_fd_rel = std::max(grad_fd_rel,
                                       std::abs(lowered(i * nm + j) - fd(i, j)) / scale);
    }
    rep.add("metric symmetric at sampled points", metric_sym < 1e-12,
            "max asymmetry = " + sci(metric_sym));
    rep.add("metric positive definite at sampled points", metric_min_eig > 0.0,
            "min eigenvalue = " + sci(metric_min_eig));
    rep.add("closed-form metric inverse at sampled points", inverse_defect < 1e-10,
            "max |G*Ginv - I| = " + sci(inverse_defect));
    rep.add("metric gradient matches finite differences", grad_fd_rel < 1e-5,
            "max rel err = " + sci(grad_fd_rel));
    rep.add("factored and generic gradient routes agree", route_rel < 1e-8,
            "max rel err = " + sci(route_rel));
    return rep;
}

FlowVerification verify_flow(int n, int m, const Spectrum& s, const FlowConfig& cfg) {
    FlowVerification out;
    VerifyReport& rep = out.report;

    for (const CriticalPoint& p : enumerate_critical_points(n, m)) {
        // Linearization of the descent field at the origin vs. the Hessian.
        const Eigen::VectorXd hess = hessian_at_critical(p, s);
        const int nm = n - m, d = m * nm;
        double lin_rel = 0.0, lin_off = 0.0;
        const double h = 1e-4;
        for (int j = 0; j < d; ++j) {
            Eigen::MatrixXd zp = Eigen::MatrixXd::Zero(m, nm), zm = zp;
            zp(j / nm, j % nm) = h;
            zm(j / nm, j % nm) = -h;
            const Eigen::MatrixXd col =
                (-gradient(ChartPoint(p, zp), s) + gradient(ChartPoint(p, zm), s)) / (2.0 * h);
            for (int i = 0; i < d; ++i) {
                const double v = col(i / nm, i % nm);
                if (i == j) lin_rel = std::max(lin_rel, std::abs(v + hess(j)) / std::abs(hess(j)));
                else lin_off = std::max(lin_off, std::abs(v) / std::abs(hess(j)));
            }
        }
        rep.add("descent linearization matches -Hessian at " + p.label(),
                lin_rel < 1e-6 && lin_off < 1e-6,
                "diag rel = " + sci(lin_rel) + ", offdiag rel = " + sci(lin_off));

        for (const Lowering& low : lowerings(p)) {
            int signed_sum = 0, honest_sum = 0;
            for (int sign : {+1, -1}) {
                FlowPairRecord rec;
                rec.result = integrate_trajectory(p, low.slot, sign, s, cfg);
                const FlowResult& fr = rec.result;
                const std::string tag = p.label() + " slot " + std::to_string(low.slot) +
                                        (sign > 0 ? " phi+" : " phi-");

                rep.add("sink is the slot target for " + tag,
                        fr.sink.has_value() && *fr.sink == low.to,
                        fr.sink ? fr.sink->label() : "timeout");

                bool monotone = true;
                for (size_t t = 1; t < fr.f_samples.size(); ++t)
                    if (fr.f_samples[t] > fr.f_samples[t - 1] + 1e-12) monotone = false;
                rep.add("f decreases along " + tag, monotone && fr.f_end < fr.f_start,
                        "f: " + std::to_string(fr.f_start) + " -> " + std::to_string(fr.f_end));

                rep.add("confinement along " + tag, fr.confinement_max < 1e-8,
                        "max off-slot |coord| = " + sci(fr.confinement_max));

                if (fr.sink && *fr.sink == low.to) {
                    rec.computed_sign = trajectory_sign(fr, s);
                    rec.frame_det_sign = trajectory_frame_determinant_sign(fr, s);
                    const int ik = p.subset[low.slot - 1];
                    const int expected =
                        (sign > 0) ? 1 : ((ik - low.slot) % 2 == 0 ? 1 : -1);
                    rep.add("orientation sign for " + tag, rec.computed_sign == expected,
                            std::to_string(rec.computed_sign) + " vs expected " +
                                std::to_string(expected));
                    signed_sum += rec.computed_sign;
                    honest_sum += rec.frame_det_sign;
                }
                out.pairs.push_back(std::move(rec));
            }
            const int coeff = incidence_coefficient(SignConvention::PaperLemma11, p, low.slot);
            rep.add("signed trajectory sum matches incidence coefficient for " + p.label() +
                        " slot " + std::to_string(low.slot),
                    signed_sum == coeff,
                    std::to_string(signed_sum) + " vs " + std::to_string(coeff));
            const int corrected =
                incidence_coefficient(SignConvention::CorrectedAlternating, p, low.slot);
            rep.add("frame-determinant sum magnitude for " + p.label() + " slot " +
                        std::to_string(low.slot),
                    std::abs(honest_sum) == std::abs(corrected),
                    std::to_string(honest_sum) + " vs +/-" + std::to_string(corrected));
        }
    }
    return out;
}

}  // namespace grasshom
