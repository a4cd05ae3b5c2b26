#include "grasshom/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace grasshom {

Spectrum::Spectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw ParameterError("spectrum must be non-empty");
    double prev = 0.0;
    for (double v : lambdas_) {
        if (!std::isfinite(v) || v <= prev)
            throw ParameterError("spectrum must be finite, positive, strictly increasing");
        prev = v;
    }
}

Spectrum Spectrum::default_for(int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return Spectrum(std::move(v));
}

ChartPoint::ChartPoint(CriticalPoint chart_, Eigen::MatrixXd coords_)
    : chart(std::move(chart_)), coords(std::move(coords_)) {
    if (coords.rows() != chart.m || coords.cols() != chart.n - chart.m)
        throw ParameterError("coords must be m x (n-m)");
    if (!coords.allFinite()) throw ParameterError("coords must be finite");
}

ChartPoint ChartPoint::origin(const CriticalPoint& chart) {
    return ChartPoint(chart, Eigen::MatrixXd::Zero(chart.m, chart.n - chart.m));
}

std::vector<int> complement_labels(const CriticalPoint& chart) {
    std::vector<int> out;
    out.reserve(chart.n - chart.m);
    size_t t = 0;
    for (int c = 1; c <= chart.n; ++c) {
        if (t < chart.subset.size() && chart.subset[t] == c) { ++t; continue; }
        out.push_back(c);
    }
    return out;
}

int coordinate_index(const CriticalPoint& chart, int row, int column_label) {
    const std::vector<int> comp = complement_labels(chart);
    const auto it = std::find(comp.begin(), comp.end(), column_label);
    if (row < 1 || row > chart.m || it == comp.end())
        throw ParameterError("not a free coordinate of this chart");
    return (row - 1) * static_cast<int>(comp.size()) + static_cast<int>(it - comp.begin());
}

Eigen::MatrixXd implied_matrix(const ChartPoint& p) {
    const int n = p.chart.n, m = p.chart.m;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, n);
    for (int a = 0; a < m; ++a) out(a, p.chart.subset[a] - 1) = 1.0;
    const std::vector<int> comp = complement_labels(p.chart);
    for (int s = 0; s < n - m; ++s) out.col(comp[s] - 1) = p.coords.col(s);
    return out;
}

namespace {

// Gram matrices of the representing rows and of the weight-scaled rows.
struct GramData {
    Eigen::MatrixXd gram;         // I + Z Z^T in chart terms
    Eigen::MatrixXd gram_scaled;  // Gram of rows scaled by 1/lambda per column
    double det_gram = 0.0;
    double det_scaled = 0.0;
};

GramData grams(const ChartPoint& p, const Spectrum& s) {
    Eigen::MatrixXd mat = implied_matrix(p);
    Eigen::MatrixXd scaled = mat;
    for (int c = 0; c < mat.cols(); ++c) scaled.col(c) /= s.lambda(c + 1);
    GramData g;
    g.gram = mat * mat.transpose();
    g.gram_scaled = scaled * scaled.transpose();
    g.det_gram = g.gram.determinant();
    g.det_scaled = g.gram_scaled.determinant();
    return g;
}

Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a, double det) {
    return det * a.inverse();
}

}  // namespace

double morse_value(const ChartPoint& p, const Spectrum& s) {
    if (s.size() != p.chart.n) throw ParameterError("spectrum size must equal n");
    const GramData g = grams(p, s);
    return g.det_gram / g.det_scaled;
}

MetricPair metric_with_inverse(const ChartPoint& p) {
    const int m = p.chart.m, nm = p.chart.n - p.chart.m, d = m * nm;
    const Eigen::MatrixXd mat = implied_matrix(p);
    const Eigen::MatrixXd rowGram = mat * mat.transpose();                       // I + Z Z^T
    const Eigen::MatrixXd colGram =
        Eigen::MatrixXd::Identity(nm, nm) + p.coords.transpose() * p.coords;    // I + Z^T Z
    const Eigen::MatrixXd rowGramInv = rowGram.inverse();
    const Eigen::MatrixXd colGramInv = colGram.inverse();

    MetricPair out;
    out.g.resize(d, d);
    out.g_inverse.resize(d, d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            out.g.block(i * nm, j * nm, nm, nm) = rowGramInv(i, j) * colGramInv;
            out.g_inverse.block(i * nm, j * nm, nm, nm) = rowGram(i, j) * colGram;
        }
    out.identity_defect =
        (out.g * out.g_inverse - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (out.identity_defect > 1e-10)
        throw std::runtime_error("metric inverse defect exceeds 1e-10");
    return out;
}

Eigen::MatrixXd metric_matrix(const ChartPoint& p) { return metric_with_inverse(p).g; }

namespace {

// Euclidean partials of f via the cofactor expansion of both determinants.
Eigen::MatrixXd partials(const ChartPoint& p, const Spectrum& s, const GramData& g) {
    const int nm = p.chart.n - p.chart.m;
    const std::vector<int> comp = complement_labels(p.chart);
    const Eigen::MatrixXd adjGram = adjugate(g.gram, g.det_gram);
    const Eigen::MatrixXd adjScaled = adjugate(g.gram_scaled, g.det_scaled);
    Eigen::MatrixXd dGram = 2.0 * adjGram * p.coords;
    Eigen::MatrixXd dScaled = 2.0 * adjScaled * p.coords;
    for (int t = 0; t < nm; ++t) {
        const double l2 = s.lambda(comp[t]) * s.lambda(comp[t]);
        dScaled.col(t) /= l2;
    }
    return (dGram * g.det_scaled - g.det_gram * dScaled) / (g.det_scaled * g.det_scaled);
}

}  // namespace

Eigen::MatrixXd gradient(const ChartPoint& p, const Spectrum& s) {
    if (s.size() != p.chart.n) throw ParameterError("spectrum size must equal n");
    const int nm = p.chart.n - p.chart.m;
    const GramData g = grams(p, s);
    const Eigen::MatrixXd part = partials(p, s, g);
    const Eigen::MatrixXd colGram =
        Eigen::MatrixXd::Identity(nm, nm) + p.coords.transpose() * p.coords;
    return g.gram * part * colGram;
}

Eigen::MatrixXd gradient_structured(const ChartPoint& p, const Spectrum& s) {
    if (s.size() != p.chart.n) throw ParameterError("spectrum size must equal n");
    const int m = p.chart.m, nm = p.chart.n - p.chart.m;
    const std::vector<int> comp = complement_labels(p.chart);
    const GramData g = grams(p, s);
    const Eigen::MatrixXd mixed = g.gram * adjugate(g.gram_scaled, g.det_scaled);
    const double factor = -2.0 * g.det_gram / (g.det_scaled * g.det_scaled);

    Eigen::MatrixXd out(m, nm);
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < nm; ++t) {
            const double invKs = 1.0 / (s.lambda(comp[t]) * s.lambda(comp[t]));
            double acc = 0.0;
            for (int u = 0; u < m; ++u) {
                const double li = s.lambda(p.chart.subset[u]);
                acc += mixed(i, u) * (invKs - 1.0 / (li * li)) * p.coords(u, t);
            }
            out(i, t) = factor * acc;
        }
    return out;
}

Eigen::VectorXd hessian_at_critical(const CriticalPoint& p0, const Spectrum& s) {
    if (s.size() != p0.n) throw ParameterError("spectrum size must equal n");
    const std::vector<int> comp = complement_labels(p0);
    double prefactor = 2.0;
    for (int v : p0.subset) prefactor *= s.lambda(v) * s.lambda(v);
    Eigen::VectorXd out(p0.m * (p0.n - p0.m));
    int idx = 0;
    for (int t = 0; t < p0.m; ++t) {
        const double li2 = s.lambda(p0.subset[t]) * s.lambda(p0.subset[t]);
        for (int c : comp) {
            const double lk2 = s.lambda(c) * s.lambda(c);
            out(idx++) = prefactor * (1.0 - li2 / lk2);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> unstable_directions(const CriticalPoint& p0) {
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a <= p0.m; ++a)
        for (int c : complement_labels(p0))
            if (c < p0.subset[a - 1]) out.push_back({a, c});
    return out;
}

std::vector<std::pair<int, int>> stable_directions(const CriticalPoint& p0) {
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a <= p0.m; ++a)
        for (int c : complement_labels(p0))
            if (c > p0.subset[a - 1]) out.push_back({a, c});
    return out;
}

namespace {

Eigen::MatrixXd target_minor(const Eigen::MatrixXd& mat, const CriticalPoint& target) {
    Eigen::MatrixXd t(mat.rows(), target.m);
    for (int j = 0; j < target.m; ++j) t.col(j) = mat.col(target.subset[j] - 1);
    return t;
}

}  // namespace

ChartPoint chart_transition(const ChartPoint& p, const CriticalPoint& target) {
    if (target.n != p.chart.n || target.m != p.chart.m)
        throw ParameterError("target chart must live on the same Grassmannian");
    const Eigen::MatrixXd mat = implied_matrix(p);
    const Eigen::MatrixXd minor = target_minor(mat, target);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(minor);
    if (!lu.isInvertible()) throw ChartError("point outside target chart");
    const Eigen::MatrixXd normalized = lu.solve(mat);
    const std::vector<int> comp = complement_labels(target);
    Eigen::MatrixXd coords(target.m, target.n - target.m);
    for (int s = 0; s < target.n - target.m; ++s) coords.col(s) = normalized.col(comp[s] - 1);
    return ChartPoint(target, std::move(coords));
}

Eigen::MatrixXd transition_jacobian(const ChartPoint& p, const CriticalPoint& target) {
    const int m = p.chart.m, nm = p.chart.n - p.chart.m, d = m * nm;
    const Eigen::MatrixXd mat = implied_matrix(p);
    const Eigen::MatrixXd minor = target_minor(mat, target);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(minor);
    if (!lu.isInvertible()) throw ChartError("point outside target chart");
    const Eigen::MatrixXd minorInv = lu.inverse();
    const Eigen::MatrixXd normalized = minorInv * mat;
    const std::vector<int> compS = complement_labels(p.chart);
    const std::vector<int> compT = complement_labels(target);

    // Position of each label inside the target subset, -1 when absent.
    std::vector<int> slot_of(p.chart.n + 1, -1);
    for (int j = 0; j < m; ++j) slot_of[target.subset[j]] = j;

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < m; ++a)
        for (int sIdx = 0; sIdx < nm; ++sIdx) {
            const int label = compS[sIdx];
            // d(normalized)/dx_{a,label} = minorInv * (E_{a,label} - dT * normalized)
            Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(p.chart.n);
            row(label - 1) = 1.0;
            if (slot_of[label] >= 0) row -= normalized.row(slot_of[label]);
            const Eigen::VectorXd colFactor = minorInv.col(a);
            const int srcIdx = a * nm + sIdx;
            for (int b = 0; b < m; ++b)
                for (int t = 0; t < nm; ++t)
                    jac(b * nm + t, srcIdx) = colFactor(b) * row(compT[t] - 1);
        }
    return jac;
}

int restricted_jacobian_det_sign(const ChartPoint& p, const CriticalPoint& target,
                                 const std::vector<std::pair<int, int>>& source_dirs,
                                 const std::vector<std::pair<int, int>>& target_dirs) {
    if (source_dirs.size() != target_dirs.size())
        throw ParameterError("direction lists must have equal length");
    const Eigen::MatrixXd jac = transition_jacobian(p, target);
    const int k = static_cast<int>(source_dirs.size());
    if (k == 0) return 1;
    Eigen::MatrixXd r(k, k);
    for (int j = 0; j < k; ++j) {
        const int col = coordinate_index(p.chart, source_dirs[j].first, source_dirs[j].second);
        for (int i = 0; i < k; ++i) {
            const int row = coordinate_index(target, target_dirs[i].first, target_dirs[i].second);
            r(i, j) = jac(row, col);
        }
    }
    const double det = r.determinant();
    if (det == 0.0) throw std::runtime_error("restricted Jacobian is singular");
    return det > 0 ? 1 : -1;
}

}  // namespace grasshom
