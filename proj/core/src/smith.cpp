#include "grasshom/smith.hpp"

#include <algorithm>
#include <sstream>

namespace grasshom {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix out(n, n);
    for (int i = 0; i < n; ++i) out.at(i, i) = 1;
    return out;
}

IntMatrix IntMatrix::from_sparse(const SparseIntMatrix& s) {
    IntMatrix out(s.rows, s.cols);
    for (const SparseEntry& e : s.entries) out.at(e.row, e.col) = e.value;
    return out;
}

IntMatrix IntMatrix::multiplied_by(const IntMatrix& other) const {
    IntMatrix out(rows_, other.cols());
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Integer& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < other.cols(); ++j) {
                const Integer& b = other.at(k, j);
                if (b != 0) out.at(i, j) += a * b;
            }
        }
    return out;
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw ParameterError("determinant needs a square matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    IntMatrix w = a;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Integer num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

namespace {

// In-place elementary operations keeping d = u * original * v.
struct SnfWork {
    IntMatrix d, u, v;

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (int j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    void add_row_multiple(int dst, int src, const Integer& q) {  // row_dst += q * row_src
        if (q == 0) return;
        for (int j = 0; j < d.cols(); ++j) d.at(dst, j) += q * d.at(src, j);
        for (int j = 0; j < u.cols(); ++j) u.at(dst, j) += q * u.at(src, j);
    }
    void add_col_multiple(int dst, int src, const Integer& q) {
        if (q == 0) return;
        for (int i = 0; i < d.rows(); ++i) d.at(i, dst) += q * d.at(i, src);
        for (int i = 0; i < v.rows(); ++i) v.at(i, dst) += q * v.at(i, src);
    }
    void negate_row(int r) {
        for (int j = 0; j < d.cols(); ++j) d.at(r, j) = -d.at(r, j);
        for (int j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const int R = a.rows(), C = a.cols();
    SnfWork w{a, IntMatrix::identity(R), IntMatrix::identity(C)};
    const int lim = std::min(R, C);
    int rank = 0;

    for (int t = 0; t < lim; ++t) {
        // Smallest-magnitude nonzero pivot in the trailing submatrix.
        int pi = -1, pj = -1;
        Integer best;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j) {
                if (w.d.at(i, j) == 0) continue;
                Integer mag = abs(w.d.at(i, j));
                if (pi < 0 || mag < best) { best = mag; pi = i; pj = j; }
            }
        if (pi < 0) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (int i = t + 1; i < R; ++i) {
                    if (w.d.at(i, t) == 0) continue;
                    Integer q;
                    mpz_tdiv_q(q.get_mpz_t(), w.d.at(i, t).get_mpz_t(), w.d.at(t, t).get_mpz_t());
                    w.add_row_multiple(i, t, -q);
                    if (w.d.at(i, t) != 0) { w.swap_rows(i, t); dirty = true; }
                }
                for (int j = t + 1; j < C; ++j) {
                    if (w.d.at(t, j) == 0) continue;
                    Integer q;
                    mpz_tdiv_q(q.get_mpz_t(), w.d.at(t, j).get_mpz_t(), w.d.at(t, t).get_mpz_t());
                    w.add_col_multiple(j, t, -q);
                    if (w.d.at(t, j) != 0) { w.swap_cols(j, t); dirty = true; }
                }
            }
            // Pivot must divide the whole trailing submatrix.
            int bad_row = -1;
            for (int i = t + 1; i < R && bad_row < 0; ++i)
                for (int j = t + 1; j < C; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) { bad_row = i; break; }
            if (bad_row < 0) break;
            w.add_row_multiple(t, bad_row, 1);
        }
        if (w.d.at(t, t) < 0) w.negate_row(t);
        ++rank;
    }

    SmithDecomposition out;
    out.diagonal.resize(lim);
    for (int t = 0; t < lim; ++t) out.diagonal[t] = w.d.at(t, t);
    out.left_transform = std::move(w.u);
    out.right_transform = std::move(w.v);
    out.original_rank = rank;
    return out;
}

IntMatrix integer_kernel_basis(const IntMatrix& a) {
    const SmithDecomposition snf = smith_normal_form(a);
    const int C = a.cols();
    const int kdim = C - snf.original_rank;
    IntMatrix out(C, kdim);
    for (int j = 0; j < kdim; ++j)
        for (int i = 0; i < C; ++i)
            out.at(i, j) = snf.right_transform.at(i, snf.original_rank + j);
    return out;
}

IntMatrix solve_exact(const IntMatrix& k, const IntMatrix& b) {
    if (k.rows() != b.rows()) throw ParameterError("solve_exact: shape mismatch");
    const SmithDecomposition snf = smith_normal_form(k);
    const int kdim = k.cols();
    if (snf.original_rank != kdim)
        throw std::runtime_error("solve_exact: matrix does not have full column rank");
    const IntMatrix ub = snf.left_transform.multiplied_by(b);
    IntMatrix wmat(kdim, b.cols());
    for (int i = 0; i < kdim; ++i)
        for (int j = 0; j < b.cols(); ++j) {
            if (ub.at(i, j) % snf.diagonal[i] != 0)
                throw std::runtime_error("solve_exact: no integer solution");
            wmat.at(i, j) = ub.at(i, j) / snf.diagonal[i];
        }
    for (int i = kdim; i < k.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            if (ub.at(i, j) != 0)
                throw std::runtime_error("solve_exact: right-hand side outside column span");
    return snf.right_transform.multiplied_by(wmat);
}

std::string render_group(const HomologyGroup& g) {
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " \xE2\x8A\x95 ";  // " ⊕ "
        first = false;
    };
    if (g.free_rank == 1) { sep(); os << "Z"; }
    else if (g.free_rank > 1) { sep(); os << "Z^" << g.free_rank; }
    for (const Integer& d : g.torsion) { sep(); os << "Z_" << d.get_str(); }
    if (first) os << "0";
    return os.str();
}

namespace {

void require_chain(const ChainComplex& c) {
    BoundaryResidual res = boundary_square_residual(c);
    if (res.max_abs_entry != 0) {
        std::ostringstream os;
        os << "not a chain complex: d^2 has entry " << res.max_abs_entry.get_str();
        if (res.witness)
            os << " at (" << res.witness->row_generator.label() << ", "
               << res.witness->col_generator.label() << ")";
        throw NotAChainComplex(os.str(), std::move(res));
    }
}

HomologyGroup homology_unchecked(const ChainComplex& c, int r) {
    if (r < 0 || r > c.top_degree()) return {};
    const IntMatrix b_r = IntMatrix::from_sparse(c.boundaries[r]);
    const IntMatrix b_up = (r + 1 <= c.top_degree())
                               ? IntMatrix::from_sparse(c.boundaries[r + 1])
                               : IntMatrix(static_cast<int>(c.generators[r].size()), 0);

    const IntMatrix kernel = integer_kernel_basis(b_r);
    if (kernel.cols() == 0) return {};

    // Image of the higher boundary written in the kernel basis.
    const IntMatrix y = solve_exact(kernel, b_up);
    const SmithDecomposition snf = smith_normal_form(y);

    HomologyGroup g;
    g.free_rank = kernel.cols() - snf.original_rank;
    for (const Integer& d : snf.diagonal)
        if (d > 1) g.torsion.push_back(d);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

}  // namespace

HomologyGroup homology_at_degree(const ChainComplex& c, int r) {
    require_chain(c);
    return homology_unchecked(c, r);
}

std::vector<HomologyGroup> homology_table(const ChainComplex& c) {
    require_chain(c);
    std::vector<HomologyGroup> out;
    out.reserve(c.top_degree() + 1);
    for (int r = 0; r <= c.top_degree(); ++r) out.push_back(homology_unchecked(c, r));
    return out;
}

HomologyGroup theorem4_prediction(int n, int m, int r, Theorem4Reading reading) {
    if (n < 1 || m < 1 || m > n) throw ParameterError("need 1 <= m <= n");
    const int shift = (reading == Theorem4Reading::MorseIndexShift) ? m * (m + 1) / 2 : 0;
    HomologyGroup g;
    for (const CriticalPoint& p : enumerate_critical_points(n, m)) {
        int sum = 0;
        for (int v : p.subset) sum += v;
        if (sum - shift != r) continue;
        for (int k = 1; k <= m; ++k) {
            if ((p.subset[k - 1] + 1 - k) % 2 != 0) g.torsion.push_back(2);
            else ++g.free_rank;
        }
    }
    return g;
}

}  // namespace grasshom
