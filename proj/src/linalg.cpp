#include "wvpa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wvpa {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(a.begin() + static_cast<long>(i * cols),
                  a.begin() + static_cast<long>((i + 1) * cols));
}

Vector Matrix::col(std::size_t j) const {
    Vector out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::fabs(x));
    return m;
}

bool Matrix::all_finite() const {
    return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

Matrix mul(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const double xv = x(i, k);
            if (xv == 0.0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out(i, j) += xv * y(k, j);
        }
    return out;
}

Vector mul(const Matrix& x, const Vector& v) {
    Vector out(x.rows, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.cols; ++j) s += x(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Vector mul(const Vector& v, const Matrix& x) {
    Vector out(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (std::size_t j = 0; j < x.cols; ++j) out[j] += vi * x(i, j);
    }
    return out;
}

Matrix add(const Matrix& x, const Matrix& y) {
    Matrix out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
    return out;
}

Matrix scale(const Matrix& x, double s) {
    Matrix out = x;
    for (double& v : out.a) v *= s;
    return out;
}

Matrix outer(const Vector& x, const Vector& y) {
    Matrix out(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * y[j];
    return out;
}

double dot(const Vector& x, const Vector& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double inf_norm(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double two_norm(const Vector& v) { return std::sqrt(dot(v, v)); }

Vector axpy(double a, const Vector& x, const Vector& y) {
    Vector out = y;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
    return out;
}

namespace {

// One-sided Jacobi on a matrix with rows >= cols: repeatedly rotates column
// pairs until they are mutually orthogonal, then reads singular values off
// the column norms. Accurate for the small dense matrices used here.
struct JacobiWork {
    std::size_t rows, cols;
    std::vector<Vector> b;  // working columns
    std::vector<Vector> v;  // accumulated rotations, columns of V
};

void jacobi_sweeps(JacobiWork& w) {
    const double tol = 1e-15;
    const std::size_t n = w.cols;
    // Columns whose norm has collapsed below working precision relative to
    // the largest column are numerically zero; rotating against them cannot
    // converge (a leftover column stays parallel to its partner), so such
    // pairs are treated as done. Cached squared norms let those pairs skip
    // without touching the data.
    std::vector<double> norm2(n);
    double scale2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        norm2[j] = dot(w.b[j], w.b[j]);
        scale2 = std::max(scale2, norm2[j]);
    }
    const double floor2 = 1e-30 * scale2;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            if (norm2[p] <= floor2) continue;
            for (std::size_t q = p + 1; q < n; ++q) {
                if (norm2[q] <= floor2) continue;
                const double app = norm2[p];
                const double aqq = norm2[q];
                const double apq = dot(w.b[p], w.b[q]);
                if (std::fabs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                for (std::size_t i = 0; i < w.rows; ++i) {
                    const double bp = w.b[p][i], bq = w.b[q][i];
                    w.b[p][i] = cs * bp - sn * bq;
                    w.b[q][i] = sn * bp + cs * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = w.v[p][i], vq = w.v[q][i];
                    w.v[p][i] = cs * vp - sn * vq;
                    w.v[q][i] = sn * vp + cs * vq;
                }
                norm2[p] = dot(w.b[p], w.b[p]);
                norm2[q] = dot(w.b[q], w.b[q]);
                if (norm2[p] <= floor2) break;
            }
        }
        if (!rotated) break;
    }
}

// Appends `needed` orthonormal columns to an existing orthonormal set,
// drawn from the coordinate directions least covered by it.
std::vector<Vector> orthonormal_completion(std::vector<Vector> existing, std::size_t dim,
                                           std::size_t needed) {
    std::vector<double> residual(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        double covered = 0.0;
        for (const auto& u : existing) covered += u[i] * u[i];
        residual[i] = 1.0 - covered;
    }
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return residual[a] > residual[b]; });

    std::vector<Vector> added;
    for (std::size_t i : order) {
        if (added.size() == needed) break;
        Vector cand(dim, 0.0);
        cand[i] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : existing) {
                const double proj = dot(u, cand);
                for (std::size_t j = 0; j < dim; ++j) cand[j] -= proj * u[j];
            }
            for (const auto& u : added) {
                const double proj = dot(u, cand);
                for (std::size_t j = 0; j < dim; ++j) cand[j] -= proj * u[j];
            }
        }
        const double nrm = two_norm(cand);
        if (nrm < 1e-6) continue;
        for (double& x : cand) x /= nrm;
        added.push_back(std::move(cand));
    }
    return added;
}

// Shared Jacobi driver. Singular values are the column norms of the rotated
// matrix, with working-precision noise flushed to exact zero (see the sweep
// floor above).
JacobiWork run_jacobi(const Matrix& m) {
    JacobiWork w;
    w.rows = m.rows;
    w.cols = m.cols;
    w.b.resize(w.cols);
    w.v.resize(w.cols);
    for (std::size_t j = 0; j < w.cols; ++j) {
        w.b[j] = m.col(j);
        w.v[j] = Vector(w.cols, 0.0);
        w.v[j][j] = 1.0;
    }
    jacobi_sweeps(w);
    return w;
}

Vector column_norms_flushed(const JacobiWork& w) {
    Vector sigma(w.cols);
    for (std::size_t j = 0; j < w.cols; ++j) sigma[j] = two_norm(w.b[j]);
    double sig_max = 0.0;
    for (double s : sigma) sig_max = std::max(sig_max, s);
    for (double& s : sigma)
        if (s <= 1e-15 * sig_max) s = 0.0;
    return sigma;
}

}  // namespace

SvdResult svd(const Matrix& m) {
    if (m.rows == 0 || m.cols == 0) throw ZeroMatrix("svd: empty matrix");
    if (m.max_abs() == 0.0) throw ZeroMatrix("svd: zero matrix");

    const bool transposed = m.rows < m.cols;
    const JacobiWork w = run_jacobi(transposed ? m.transposed() : m);
    const Vector sigma = column_norms_flushed(w);

    const std::size_t p = w.cols;
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.sigma.resize(p);
    out.u = Matrix(w.rows, p);
    out.v = Matrix(w.cols, p);
    std::vector<Vector> ucols;
    std::vector<std::size_t> zero_cols;
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = sigma[j];
        for (std::size_t i = 0; i < w.cols; ++i) out.v(i, k) = w.v[j][i];
        if (sigma[j] > 0.0) {
            Vector u = w.b[j];
            for (double& x : u) x /= sigma[j];
            for (std::size_t i = 0; i < w.rows; ++i) out.u(i, k) = u[i];
            ucols.push_back(std::move(u));
        } else {
            zero_cols.push_back(k);
        }
    }
    if (!zero_cols.empty()) {
        const auto filler = orthonormal_completion(ucols, w.rows, zero_cols.size());
        for (std::size_t t = 0; t < zero_cols.size(); ++t)
            for (std::size_t i = 0; i < w.rows; ++i) out.u(i, zero_cols[t]) = filler[t][i];
    }

    if (transposed) std::swap(out.u, out.v);
    return out;
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
    if (m.rows == 0 || m.cols == 0 || m.max_abs() == 0.0) return 0;
    // Only the singular values are needed, so skip the factor assembly.
    const JacobiWork w = run_jacobi(m.rows < m.cols ? m.transposed() : m);
    const Vector sigma = column_norms_flushed(w);
    double sig_max = 0.0;
    for (double x : sigma) sig_max = std::max(sig_max, x);
    const double cutoff = rel_tol * sig_max;
    std::size_t rank = 0;
    for (double x : sigma)
        if (x > cutoff) ++rank;
    return rank;
}

std::pair<Vector, Vector> rank1_factor(const Matrix& m) {
    const std::size_t rank = numerical_rank(m, 1e-9);
    if (rank != 1)
        throw NotRankOne("rank1_factor: matrix has rank " + std::to_string(rank),
                         static_cast<int>(rank));
    const SvdResult s = svd(m);
    const double root = std::sqrt(s.sigma[0]);
    Vector x = s.u.col(0), y = s.v.col(0);
    for (double& v : x) v *= root;
    for (double& v : y) v *= root;
    return {x, y};
}

std::vector<std::pair<Vector, Vector>> svd_expansion(const Matrix& m, std::size_t terms) {
    std::vector<std::pair<Vector, Vector>> out;
    if (m.max_abs() == 0.0) {
        for (std::size_t k = 0; k < terms; ++k)
            out.emplace_back(Vector(m.rows, 0.0), Vector(m.cols, 0.0));
        return out;
    }
    const std::size_t rank = numerical_rank(m, 1e-9);
    if (terms < rank)
        throw InsufficientTerms("svd_expansion: " + std::to_string(terms) +
                                " terms cannot reproduce a rank-" + std::to_string(rank) +
                                " matrix");
    const SvdResult s = svd(m);
    const std::size_t p = s.sigma.size();
    for (std::size_t k = 0; k < terms; ++k) {
        if (k < p) {
            const double root = std::sqrt(s.sigma[k]);
            Vector pk = s.u.col(k), qk = s.v.col(k);
            for (double& v : pk) v *= root;
            for (double& v : qk) v *= root;
            out.emplace_back(std::move(pk), std::move(qk));
        } else {
            out.emplace_back(Vector(m.rows, 0.0), Vector(m.cols, 0.0));
        }
    }
    return out;
}

LeastSquares::LeastSquares(const std::vector<Vector>& basis_columns) : columns_(basis_columns) {
    count_ = basis_columns.size();
    dim_ = count_ ? basis_columns[0].size() : 0;
    for (const auto& b : basis_columns)
        if (b.size() != dim_) throw LinalgError("least squares: basis dimensions differ");
    Matrix a(dim_, count_);
    for (std::size_t j = 0; j < count_; ++j)
        for (std::size_t i = 0; i < dim_; ++i) a(i, j) = basis_columns[j][i];
    zero_ = (count_ == 0 || dim_ == 0 || a.max_abs() == 0.0);
    if (!zero_) svd_ = svd(a);
}

LeastSquares::Solution LeastSquares::solve(const Vector& target) const {
    if (target.size() != dim_) throw LinalgError("least squares: target dimension mismatch");
    Solution sol;
    sol.coefficients.assign(count_, 0.0);
    if (!zero_) {
        // Minimal-norm solution: z = V diag(1/sigma) U^T target with small
        // singular values dropped.
        const double cutoff = 1e-12 * svd_.sigma[0];
        for (std::size_t k = 0; k < svd_.sigma.size(); ++k) {
            if (svd_.sigma[k] <= cutoff) continue;
            const double c = dot(svd_.u.col(k), target) / svd_.sigma[k];
            for (std::size_t j = 0; j < count_; ++j) sol.coefficients[j] += c * svd_.v(j, k);
        }
    }
    Vector reconstructed(dim_, 0.0);
    for (std::size_t j = 0; j < count_; ++j) {
        const double zj = sol.coefficients[j];
        if (zj == 0.0) continue;
        for (std::size_t i = 0; i < dim_; ++i) reconstructed[i] += zj * columns_[j][i];
    }
    double res = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        res = std::max(res, std::fabs(reconstructed[i] - target[i]));
    sol.residual_inf = res;
    return sol;
}

Vector solve_in_span(const std::vector<Vector>& basis_rows, const Vector& target,
                     double rel_tol) {
    LeastSquares ls(basis_rows);
    const auto sol = ls.solve(target);
    if (sol.residual_inf > rel_tol * (1.0 + inf_norm(target)))
        throw NotInSpan("solve_in_span: residual " + std::to_string(sol.residual_inf) +
                            " exceeds tolerance",
                        sol.residual_inf);
    return sol.coefficients;
}

}  // namespace wvpa
