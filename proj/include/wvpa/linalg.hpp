#ifndef WVPA_LINALG_HPP_
#define WVPA_LINALG_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "wvpa/errors.hpp"

namespace wvpa {

using Vector = std::vector<double>;

/// Dense row-major real matrix. Sized for the small problems this library
/// deals in (at most a few thousand rows).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n);
    Matrix transposed() const;
    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    double max_abs() const;
    bool all_finite() const;

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Matrix mul(const Matrix& x, const Matrix& y);
Vector mul(const Matrix& x, const Vector& v);
Vector mul(const Vector& v, const Matrix& x);  // row vector times matrix
Matrix add(const Matrix& x, const Matrix& y);
Matrix scale(const Matrix& x, double s);
Matrix outer(const Vector& x, const Vector& y);

double dot(const Vector& x, const Vector& y);
double inf_norm(const Vector& v);
double two_norm(const Vector& v);
Vector axpy(double a, const Vector& x, const Vector& y);  // a*x + y

struct SvdResult {
    Matrix u;       // rows x p, orthonormal columns
    Vector sigma;   // p = min(rows, cols), descending
    Matrix v;       // cols x p, orthonormal columns
};

/// Thin singular value decomposition by one-sided Jacobi rotations:
/// m = u * diag(sigma) * v^T. Throws ZeroMatrix on an all-zero input.
SvdResult svd(const Matrix& m);

/// Number of singular values above rel_tol * sigma_1; an all-zero matrix
/// has rank 0.
std::size_t numerical_rank(const Matrix& m, double rel_tol);

/// Factors a rank-1 matrix as x * y^T. Throws NotRankOne (carrying the
/// computed rank) when numerical_rank(m, 1e-9) != 1.
std::pair<Vector, Vector> rank1_factor(const Matrix& m);

/// Rank-1 terms (p_k, q_k) with sum_k p_k q_k^T = m, exactly `terms` pairs;
/// pairs beyond min(rows, cols) are zero vectors. The singular value is
/// split evenly: p_k = sqrt(sigma_k) u_k, q_k = sqrt(sigma_k) v_k. Throws
/// InsufficientTerms when terms < numerical_rank(m, 1e-9).
std::vector<std::pair<Vector, Vector>> svd_expansion(const Matrix& m, std::size_t terms);

/// Minimal-norm least-squares coefficients z with sum_k z_k basis_k close to
/// target. Throws NotInSpan when the residual exceeds
/// rel_tol * (1 + |target|_inf).
Vector solve_in_span(const std::vector<Vector>& basis_rows, const Vector& target,
                     double rel_tol);

/// Reusable minimal-norm least-squares solver for a fixed set of basis
/// vectors (the system matrix has the basis vectors as columns).
class LeastSquares {
public:
    explicit LeastSquares(const std::vector<Vector>& basis_columns);

    struct Solution {
        Vector coefficients;
        double residual_inf;  // |A z - target|_inf
    };
    Solution solve(const Vector& target) const;

    std::size_t dimension() const { return dim_; }

private:
    std::size_t dim_ = 0;
    std::size_t count_ = 0;
    bool zero_ = false;
    SvdResult svd_;
    std::vector<Vector> columns_;
};

}  // namespace wvpa

#endif  // WVPA_LINALG_HPP_
