#pragma once

#include <Eigen/Core>

namespace oslpp {

/// Columns of `basis` are generalized eigenvectors, paired with `eigenvalues`
/// in non-increasing order.
struct Projection {
  Eigen::MatrixXd basis;
  Eigen::VectorXd eigenvalues;

  Eigen::Index input_dim() const noexcept { return basis.rows(); }
  Eigen::Index output_dim() const noexcept { return basis.cols(); }

  /// Rows of `x` are samples; returns x * basis.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

struct PcaModel {
  Eigen::RowVectorXd mean;
  Eigen::MatrixXd components;          // d0 x d_pca, orthonormal columns
  Eigen::VectorXd explained_variance;  // non-increasing

  Eigen::Index input_dim() const noexcept { return components.rows(); }
  Eigen::Index output_dim() const noexcept { return components.cols(); }
};

/// Scales each non-zero row to unit Euclidean norm; zero rows pass through.
Eigen::MatrixXd l2_normalize_rows(const Eigen::MatrixXd& x);

/// Principal components from the thin SVD of the column-centered data.
///
/// Requires 1 <= d_pca <= min(rows - 1, cols) and centered rank >= d_pca;
/// throws ArgumentError otherwise. Each component is sign-fixed so that its
/// largest-magnitude entry is positive (first such entry on ties).
PcaModel fit_pca(const Eigen::MatrixXd& x, Eigen::Index d_pca);

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& x);

/// Top-d solutions of A p = lambda B p for symmetric A and SPD B.
///
/// Reduces to a standard symmetric problem through the Cholesky factor of B.
/// Columns are B-normalized and sign-fixed like PCA components. Throws
/// ArgumentError on non-square or asymmetric input (relative tolerance 1e-8)
/// and NumericalError when B is not positive definite.
Projection solve_gev(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::Index d);

/// (i, j) = ||x_i - y_j||^2, clamped at zero.
Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Maximum absolute row sum.
double inf_norm(const Eigen::MatrixXd& m);

/// Flips each column so its largest-magnitude entry is positive.
void fix_column_signs(Eigen::MatrixXd& m);

}  // namespace oslpp
