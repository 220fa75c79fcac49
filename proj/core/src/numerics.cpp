#include "oslpp/numerics.hpp"

#include "oslpp/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace oslpp {
namespace {

constexpr double kSymmetryTolerance = 1e-8;
// Singular values below this fraction of the largest count as zero.
constexpr double kRankTolerance = 1e-10;

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw ArgumentError(std::string(name) + " must be square, got " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()));
  }
  const double scale = inf_norm(m);
  const double asym = inf_norm(m - m.transpose());
  if (asym > kSymmetryTolerance * scale) {
    throw ArgumentError(std::string(name) + " is not symmetric (asymmetry " +
                        std::to_string(asym) + ")");
  }
}

}  // namespace

Eigen::MatrixXd Projection::apply(const Eigen::MatrixXd& x) const {
  if (x.cols() != basis.rows()) {
    throw ArgumentError("projection expects " + std::to_string(basis.rows()) +
                        " input columns, got " + std::to_string(x.cols()));
  }
  return x * basis;
}

double inf_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (m.rows() > 0 && m(arg, j) < 0.0) m.col(j) = -m.col(j);
  }
}

Eigen::MatrixXd l2_normalize_rows(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out = x;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double norm = out.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return out;
}

PcaModel fit_pca(const Eigen::MatrixXd& x, Eigen::Index d_pca) {
  const auto limit = std::min(x.rows() - 1, x.cols());
  if (d_pca < 1 || d_pca > limit) {
    throw ArgumentError("PCA dimension " + std::to_string(d_pca) + " outside [1, " +
                        std::to_string(limit) + "] for " + std::to_string(x.rows()) + "x" +
                        std::to_string(x.cols()) + " data");
  }

  PcaModel model;
  model.mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - model.mean;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? s(0) * kRankTolerance : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  if (rank < d_pca) {
    throw ArgumentError("PCA dimension " + std::to_string(d_pca) +
                        " exceeds the rank of the centered data; achievable rank is " +
                        std::to_string(rank));
  }

  model.components = svd.matrixV().leftCols(d_pca);
  fix_column_signs(model.components);
  const double denom = static_cast<double>(x.rows() - 1);
  model.explained_variance = s.head(d_pca).array().square() / denom;
  return model;
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.input_dim()) {
    throw ArgumentError("PCA model expects " + std::to_string(model.input_dim()) +
                        " columns, got " + std::to_string(x.cols()));
  }
  return (x.rowwise() - model.mean) * model.components;
}

Projection solve_gev(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::Index d) {
  require_symmetric(a, "A");
  require_symmetric(b, "B");
  if (a.rows() != b.rows()) {
    throw ArgumentError("pencil sizes differ: " + std::to_string(a.rows()) + " vs " +
                        std::to_string(b.rows()));
  }
  const auto m = a.rows();
  if (d < 1 || d > m) {
    throw ArgumentError("requested " + std::to_string(d) + " eigenpairs of a size-" +
                        std::to_string(m) + " pencil");
  }

  Eigen::LLT<Eigen::MatrixXd> llt(b);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("B is not positive definite (Cholesky factorization failed)");
  }
  const auto lower = llt.matrixL();

  // C = L^-1 A L^-T, symmetrized to absorb rounding.
  Eigen::MatrixXd c = lower.solve(a);
  c = lower.solve(c.transpose()).eval();
  c = (0.5 * (c + c.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }

  Projection out;
  out.eigenvalues.resize(d);
  Eigen::MatrixXd y(m, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.eigenvalues(k) = eig.eigenvalues()(m - 1 - k);
    y.col(k) = eig.eigenvectors().col(m - 1 - k);
  }
  out.basis = lower.transpose().solve(y);
  fix_column_signs(out.basis);
  return out;
}

Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() != y.cols()) {
    throw ArgumentError("pairwise distances need equal widths, got " +
                        std::to_string(x.cols()) + " and " + std::to_string(y.cols()));
  }
  const Eigen::VectorXd xx = x.rowwise().squaredNorm();
  const Eigen::RowVectorXd yy = y.rowwise().squaredNorm().transpose();
  Eigen::MatrixXd out = -2.0 * (x * y.transpose());
  out.colwise() += xx;
  out.rowwise() += yy;
  return out.cwiseMax(0.0);
}

}  // namespace oslpp
