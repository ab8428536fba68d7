#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace nyqr {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotPositiveDefiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Full symmetric eigendecomposition, eigenvalues sorted descending.
struct SymEigen {
  Eigen::MatrixXd vectors;  // orthonormal columns
  Eigen::VectorXd values;   // non-increasing
};

/// Thin QR of an n x m matrix, n >= m.
struct ThinQR {
  Eigen::MatrixXd q;  // n x m, orthonormal columns
  Eigen::MatrixXd r;  // m x m, upper triangular
};

struct MatrixNorms {
  double frobenius = 0.0;
  double trace = 0.0;  // nuclear norm
  double spectral = 0.0;
};

/// Truncated eigendecomposition of an SPSD matrix: G = u_hat * diag(lambda_hat) * u_hat^T.
struct FixedRankFactors {
  Eigen::MatrixXd u_hat;       // n x r, orthonormal columns
  Eigen::VectorXd lambda_hat;  // r, nonnegative, non-increasing
};

ThinQR thin_qr(const Eigen::MatrixXd& a);

/// Symmetrizes via (A + A^T)/2 before factorizing.
SymEigen sym_evd(const Eigen::MatrixXd& a);

/// Eigenvalues of the symmetrized input, descending. Cheaper than sym_evd
/// when eigenvectors are not needed.
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a);

/// Moore-Penrose pseudo-inverse of an SPSD matrix by eigenvalue thresholding.
/// Eigenvalues <= rel_tol * lambda_max are treated as zero; negatives from
/// roundoff are clamped to zero first.
Eigen::MatrixXd spsd_pinv(const Eigen::MatrixXd& w, double rel_tol = 1e-12);

/// Inverse square root of a positive definite matrix. Throws
/// NotPositiveDefiniteError if the thresholded rank is deficient.
Eigen::MatrixXd spsd_inv_sqrt(const Eigen::MatrixXd& w, double rel_tol = 1e-12);

/// Frobenius, trace (nuclear) and spectral norms computed from one spectrum.
/// Symmetric inputs use the eigenvalue route; general inputs fall back to SVD.
MatrixNorms norms(const Eigen::MatrixXd& a);

/// Best rank-r approximation of an SPSD matrix from its top-r eigenpairs.
FixedRankFactors best_rank_r(const Eigen::MatrixXd& k, Eigen::Index r);

}  // namespace nyqr
