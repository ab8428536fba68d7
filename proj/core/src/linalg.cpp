#include "nyqr/linalg.hpp"

#include <cmath>

namespace nyqr {

namespace {

void require_finite(const Eigen::MatrixXd& a, const char* what) {
  if (!a.allFinite()) {
    throw NonFiniteError(std::string(what) + ": non-finite entries");
  }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a) {
  return 0.5 * (a + a.transpose());
}

}  // namespace

ThinQR thin_qr(const Eigen::MatrixXd& a) {
  if (a.rows() < a.cols()) {
    throw DimensionError("thin_qr: need n >= m");
  }
  require_finite(a, "thin_qr");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::Index m = a.cols();
  ThinQR out;
  out.q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), m);
  out.r = qr.matrixQR().topRows(m).template triangularView<Eigen::Upper>();
  return out;
}

SymEigen sym_evd(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("sym_evd: square matrix required");
  }
  require_finite(a, "sym_evd");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(a));
  SymEigen out;
  // Eigen sorts ascending; flip to descending.
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("sym_eigenvalues: square matrix required");
  }
  require_finite(a, "sym_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(a),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

Eigen::MatrixXd spsd_pinv(const Eigen::MatrixXd& w, double rel_tol) {
  const SymEigen eig = sym_evd(w);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(eig.values.size());
  const double lambda_max = eig.values.size() > 0 ? std::max(eig.values(0), 0.0) : 0.0;
  const double cutoff = rel_tol * lambda_max;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lam = std::max(eig.values(i), 0.0);
    if (lam > cutoff && lam > 0.0) {
      inv(i) = 1.0 / lam;
    }
  }
  return symmetrized(eig.vectors * inv.asDiagonal() * eig.vectors.transpose());
}

Eigen::MatrixXd spsd_inv_sqrt(const Eigen::MatrixXd& w, double rel_tol) {
  const SymEigen eig = sym_evd(w);
  const Eigen::Index m = eig.values.size();
  const double lambda_max = m > 0 ? std::max(eig.values(0), 0.0) : 0.0;
  const double cutoff = rel_tol * lambda_max;
  Eigen::VectorXd inv_sqrt(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lam = eig.values(i);
    if (!(lam > cutoff) || lam <= 0.0) {
      throw NotPositiveDefiniteError("spsd_inv_sqrt: matrix not positive definite");
    }
    inv_sqrt(i) = 1.0 / std::sqrt(lam);
  }
  return symmetrized(eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose());
}

MatrixNorms norms(const Eigen::MatrixXd& a) {
  require_finite(a, "norms");
  MatrixNorms out;
  Eigen::VectorXd sv;
  if (a.rows() == a.cols() &&
      (a - a.transpose()).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    sv = sym_eigenvalues(a).cwiseAbs();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    sv = svd.singularValues();
  }
  out.frobenius = sv.norm();
  out.trace = sv.sum();
  out.spectral = sv.size() > 0 ? sv.maxCoeff() : 0.0;
  return out;
}

FixedRankFactors best_rank_r(const Eigen::MatrixXd& k, Eigen::Index r) {
  if (r < 1 || r > k.rows()) {
    throw DimensionError("best_rank_r: rank out of range");
  }
  const SymEigen eig = sym_evd(k);
  FixedRankFactors out;
  out.u_hat = eig.vectors.leftCols(r);
  out.lambda_hat = eig.values.head(r).cwiseMax(0.0);
  return out;
}

}  // namespace nyqr
