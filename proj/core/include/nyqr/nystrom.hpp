#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nyqr/kernel.hpp"
#include "nyqr/linalg.hpp"

namespace nyqr {

/// In-sample pair by slicing an SPSD matrix: C = K(:, idx), W = K(idx, idx).
NystromPair sample_columns(const Eigen::MatrixXd& k,
                           const std::vector<Eigen::Index>& indices);

/// Materialized rank-m approximation G = C W^+ C^T.
Eigen::MatrixXd rank_m_nystrom(const NystromPair& pair, double rel_tol = 1e-12,
                               Eigen::Index dense_cap = 8000);

/// Standard fixed-rank pipeline: filter W to rank r, then recover the exact
/// eigenpairs of C [W]_r^+ C^T.
FixedRankFactors standard_nystrom(const NystromPair& pair, Eigen::Index r,
                                  double rel_tol = 1e-12);

/// QR-based pipeline: eigenpairs of the best rank-r approximation of
/// C W^+ C^T, via thin QR of C and an m x m eigendecomposition.
FixedRankFactors modified_nystrom(const NystromPair& pair, Eigen::Index r,
                                  double rel_tol = 1e-12);

/// Exact best rank-r factors of a materialized SPSD matrix (experiment baseline).
FixedRankFactors evd_baseline(const Eigen::MatrixXd& k, Eigen::Index r,
                              Eigen::Index dense_cap = 8000);

/// Materialize u_hat * diag(lambda_hat) * u_hat^T.
Eigen::MatrixXd reconstruct(const FixedRankFactors& f, Eigen::Index dense_cap = 8000);

}  // namespace nyqr
