#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nyqr/kernel.hpp"
#include "nyqr/linalg.hpp"

namespace nyqr {

struct SingularKernelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Out-of-sample perturbation diagnostics: W_e = C^T K^{-1} C, E = W - W_e,
/// eta = ||W_e^{-1/2} E W_e^{-1/2}||_2, and the relative spectral gap between
/// C W^+ C^T and C W_e^+ C^T with its eta/(1-eta) bound.
struct OutOfSampleDiagnostics {
  Eigen::MatrixXd w_e;
  Eigen::MatrixXd e_mat;
  double eta = 0.0;
  double observed_rel_spec = 0.0;
  double bound = 0.0;  // eta / (1 - eta); infinity when eta >= 1
  bool bound_holds = false;
};

struct Theorem1Check {
  double trace_nys = 0.0;
  double trace_opt = 0.0;
  bool holds = false;
};

struct Theorem2Check {
  double err_small = 0.0;
  double err_large = 0.0;
  bool holds = false;
};

/// C^T K^{-1} C via a positive definite solve; never inverts K explicitly.
Eigen::MatrixXd empirical_inner_matrix(const Eigen::MatrixXd& k,
                                       const Eigen::MatrixXd& c_block);

OutOfSampleDiagnostics theorem3_diagnostics(const Eigen::MatrixXd& k,
                                            const NystromPair& pair);

/// Trace-norm dominance of the QR-based method over the standard method for
/// in-sample landmarks.
Theorem1Check check_theorem1(const Eigen::MatrixXd& k,
                             const std::vector<Eigen::Index>& indices,
                             Eigen::Index r);

/// Trace-norm monotonicity of the QR-based method under nested index sets.
Theorem2Check check_theorem2(const Eigen::MatrixXd& k,
                             const std::vector<Eigen::Index>& indices_small,
                             const std::vector<Eigen::Index>& indices_large,
                             Eigen::Index r);

/// When the off-diagonal block against the first m indices is zero, both
/// pipelines reconstruct the same rank-r approximation.
bool check_remark1(const Eigen::MatrixXd& k_blocked, Eigen::Index m, Eigen::Index r);

}  // namespace nyqr
