#include "nyqr/verify.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "nyqr/nystrom.hpp"

namespace nyqr {

namespace {

constexpr double kTraceSlack = 1e-9;

double trace_error(const Eigen::MatrixXd& k, const FixedRankFactors& f) {
  return norms(k - reconstruct(f, k.rows())).trace;
}

}  // namespace

Eigen::MatrixXd empirical_inner_matrix(const Eigen::MatrixXd& k,
                                       const Eigen::MatrixXd& c_block) {
  if (k.rows() != k.cols() || k.rows() != c_block.rows()) {
    throw DimensionError("empirical_inner_matrix: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (k + k.transpose()));
  if (llt.info() != Eigen::Success) {
    throw SingularKernelError("empirical_inner_matrix: kernel matrix singular to tolerance");
  }
  const Eigen::MatrixXd solved = llt.solve(c_block);  // K^{-1} C
  const Eigen::MatrixXd w_e = c_block.transpose() * solved;
  return 0.5 * (w_e + w_e.transpose());
}

OutOfSampleDiagnostics theorem3_diagnostics(const Eigen::MatrixXd& k,
                                            const NystromPair& pair) {
  OutOfSampleDiagnostics d;
  d.w_e = empirical_inner_matrix(k, pair.c_block);
  d.e_mat = 0.5 * (pair.w_block + pair.w_block.transpose()) - d.w_e;

  const Eigen::MatrixXd we_inv_sqrt = spsd_inv_sqrt(d.w_e);
  d.eta = norms(we_inv_sqrt * d.e_mat * we_inv_sqrt).spectral;

  const Eigen::MatrixXd g_w = rank_m_nystrom(pair, 1e-12, k.rows());
  NystromPair pair_e{pair.c_block, d.w_e};
  const Eigen::MatrixXd g_we = rank_m_nystrom(pair_e, 1e-12, k.rows());
  const double k_spec = norms(k).spectral;
  d.observed_rel_spec = norms(g_w - g_we).spectral / k_spec;

  d.bound = d.eta < 1.0 ? d.eta / (1.0 - d.eta)
                        : std::numeric_limits<double>::infinity();
  d.bound_holds = d.observed_rel_spec <= d.bound + 1e-9;
  return d;
}

Theorem1Check check_theorem1(const Eigen::MatrixXd& k,
                             const std::vector<Eigen::Index>& indices,
                             Eigen::Index r) {
  const NystromPair pair = sample_columns(k, indices);
  Theorem1Check out;
  out.trace_nys = trace_error(k, standard_nystrom(pair, r));
  out.trace_opt = trace_error(k, modified_nystrom(pair, r));
  out.holds = out.trace_opt <= out.trace_nys + kTraceSlack * norms(k).trace;
  return out;
}

Theorem2Check check_theorem2(const Eigen::MatrixXd& k,
                             const std::vector<Eigen::Index>& indices_small,
                             const std::vector<Eigen::Index>& indices_large,
                             Eigen::Index r) {
  for (Eigen::Index idx : indices_small) {
    if (std::find(indices_large.begin(), indices_large.end(), idx) ==
        indices_large.end()) {
      throw DimensionError("check_theorem2: index sets not nested");
    }
  }
  Theorem2Check out;
  out.err_small =
      trace_error(k, modified_nystrom(sample_columns(k, indices_small), r));
  out.err_large =
      trace_error(k, modified_nystrom(sample_columns(k, indices_large), r));
  out.holds = out.err_large <= out.err_small + kTraceSlack * norms(k).trace;
  return out;
}

bool check_remark1(const Eigen::MatrixXd& k_blocked, Eigen::Index m, Eigen::Index r) {
  std::vector<Eigen::Index> indices(static_cast<std::size_t>(m));
  std::iota(indices.begin(), indices.end(), Eigen::Index{0});
  const NystromPair pair = sample_columns(k_blocked, indices);
  const Eigen::MatrixXd g_nys = reconstruct(standard_nystrom(pair, r), k_blocked.rows());
  const Eigen::MatrixXd g_opt = reconstruct(modified_nystrom(pair, r), k_blocked.rows());
  const double scale = std::max(g_nys.norm(), 1e-300);
  return (g_nys - g_opt).norm() <= 1e-8 * scale;
}

}  // namespace nyqr
