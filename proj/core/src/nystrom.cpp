#include "nyqr/nystrom.hpp"

#include <cmath>
#include <random>
#include <string>

namespace nyqr {

namespace {

void check_cap(Eigen::Index n, Eigen::Index cap, const char* what) {
  if (n > cap) {
    throw DimensionError(std::string(what) + ": n = " + std::to_string(n) +
                         " exceeds dense cap " + std::to_string(cap));
  }
}

// Fill columns [s, r) of u with an orthonormal completion of the first s
// columns, from a QR of a seeded random residual block.
void complete_orthonormal(Eigen::MatrixXd& u, Eigen::Index s) {
  const Eigen::Index n = u.rows();
  const Eigen::Index r = u.cols();
  if (s >= r) return;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd block(n, r - s);
  for (Eigen::Index j = 0; j < r - s; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      block(i, j) = gauss(rng);
    }
  }
  if (s > 0) {
    // Two projection passes keep the completion orthogonal to U_s.
    block -= u.leftCols(s) * (u.leftCols(s).transpose() * block);
    block -= u.leftCols(s) * (u.leftCols(s).transpose() * block);
  }
  const ThinQR qr = thin_qr(block);
  u.rightCols(r - s) = qr.q;
}

}  // namespace

NystromPair sample_columns(const Eigen::MatrixXd& k,
                           const std::vector<Eigen::Index>& indices) {
  const Eigen::Index n = k.rows();
  const auto m = static_cast<Eigen::Index>(indices.size());
  NystromPair pair;
  pair.c_block.resize(n, m);
  pair.w_block.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index idx = indices[static_cast<std::size_t>(j)];
    if (idx < 0 || idx >= n) {
      throw DimensionError("sample_columns: index out of range");
    }
    for (Eigen::Index prev = 0; prev < j; ++prev) {
      if (indices[static_cast<std::size_t>(prev)] == idx) {
        throw DimensionError("sample_columns: duplicate index");
      }
    }
    pair.c_block.col(j) = k.col(idx);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    pair.w_block.row(i) = pair.c_block.row(indices[static_cast<std::size_t>(i)]);
  }
  return pair;
}

Eigen::MatrixXd rank_m_nystrom(const NystromPair& pair, double rel_tol,
                               Eigen::Index dense_cap) {
  check_cap(pair.c_block.rows(), dense_cap, "rank_m_nystrom");
  const Eigen::MatrixXd g =
      pair.c_block * spsd_pinv(pair.w_block, rel_tol) * pair.c_block.transpose();
  return 0.5 * (g + g.transpose());
}

FixedRankFactors standard_nystrom(const NystromPair& pair, Eigen::Index r,
                                  double rel_tol) {
  const Eigen::Index m = pair.w_block.rows();
  if (r < 1 || r > m) {
    throw DimensionError("standard_nystrom: need 1 <= r <= m");
  }
  const SymEigen ew = sym_evd(pair.w_block);
  const double w_cutoff = rel_tol * std::max(ew.values(0), 0.0);

  // L = C V_r (Sigma_r^+)^{1/2}; thresholded eigenvalues contribute nothing.
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double lam = ew.values(i);
    if (lam > w_cutoff && lam > 0.0) {
      inv_sqrt(i) = 1.0 / std::sqrt(lam);
    }
  }
  const Eigen::MatrixXd l_nys =
      pair.c_block * ew.vectors.leftCols(r) * inv_sqrt.asDiagonal();

  const SymEigen et = sym_evd(l_nys.transpose() * l_nys);
  const double t_cutoff = rel_tol * std::max(et.values(0), 0.0);

  FixedRankFactors out;
  out.u_hat = l_nys * et.vectors;
  out.lambda_hat = Eigen::VectorXd::Zero(r);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < r; ++i) {
    const double sig = et.values(i);
    if (sig > t_cutoff && sig > 0.0) {
      out.u_hat.col(i) /= std::sqrt(sig);
      out.lambda_hat(i) = sig;
      ++rank;
    } else {
      break;  // descending order: everything after is noise
    }
  }
  complete_orthonormal(out.u_hat, rank);
  return out;
}

FixedRankFactors modified_nystrom(const NystromPair& pair, Eigen::Index r,
                                  double rel_tol) {
  const Eigen::Index m = pair.w_block.rows();
  if (r < 1 || r > m) {
    throw DimensionError("modified_nystrom: need 1 <= r <= m");
  }
  const ThinQR qr = thin_qr(pair.c_block);
  const Eigen::MatrixXd core =
      qr.r * spsd_pinv(pair.w_block, rel_tol) * qr.r.transpose();
  const SymEigen eig = sym_evd(core);  // symmetrizes internally
  FixedRankFactors out;
  out.u_hat = qr.q * eig.vectors.leftCols(r);
  out.lambda_hat = eig.values.head(r).cwiseMax(0.0);
  return out;
}

FixedRankFactors evd_baseline(const Eigen::MatrixXd& k, Eigen::Index r,
                              Eigen::Index dense_cap) {
  check_cap(k.rows(), dense_cap, "evd_baseline");
  return best_rank_r(k, r);
}

Eigen::MatrixXd reconstruct(const FixedRankFactors& f, Eigen::Index dense_cap) {
  check_cap(f.u_hat.rows(), dense_cap, "reconstruct");
  const Eigen::MatrixXd g =
      f.u_hat * f.lambda_hat.asDiagonal() * f.u_hat.transpose();
  return 0.5 * (g + g.transpose());
}

}  // namespace nyqr
