#include "nyqr/kernel.hpp"

#include <cmath>
#include <string>

namespace nyqr {

double gaussian_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& z, double c) {
  if (!(c > 0.0)) {
    throw DimensionError("gaussian_kernel: bandwidth c must be positive");
  }
  if (x.size() != z.size()) {
    throw DimensionError("gaussian_kernel: dimension mismatch");
  }
  return std::exp(-(x - z).squaredNorm() / c);
}

double bandwidth_heuristic(const DataMatrix& x) {
  if (x.size() < 2) {
    throw DimensionError("bandwidth_heuristic: need n >= 2");
  }
  const Eigen::VectorXd mu = x.mean();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    acc += x.squared_distance(i, mu);
  }
  const double c = acc / static_cast<double>(x.size());
  if (c <= 0.0) {
    throw DegenerateDataError("bandwidth_heuristic: all points identical");
  }
  return c;
}

Eigen::MatrixXd build_kernel_matrix(const DataMatrix& x, const KernelConfig& cfg,
                                    Eigen::Index dense_cap) {
  const Eigen::Index n = x.size();
  if (n > dense_cap) {
    throw DimensionError("build_kernel_matrix: n = " + std::to_string(n) +
                         " exceeds dense cap " + std::to_string(dense_cap));
  }
  if (!(cfg.bandwidth_c > 0.0)) {
    throw DimensionError("build_kernel_matrix: bandwidth c must be positive");
  }
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::exp(-x.squared_distance(i, j) / cfg.bandwidth_c);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

NystromPair build_nystrom_pair(const DataMatrix& x, const LandmarkSet& landmarks,
                               const KernelConfig& cfg) {
  if (!(cfg.bandwidth_c > 0.0)) {
    throw DimensionError("build_nystrom_pair: bandwidth c must be positive");
  }
  const Eigen::Index n = x.size();
  const Eigen::Index m = landmarks.size();
  NystromPair pair;
  pair.c_block.resize(n, m);
  pair.w_block.resize(m, m);

  if (landmarks.kind == LandmarkSet::Kind::in_sample) {
    for (Eigen::Index idx : landmarks.indices) {
      if (idx < 0 || idx >= n) {
        throw DimensionError("build_nystrom_pair: landmark index out of range");
      }
    }
    // Same entry formula as build_kernel_matrix so in-sample extraction is exact.
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index zj = landmarks.indices[static_cast<std::size_t>(j)];
      for (Eigen::Index i = 0; i < n; ++i) {
        pair.c_block(i, j) =
            i == zj ? 1.0 : std::exp(-x.squared_distance(i, zj) / cfg.bandwidth_c);
      }
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index zi = landmarks.indices[static_cast<std::size_t>(i)];
      pair.w_block.row(i) = pair.c_block.row(zi);
    }
  } else {
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::VectorXd z = landmarks.points.row(j).transpose();
      for (Eigen::Index i = 0; i < n; ++i) {
        pair.c_block(i, j) = std::exp(-x.squared_distance(i, z) / cfg.bandwidth_c);
      }
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      pair.w_block(i, i) = 1.0;
      for (Eigen::Index j = i + 1; j < m; ++j) {
        const double d =
            (landmarks.points.row(i) - landmarks.points.row(j)).squaredNorm();
        const double v = std::exp(-d / cfg.bandwidth_c);
        pair.w_block(i, j) = v;
        pair.w_block(j, i) = v;
      }
    }
  }
  return pair;
}

}  // namespace nyqr
