#pragma once

#include <Eigen/Dense>

#include "nyqr/data_matrix.hpp"
#include "nyqr/landmark.hpp"

namespace nyqr {

struct KernelConfig {
  enum class Family { gaussian };

  Family family = Family::gaussian;
  double bandwidth_c = 1.0;
};

/// Cross-kernel block C (n x m) and landmark kernel W (m x m).
struct NystromPair {
  Eigen::MatrixXd c_block;
  Eigen::MatrixXd w_block;
};

/// kappa(x, z) = exp(-||x - z||^2 / c), c > 0.
double gaussian_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& z, double c);

/// Averaged squared distance to the sample mean: (1/n) sum ||x_i - mu||^2.
/// Throws DegenerateDataError when all points coincide.
double bandwidth_heuristic(const DataMatrix& x);

/// Dense n x n Gaussian kernel matrix. Refuses n beyond dense_cap.
Eigen::MatrixXd build_kernel_matrix(const DataMatrix& x, const KernelConfig& cfg,
                                    Eigen::Index dense_cap = 8000);

/// C and W for the given landmarks. For in-sample landmarks this follows the
/// same arithmetic path as build_kernel_matrix, so the pair equals slicing
/// the full kernel matrix exactly.
NystromPair build_nystrom_pair(const DataMatrix& x, const LandmarkSet& landmarks,
                               const KernelConfig& cfg);

}  // namespace nyqr
