#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "nyqr/linalg.hpp"

namespace nyqr {

struct DegenerateDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A set of n points in R^p, stored dense (row per point) or sparse
/// (sorted index-value pairs per point). Squared norms are cached so that
/// squared distances on sparse data can use ||x||^2 + ||z||^2 - 2 x.z.
class DataMatrix {
 public:
  using SparsePoint = std::vector<std::pair<Eigen::Index, double>>;

  static DataMatrix dense(Eigen::MatrixXd points);
  static DataMatrix sparse(std::vector<SparsePoint> points, Eigen::Index dim);

  Eigen::Index size() const { return n_; }
  Eigen::Index dim() const { return p_; }
  bool is_sparse() const { return sparse_storage_; }

  double squared_norm(Eigen::Index i) const { return sq_norms_(i); }
  double squared_distance(Eigen::Index i, Eigen::Index j) const;
  double squared_distance(Eigen::Index i, const Eigen::VectorXd& z) const;

  /// Densified copy of point i.
  Eigen::VectorXd point(Eigen::Index i) const;
  /// Coordinate-wise sample mean.
  Eigen::VectorXd mean() const;

  /// New DataMatrix with the given points, order preserved.
  DataMatrix select(const std::vector<Eigen::Index>& indices) const;

  const Eigen::MatrixXd& dense_points() const;
  const std::vector<SparsePoint>& sparse_points() const { return sp_; }

 private:
  DataMatrix() = default;

  bool sparse_storage_ = false;
  Eigen::Index n_ = 0;
  Eigen::Index p_ = 0;
  Eigen::MatrixXd pts_;          // dense: n x p
  std::vector<SparsePoint> sp_;  // sparse
  Eigen::VectorXd sq_norms_;
};

}  // namespace nyqr
