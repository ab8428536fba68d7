#include "nyqr/data_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace nyqr {

DataMatrix DataMatrix::dense(Eigen::MatrixXd points) {
  if (!points.allFinite()) {
    throw NonFiniteError("DataMatrix: non-finite coordinates");
  }
  DataMatrix d;
  d.sparse_storage_ = false;
  d.n_ = points.rows();
  d.p_ = points.cols();
  d.sq_norms_ = points.rowwise().squaredNorm();
  d.pts_ = std::move(points);
  return d;
}

DataMatrix DataMatrix::sparse(std::vector<SparsePoint> points, Eigen::Index dim) {
  DataMatrix d;
  d.sparse_storage_ = true;
  d.n_ = static_cast<Eigen::Index>(points.size());
  d.p_ = dim;
  d.sq_norms_.resize(d.n_);
  for (Eigen::Index i = 0; i < d.n_; ++i) {
    double sq = 0.0;
    Eigen::Index prev = -1;
    for (const auto& [idx, val] : points[i]) {
      if (idx <= prev || idx >= dim) {
        throw DimensionError("DataMatrix: sparse indices must be strictly increasing and < dim");
      }
      if (!std::isfinite(val)) {
        throw NonFiniteError("DataMatrix: non-finite coordinates");
      }
      prev = idx;
      sq += val * val;
    }
    d.sq_norms_(i) = sq;
  }
  d.sp_ = std::move(points);
  return d;
}

double DataMatrix::squared_distance(Eigen::Index i, Eigen::Index j) const {
  if (i == j) return 0.0;
  if (!sparse_storage_) {
    return (pts_.row(i) - pts_.row(j)).squaredNorm();
  }
  // Merge-join dot product over the two sorted index lists.
  double dot = 0.0;
  const auto& a = sp_[i];
  const auto& b = sp_[j];
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia].first < b[ib].first) {
      ++ia;
    } else if (a[ia].first > b[ib].first) {
      ++ib;
    } else {
      dot += a[ia].second * b[ib].second;
      ++ia;
      ++ib;
    }
  }
  return std::max(0.0, sq_norms_(i) + sq_norms_(j) - 2.0 * dot);
}

double DataMatrix::squared_distance(Eigen::Index i, const Eigen::VectorXd& z) const {
  if (!sparse_storage_) {
    return std::max(0.0, (pts_.row(i).transpose() - z).squaredNorm());
  }
  double dot = 0.0;
  for (const auto& [idx, val] : sp_[i]) {
    dot += val * z(idx);
  }
  return std::max(0.0, sq_norms_(i) + z.squaredNorm() - 2.0 * dot);
}

Eigen::VectorXd DataMatrix::point(Eigen::Index i) const {
  if (!sparse_storage_) {
    return pts_.row(i).transpose();
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p_);
  for (const auto& [idx, val] : sp_[i]) {
    v(idx) = val;
  }
  return v;
}

Eigen::VectorXd DataMatrix::mean() const {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(p_);
  if (!sparse_storage_) {
    mu = pts_.colwise().mean().transpose();
  } else {
    for (const auto& pt : sp_) {
      for (const auto& [idx, val] : pt) {
        mu(idx) += val;
      }
    }
    mu /= static_cast<double>(n_);
  }
  return mu;
}

DataMatrix DataMatrix::select(const std::vector<Eigen::Index>& indices) const {
  for (Eigen::Index idx : indices) {
    if (idx < 0 || idx >= n_) {
      throw DimensionError("DataMatrix::select: index out of range");
    }
  }
  if (!sparse_storage_) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), p_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      out.row(static_cast<Eigen::Index>(k)) = pts_.row(indices[k]);
    }
    return dense(std::move(out));
  }
  std::vector<SparsePoint> out;
  out.reserve(indices.size());
  for (Eigen::Index idx : indices) {
    out.push_back(sp_[idx]);
  }
  return sparse(std::move(out), p_);
}

const Eigen::MatrixXd& DataMatrix::dense_points() const {
  if (sparse_storage_) {
    throw DimensionError("DataMatrix: dense_points() on sparse storage");
  }
  return pts_;
}

}  // namespace nyqr
