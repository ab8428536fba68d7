#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nyqr/data_matrix.hpp"

namespace nyqr {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Either m distinct in-sample indices (defining an implicit sampling
/// matrix P) or m explicit out-of-sample points.
struct LandmarkSet {
  enum class Kind { in_sample, out_of_sample };

  Kind kind = Kind::in_sample;
  std::vector<Eigen::Index> indices;  // in-sample, sampled order preserved
  Eigen::MatrixXd points;             // out-of-sample, m x p

  Eigen::Index size() const {
    return kind == Kind::in_sample ? static_cast<Eigen::Index>(indices.size())
                                   : points.rows();
  }

  static LandmarkSet in_sample(std::vector<Eigen::Index> indices);
  static LandmarkSet out_of_sample(Eigen::MatrixXd points);
};

/// m distinct indices drawn uniformly without replacement from [0, n).
LandmarkSet uniform_sample(Eigen::Index n, Eigen::Index m, RngSeed seed);

/// Lloyd's algorithm with k-means++ seeding; empty clusters repaired by
/// reassigning the point farthest from its current centroid.
LandmarkSet kmeans_landmarks(const DataMatrix& x, Eigen::Index m, RngSeed seed,
                             int max_iter = 10);

}  // namespace nyqr
