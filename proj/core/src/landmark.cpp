#include "nyqr/landmark.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace nyqr {

LandmarkSet LandmarkSet::in_sample(std::vector<Eigen::Index> indices) {
  LandmarkSet s;
  s.kind = Kind::in_sample;
  s.indices = std::move(indices);
  if (s.indices.empty()) {
    throw DimensionError("LandmarkSet: m >= 1 required");
  }
  std::vector<Eigen::Index> sorted = s.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DimensionError("LandmarkSet: duplicate in-sample indices");
  }
  return s;
}

LandmarkSet LandmarkSet::out_of_sample(Eigen::MatrixXd points) {
  LandmarkSet s;
  s.kind = Kind::out_of_sample;
  if (points.rows() < 1) {
    throw DimensionError("LandmarkSet: m >= 1 required");
  }
  s.points = std::move(points);
  return s;
}

LandmarkSet uniform_sample(Eigen::Index n, Eigen::Index m, RngSeed seed) {
  if (m < 1 || m > n) {
    throw DimensionError("uniform_sample: need 1 <= m <= n");
  }
  std::mt19937_64 rng(seed.value);
  // Partial Fisher-Yates over the index pool; first m slots are the sample.
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < m; ++i) {
    std::uniform_int_distribution<Eigen::Index> dist(i, n - 1);
    std::swap(pool[i], pool[dist(rng)]);
  }
  pool.resize(static_cast<std::size_t>(m));
  return LandmarkSet::in_sample(std::move(pool));
}

namespace {

// Squared distance from every point to its nearest centroid among the first
// k rows of `centroids`.
void nearest_assign(const DataMatrix& x, const Eigen::MatrixXd& centroids,
                    Eigen::Index k, std::vector<Eigen::Index>& assign,
                    Eigen::VectorXd& dist2) {
  const Eigen::Index n = x.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_j = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double d = x.squared_distance(i, centroids.row(j).transpose());
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    assign[static_cast<std::size_t>(i)] = best_j;
    dist2(i) = best;
  }
}

Eigen::MatrixXd kmeanspp_seed(const DataMatrix& x, Eigen::Index m,
                              std::mt19937_64& rng) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd centroids(m, x.dim());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centroids.row(0) = x.point(first(rng)).transpose();
  Eigen::VectorXd dist2(n);
  std::vector<Eigen::Index> assign(static_cast<std::size_t>(n));
  for (Eigen::Index k = 1; k < m; ++k) {
    nearest_assign(x, centroids, k, assign, dist2);
    const double total = dist2.sum();
    Eigen::Index pick;
    if (total <= 0.0) {
      // All mass at existing centroids (duplicated points); fall back to uniform.
      pick = first(rng);
    } else {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= dist2(i);
        if (target <= 0.0) {
          pick = i;
          break;
        }
      }
    }
    centroids.row(k) = x.point(pick).transpose();
  }
  return centroids;
}

void add_point(const DataMatrix& x, Eigen::Index i, Eigen::VectorXd& acc) {
  if (x.is_sparse()) {
    for (const auto& [idx, val] : x.sparse_points()[static_cast<std::size_t>(i)]) {
      acc(idx) += val;
    }
  } else {
    acc += x.dense_points().row(i).transpose();
  }
}

}  // namespace

LandmarkSet kmeans_landmarks(const DataMatrix& x, Eigen::Index m, RngSeed seed,
                             int max_iter) {
  const Eigen::Index n = x.size();
  if (m < 1 || m > n) {
    throw DimensionError("kmeans_landmarks: need 1 <= m <= n");
  }
  std::mt19937_64 rng(seed.value);
  Eigen::MatrixXd centroids = kmeanspp_seed(x, m, rng);

  std::vector<Eigen::Index> assign(static_cast<std::size_t>(n), -1);
  std::vector<Eigen::Index> prev_assign;
  Eigen::VectorXd dist2(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    prev_assign = assign;
    nearest_assign(x, centroids, m, assign, dist2);

    // Empty-cluster repair: hand the point farthest from its centroid over.
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(m), 0);
    for (Eigen::Index a : assign) ++counts[static_cast<std::size_t>(a)];
    for (Eigen::Index j = 0; j < m; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) continue;
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] > 1 &&
            dist2(i) > far_d) {
          far_d = dist2(i);
          far = i;
        }
      }
      --counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(far)])];
      assign[static_cast<std::size_t>(far)] = j;
      counts[static_cast<std::size_t>(j)] = 1;
      dist2(far) = 0.0;
    }

    if (assign == prev_assign) break;

    centroids.setZero();
    std::vector<double> denom(static_cast<std::size_t>(m), 0.0);
    std::vector<Eigen::VectorXd> sums(static_cast<std::size_t>(m),
                                      Eigen::VectorXd::Zero(x.dim()));
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(assign[static_cast<std::size_t>(i)]);
      add_point(x, i, sums[j]);
      denom[j] += 1.0;
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      centroids.row(j) = sums[static_cast<std::size_t>(j)].transpose() /
                         denom[static_cast<std::size_t>(j)];
    }
  }
  return LandmarkSet::out_of_sample(std::move(centroids));
}

}  // namespace nyqr
