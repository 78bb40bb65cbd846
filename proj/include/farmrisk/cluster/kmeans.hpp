#pragma once

#include <cstdint>
#include <vector>

#include "farmrisk/common/matrix.hpp"

namespace farmrisk {

struct KMeansOptions {
  std::size_t clusters = 4;
  std::uint64_t seed = 0;
  int max_iter = 300;
  int restarts = 20;
};

struct ClusteringResult {
  std::size_t clusters = 0;
  Matrix centroids;                     // clusters x dim
  std::vector<std::uint32_t> assignment;
  // Sum of squared point-to-centroid distances.
  double distortion = 0.0;
  int iterations = 0;
  // Distortion after each assignment step of the winning run.
  std::vector<double> history;
};

// Lloyd iteration from K distinct random data points until the assignment is
// stable or max_iter; an empty cluster is reseeded at the point farthest from
// its centroid. Best of `restarts` runs by distortion (earliest wins ties).
// Throws ParameterError unless 1 <= K <= n.
ClusteringResult kmeans(const Matrix& points, const KMeansOptions& options);

// Recomputes sum ||x_i - c_assign(i)||^2 from the fields.
double distortion_of(const Matrix& points, const Matrix& centroids,
                     const std::vector<std::uint32_t>& assignment);

}  // namespace farmrisk
