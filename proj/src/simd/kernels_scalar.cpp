#include <limits>
#include <vector>

#include "farmrisk/simd/kernels.hpp"

namespace farmrisk::simd::scalar {

namespace {

// Four-lane sum: ((l0 + l2) + (l1 + l3)) + sequential tail.
double lane_sum(const double* x, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) acc[l] += x[i + l];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return ((acc[0] + acc[2]) + (acc[1] + acc[3])) + tail;
}

}  // namespace

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double d = a[i + l] - b[i + l];
      acc[l] += d * d;
    }
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    tail += d * d;
  }
  return ((acc[0] + acc[2]) + (acc[1] + acc[3])) + tail;
}

double assign_nearest(const double* points_xy, std::size_t n, const double* centroids_xy,
                      std::size_t k, std::uint32_t* labels) {
  double distortion = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double px = points_xy[2 * i];
    const double py = points_xy[2 * i + 1];
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t label = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double dx = px - centroids_xy[2 * c];
      const double dy = py - centroids_xy[2 * c + 1];
      const double d = dx * dx + dy * dy;
      if (d < best) {
        best = d;
        label = static_cast<std::uint32_t>(c);
      }
    }
    labels[i] = label;
    distortion += best;
  }
  return distortion;
}

void double_center(const double* dist, std::size_t n, double* gram) {
  const std::size_t nn = n * n;
  for (std::size_t i = 0; i < nn; ++i) gram[i] = dist[i] * dist[i];
  std::vector<double> row_mean(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = lane_sum(gram + i * n, n);
    total += s;
    row_mean[i] = s / static_cast<double>(n);
  }
  const double grand = total / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double* row = gram + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = -0.5 * (((row[j] - row_mean[i]) - row_mean[j]) + grand);
    }
  }
}

}  // namespace farmrisk::simd::scalar
