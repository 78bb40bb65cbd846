#include "farmrisk/cluster/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "farmrisk/common/rng.hpp"
#include "farmrisk/simd/kernels.hpp"

namespace farmrisk {

namespace {

double assign(const Matrix& points, const Matrix& centroids, std::vector<std::uint32_t>& labels) {
  if (points.cols() == 2) return simd::assign_nearest(points.data(), centroids.data(), labels);
  double total = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t label = 0;
    for (std::size_t c = 0; c < centroids.rows(); ++c) {
      const double d = simd::squared_distance(points.row(i), centroids.row(c));
      if (d < best) {
        best = d;
        label = static_cast<std::uint32_t>(c);
      }
    }
    labels[i] = label;
    total += best;
  }
  return total;
}

// Means of the assigned points; empty clusters move to the farthest point.
void update(const Matrix& points, const std::vector<std::uint32_t>& labels, Matrix& centroids) {
  const std::size_t k = centroids.rows();
  const std::size_t dim = points.cols();
  Matrix sums(k, dim);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    auto s = sums.row(labels[i]);
    const auto p = points.row(i);
    for (std::size_t d = 0; d < dim; ++d) s[d] += p[d];
    ++counts[labels[i]];
  }
  std::vector<double> far;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (std::size_t d = 0; d < dim; ++d) {
      centroids(c, d) = sums(c, d) / static_cast<double>(counts[c]);
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    if (far.empty()) {
      far.resize(points.rows());
      for (std::size_t i = 0; i < points.rows(); ++i) {
        far[i] = simd::squared_distance(points.row(i), centroids.row(labels[i]));
      }
    }
    const auto it = std::max_element(far.begin(), far.end());
    const auto idx = static_cast<std::size_t>(it - far.begin());
    const auto p = points.row(idx);
    std::copy(p.begin(), p.end(), centroids.row(c).begin());
    *it = -1.0;
  }
}

ClusteringResult single_run(const Matrix& points, std::size_t k, int max_iter, Rng& rng) {
  const std::size_t n = points.rows();
  ClusteringResult r;
  r.clusters = k;
  r.centroids = Matrix(k, points.cols());
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t c = 0; c < k; ++c) {
    const auto j = c + uniform_below(rng, n - c);
    std::swap(idx[c], idx[j]);
    const auto p = points.row(idx[c]);
    std::copy(p.begin(), p.end(), r.centroids.row(c).begin());
  }
  r.assignment.assign(n, 0);
  assign(points, r.centroids, r.assignment);
  std::vector<std::uint32_t> next(n);
  bool stable = false;
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    update(points, r.assignment, r.centroids);
    r.distortion = assign(points, r.centroids, next);
    r.history.push_back(r.distortion);
    stable = next == r.assignment;
    r.assignment.swap(next);
    if (stable) break;
  }
  if (!stable) {
    r.iterations = max_iter;
    update(points, r.assignment, r.centroids);
    r.distortion = distortion_of(points, r.centroids, r.assignment);
  }
  return r;
}

}  // namespace

double distortion_of(const Matrix& points, const Matrix& centroids,
                     const std::vector<std::uint32_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    total += simd::squared_distance(points.row(i), centroids.row(assignment[i]));
  }
  return total;
}

ClusteringResult kmeans(const Matrix& points, const KMeansOptions& options) {
  const std::size_t n = points.rows();
  const std::size_t k = options.clusters;
  if (k < 1) throw ParameterError("K must be >= 1");
  if (k > n) {
    throw ParameterError("K = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " points");
  }
  if (options.restarts < 1 || options.max_iter < 1) {
    throw ParameterError("restarts and max_iter must be >= 1");
  }
  ClusteringResult best;
  for (int run = 0; run < options.restarts; ++run) {
    Rng rng = make_rng(derive_seed(options.seed, static_cast<std::uint64_t>(run)));
    ClusteringResult r = single_run(points, k, options.max_iter, rng);
    if (run == 0 || r.distortion < best.distortion) best = std::move(r);
  }
  return best;
}

}  // namespace farmrisk
