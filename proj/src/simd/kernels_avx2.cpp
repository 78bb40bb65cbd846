// Compiled with -mavx2 -ffp-contract=off; only entered when CPUID reports AVX2.
#include <limits>
#include <vector>

#include "farmrisk/simd/kernels.hpp"

#if defined(FARMRISK_HAVE_AVX2)
#include <immintrin.h>

namespace farmrisk::simd::avx2 {

namespace {

// (l0 + l2) + (l1 + l3), matching the scalar lane order.
inline double reduce_lanes(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

double lane_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return reduce_lanes(acc) + tail;
}

}  // namespace

double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    tail += d * d;
  }
  return reduce_lanes(acc) + tail;
}

double assign_nearest(const double* points_xy, std::size_t n, const double* centroids_xy,
                      std::size_t k, std::uint32_t* labels) {
  double distortion = 0.0;
  std::size_t i = 0;
  alignas(32) double best_out[4];
  alignas(32) double label_out[4];
  for (; i + 4 <= n; i += 4) {
    const __m256d p01 = _mm256_loadu_pd(points_xy + 2 * i);      // x0 y0 x1 y1
    const __m256d p23 = _mm256_loadu_pd(points_xy + 2 * i + 4);  // x2 y2 x3 y3
    // Lanes hold points in order 0, 2, 1, 3.
    const __m256d xs = _mm256_unpacklo_pd(p01, p23);
    const __m256d ys = _mm256_unpackhi_pd(p01, p23);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d label = _mm256_setzero_pd();
    for (std::size_t c = 0; c < k; ++c) {
      const __m256d dx = _mm256_sub_pd(xs, _mm256_set1_pd(centroids_xy[2 * c]));
      const __m256d dy = _mm256_sub_pd(ys, _mm256_set1_pd(centroids_xy[2 * c + 1]));
      const __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      const __m256d closer = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, d, closer);
      label = _mm256_blendv_pd(label, _mm256_set1_pd(static_cast<double>(c)), closer);
    }
    _mm256_store_pd(best_out, best);
    _mm256_store_pd(label_out, label);
    static constexpr int kLane[4] = {0, 2, 1, 3};  // point offset -> lane
    for (int p = 0; p < 4; ++p) {
      labels[i + static_cast<std::size_t>(p)] = static_cast<std::uint32_t>(label_out[kLane[p]]);
      distortion += best_out[kLane[p]];
    }
  }
  for (; i < n; ++i) {
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
  std::size_t i = 0;
  for (; i + 4 <= nn; i += 4) {
    const __m256d d = _mm256_loadu_pd(dist + i);
    _mm256_storeu_pd(gram + i, _mm256_mul_pd(d, d));
  }
  for (; i < nn; ++i) gram[i] = dist[i] * dist[i];

  std::vector<double> row_mean(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double s = lane_sum(gram + r * n, n);
    total += s;
    row_mean[r] = s / static_cast<double>(n);
  }
  const double grand = total / (static_cast<double>(n) * static_cast<double>(n));
  const __m256d half = _mm256_set1_pd(-0.5);
  const __m256d g = _mm256_set1_pd(grand);
  for (std::size_t r = 0; r < n; ++r) {
    double* row = gram + r * n;
    const __m256d ri = _mm256_set1_pd(row_mean[r]);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d v = _mm256_loadu_pd(row + j);
      const __m256d rj = _mm256_loadu_pd(row_mean.data() + j);
      const __m256d t = _mm256_add_pd(_mm256_sub_pd(_mm256_sub_pd(v, ri), rj), g);
      _mm256_storeu_pd(row + j, _mm256_mul_pd(half, t));
    }
    for (; j < n; ++j) row[j] = -0.5 * (((row[j] - row_mean[r]) - row_mean[j]) + grand);
  }
}

}  // namespace farmrisk::simd::avx2

#else

namespace farmrisk::simd::avx2 {

double squared_distance(const double* a, const double* b, std::size_t n) {
  return scalar::squared_distance(a, b, n);
}
double assign_nearest(const double* points_xy, std::size_t n, const double* centroids_xy,
                      std::size_t k, std::uint32_t* labels) {
  return scalar::assign_nearest(points_xy, n, centroids_xy, k, labels);
}
void double_center(const double* dist, std::size_t n, double* gram) {
  scalar::double_center(dist, n, gram);
}

}  // namespace farmrisk::simd::avx2

#endif
