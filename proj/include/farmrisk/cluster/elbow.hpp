#pragma once

#include <cstdint>
#include <vector>

#include "farmrisk/cluster/kmeans.hpp"

namespace farmrisk {

struct ElbowResult {
  std::vector<std::size_t> ks;
  std::vector<double> distortions;
  // The chosen K itself, not an index into ks.
  std::size_t selected = 0;
};

// Index into the curve of the point farthest below the chord joining its
// endpoints. Ties and curves with nothing below the chord pick the first.
std::size_t knee_index(const std::vector<double>& xs, const std::vector<double>& ys);

// Best-of-restarts distortion for each K in [k_min, k_max], then the knee.
// K = k uses the seed derive_seed(seed, k).
ElbowResult elbow_select(const Matrix& points, std::size_t k_min, std::size_t k_max,
                         std::uint64_t seed, int restarts = 20, int max_iter = 300);

}  // namespace farmrisk
