#include "farmrisk/cluster/elbow.hpp"

#include <algorithm>
#include <cmath>

#include "farmrisk/common/rng.hpp"

namespace farmrisk {

std::size_t knee_index(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.empty() || xs.size() != ys.size()) throw ParameterError("knee of an empty or ragged curve");
  const std::size_t n = xs.size();
  if (n < 3) return 0;
  const double x0 = xs.front(), y0 = ys.front();
  const double dx = xs.back() - x0, dy = ys.back() - y0;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return 0;
  // Signed distance, positive below the chord.
  auto below = [&](std::size_t i) { return (dy * (xs[i] - x0) - dx * (ys[i] - y0)) / len; };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(below(i)));
  const double tol = 1e-12 * std::max(scale, std::abs(len));
  std::size_t best = 0;
  double best_d = tol;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = below(i);
    if (d > best_d + tol) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

ElbowResult elbow_select(const Matrix& points, std::size_t k_min, std::size_t k_max,
                         std::uint64_t seed, int restarts, int max_iter) {
  if (k_min < 1 || k_min > k_max) throw ParameterError("empty K range");
  if (k_max > points.rows()) throw ParameterError("K range exceeds the number of points");
  ElbowResult out;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    KMeansOptions opt;
    opt.clusters = k;
    opt.seed = derive_seed(seed, static_cast<std::uint64_t>(k));
    opt.restarts = restarts;
    opt.max_iter = max_iter;
    out.ks.push_back(k);
    out.distortions.push_back(kmeans(points, opt).distortion);
  }
  std::vector<double> xs(out.ks.begin(), out.ks.end());
  out.selected = out.ks[knee_index(xs, out.distortions)];
  return out;
}

}  // namespace farmrisk
