#include "farmrisk/stats/mann_whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

std::string_view rank_method_name(RankMethod m) {
  return m == RankMethod::kExactDP ? "exact" : "normal";
}

// f(i, j, u) = i/(i+j) f(i-1, j, u-j) + j/(i+j) f(i, j-1, u): the largest
// pooled value is an x (beating all j y's) or a y. Kept in probabilities so
// every term is nonnegative.
std::vector<double> u_distribution(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw ParameterError("U distribution needs n, m >= 1");
  const bool swap = n > m;
  const std::size_t a = swap ? m : n;  // rows
  const std::size_t b = swap ? n : m;
  const std::size_t width = a * b + 1;
  // prev[i * width + u] holds f(i, j-1, u).
  std::vector<double> prev((a + 1) * width, 0.0), cur((a + 1) * width, 0.0);
  for (std::size_t i = 0; i <= a; ++i) prev[i * width] = 1.0;  // j = 0
  for (std::size_t j = 1; j <= b; ++j) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[0] = 1.0;  // i = 0
    for (std::size_t i = 1; i <= a; ++i) {
      const double px = static_cast<double>(i) / static_cast<double>(i + j);
      const double py = 1.0 - px;
      double* out = &cur[i * width];
      const double* left = &cur[(i - 1) * width];
      const double* up = &prev[i * width];
      for (std::size_t u = 0; u <= i * j; ++u) {
        double v = py * up[u];
        if (u >= j) v += px * left[u - j];
        out[u] = v;
      }
    }
    prev.swap(cur);
  }
  std::vector<double> dist(prev.begin() + static_cast<std::ptrdiff_t>(a * width), prev.end());
  // The distribution is symmetric, so swapping samples changes nothing.
  return dist;
}

double exact_two_sided_p(double u, std::size_t n, std::size_t m) {
  const auto dist = u_distribution(n, m);
  const auto k = static_cast<std::size_t>(std::llround(u));
  double lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i <= k) lower += dist[i];
    if (i >= k) upper += dist[i];
  }
  return std::min(1.0, 2.0 * std::min(lower, upper));
}

RankTestResult mann_whitney(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw ParameterError("Mann-Whitney needs two nonempty samples");
  const std::size_t n = x.size(), m = y.size(), total = n + m;
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(total);
  for (double v : x) pooled.emplace_back(v, true);
  for (double v : y) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_x = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  bool ties = false;
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && pooled[j].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i);
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t q = i; q < j; ++q) {
      if (pooled[q].second) rank_sum_x += midrank;
    }
    if (j - i > 1) {
      ties = true;
      tie_term += t * t * t - t;
    }
    i = j;
  }

  RankTestResult r;
  r.n = n;
  r.m = m;
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  r.u = rank_sum_x - nd * (nd + 1.0) / 2.0;
  if (!ties && n * m <= 10000) {
    r.method = RankMethod::kExactDP;
    r.p_two_sided = exact_two_sided_p(r.u, n, m);
    return r;
  }
  r.method = RankMethod::kNormalApprox;
  const double nt = static_cast<double>(total);
  const double var = nd * md / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0)));
  if (var <= 0.0) {
    r.p_two_sided = 1.0;
    return r;
  }
  const double dev = std::max(0.0, std::abs(r.u - nd * md / 2.0) - 0.5);
  const double z = dev / std::sqrt(var);
  r.p_two_sided = std::clamp(std::erfc(z / std::sqrt(2.0)), std::numeric_limits<double>::min(), 1.0);
  return r;
}

}  // namespace farmrisk
