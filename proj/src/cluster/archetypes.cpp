#include "farmrisk/cluster/archetypes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "farmrisk/stats/descriptive.hpp"

namespace farmrisk {

namespace {

double ls_slope(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  const double xbar = (n + 1.0) / 2.0;
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dx = static_cast<double>(i + 1) - xbar;
    sxy += dx * (y[i] - ybar);
    sxx += dx * dx;
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

}  // namespace

ArchetypeLabeling label_archetypes(const ClusteringResult& result,
                                   const std::vector<RiskTrajectory>& trajectories,
                                   const LabelOptions& options) {
  if (trajectories.size() != result.assignment.size()) {
    throw ParameterError("trajectories do not align with the cluster assignment");
  }
  const std::size_t k = result.clusters;
  ArchetypeLabeling out;
  out.labels.assign(k, std::nullopt);
  out.median_rho.assign(k, std::numeric_limits<double>::quiet_NaN());
  out.slope.assign(k, std::numeric_limits<double>::quiet_NaN());
  out.sizes.assign(k, 0);

  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> all;
    std::vector<std::vector<double>> by_round;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      if (result.assignment[i] != c) continue;
      const auto& rho = trajectories[i].rho;
      ++out.sizes[c];
      all.insert(all.end(), rho.begin(), rho.end());
      if (by_round.size() < rho.size()) by_round.resize(rho.size());
      for (std::size_t r = 0; r < rho.size(); ++r) by_round[r].push_back(rho[r]);
    }
    if (all.empty()) continue;
    out.median_rho[c] = median(all);
    std::vector<double> curve;
    for (auto& v : by_round) curve.push_back(median(v));
    out.slope[c] = ls_slope(curve);
  }
  if (k != 4 || std::find(out.sizes.begin(), out.sizes.end(), 0u) != out.sizes.end()) return out;

  // score[c][label]: how well cluster c fits each archetype.
  std::array<std::array<double, 4>, 4> score{};
  std::array<ArchetypeKind, 4> first{};
  for (std::size_t c = 0; c < 4; ++c) {
    const double s = out.slope[c], m = out.median_rho[c];
    score[c][static_cast<int>(ArchetypeKind::kLRA)] = s;
    score[c][static_cast<int>(ArchetypeKind::kLRT)] = -s;
    score[c][static_cast<int>(ArchetypeKind::kRA)] = m - 0.5;
    score[c][static_cast<int>(ArchetypeKind::kRT)] = 0.5 - m;
    if (std::abs(s) > options.slope_threshold) {
      first[c] = s > 0 ? ArchetypeKind::kLRA : ArchetypeKind::kLRT;
    } else {
      first[c] = m >= 0.5 ? ArchetypeKind::kRA : ArchetypeKind::kRT;
    }
  }
  std::array<bool, 4> taken{};
  // Each label goes to its best-scoring claimant.
  for (auto label : kAllArchetypes) {
    const int l = static_cast<int>(label);
    std::optional<std::size_t> winner;
    for (std::size_t c = 0; c < 4; ++c) {
      if (first[c] != label) continue;
      if (!winner || score[c][l] > score[*winner][l]) winner = c;
    }
    if (winner) {
      out.labels[*winner] = label;
      taken[l] = true;
    }
  }
  // Losers take the free labels, best score first.
  for (;;) {
    double best = -std::numeric_limits<double>::infinity();
    std::optional<std::size_t> bc;
    int bl = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      if (out.labels[c]) continue;
      for (int l = 0; l < 4; ++l) {
        if (!taken[l] && score[c][l] > best) {
          best = score[c][l];
          bc = c;
          bl = l;
        }
      }
    }
    if (!bc) break;
    out.labels[*bc] = static_cast<ArchetypeKind>(bl);
    taken[bl] = true;
  }
  out.labeled = true;
  return out;
}

double matched_accuracy(const std::vector<std::uint32_t>& assignment,
                        const std::vector<std::uint32_t>& truth, std::size_t clusters) {
  if (assignment.size() != truth.size() || assignment.empty()) {
    throw ParameterError("assignment and truth differ in length");
  }
  if (clusters > 8) throw ParameterError("matched_accuracy supports at most 8 clusters");
  std::size_t classes = clusters;
  for (auto t : truth) classes = std::max<std::size_t>(classes, t + 1);
  std::vector<std::vector<std::size_t>> count(clusters, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) ++count[assignment[i]][truth[i]];
  std::vector<std::size_t> perm(classes);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t c = 0; c < clusters; ++c) hit += count[c][perm[c]];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

}  // namespace farmrisk
