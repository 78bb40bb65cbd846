#pragma once

#include <optional>
#include <vector>

#include "farmrisk/agents/archetype.hpp"
#include "farmrisk/cluster/kmeans.hpp"
#include "farmrisk/metrics/rho.hpp"

namespace farmrisk {

struct ArchetypeLabeling {
  bool labeled = false;
  // Per cluster; all nullopt unless labeled.
  std::vector<std::optional<ArchetypeKind>> labels;
  std::vector<double> median_rho;
  // Least-squares slope of the round-wise median rho, per round.
  std::vector<double> slope;
  std::vector<std::size_t> sizes;
};

struct LabelOptions {
  double slope_threshold = 0.005;
};

// Needs K = 4 for labels; other K only get the per-cluster statistics.
ArchetypeLabeling label_archetypes(const ClusteringResult& result,
                                   const std::vector<RiskTrajectory>& trajectories,
                                   const LabelOptions& options = {});

// Fraction of points whose cluster maps to their true class under the best
// one-to-one mapping of clusters to classes.
double matched_accuracy(const std::vector<std::uint32_t>& assignment,
                        const std::vector<std::uint32_t>& truth, std::size_t clusters);

}  // namespace farmrisk
