#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "farmrisk/cluster/archetypes.hpp"
#include "farmrisk/cluster/elbow.hpp"
#include "farmrisk/manifold/isomap.hpp"
#include "farmrisk/metrics/time_stats.hpp"
#include "farmrisk/stats/bootstrap.hpp"
#include "farmrisk/stats/power_law.hpp"
#include "farmrisk/stats/sensitivity.hpp"

namespace farmrisk {

struct AnalysisOptions {
  std::size_t neighbors = 20;
  std::size_t k_min = 1;
  std::size_t k_max = 10;
  std::uint64_t seed = 0;
  int restarts = 20;
  double slope_threshold = 0.005;
  int bootstrap_resamples = 1000;
  double ci_level = 0.95;
  bool plots = true;
};

struct GroupRoundStats {
  int round = 1;
  double median_rho = 0.0;
  Interval rho_ci;
  double median_latency_ms = 0.0;
};

struct GroupFit {
  std::string group;
  std::size_t players = 0;
  PowerLawFit fit;  // a in seconds, rounds 2..32
};

struct AnalysisResult {
  std::vector<RiskTrajectory> trajectories;
  std::vector<PlayerSummary> summaries;
  Embedding embedding;
  ElbowResult elbow;
  ClusteringResult clustering;
  ArchetypeLabeling labeling;
  // Group name per player: the archetype label, or "cluster<c>".
  std::vector<std::string> groups;
  TimeTable times;
  std::vector<GroupTimeStats> group_times;
  std::map<std::string, std::vector<GroupRoundStats>> by_round;
  std::vector<GroupFit> fits;
  // Unconditioned, then conditioned on contagion low and high.
  std::vector<SensitivityReport> sensitivity;
};

// trajectories -> isomap -> elbow -> kmeans(K*) -> labels -> time stats ->
// power-law fits -> sensitivity. Needs complete sessions; throws
// ParameterError when there are too few for the neighbor count.
AnalysisResult analyze(const std::vector<SessionLog>& sessions, const AnalysisOptions& options);

// Writes every CSV (and SVG when options.plots) into out_dir.
void write_analysis(const AnalysisResult& result, const AnalysisOptions& options,
                    const std::filesystem::path& out_dir);

// Names of the CSV files write_analysis produces.
std::vector<std::string> analysis_csv_files();

}  // namespace farmrisk
