#pragma once

#include <array>
#include <optional>
#include <vector>

#include "farmrisk/game/session.hpp"
#include "farmrisk/stats/mann_whitney.hpp"

namespace farmrisk {

struct SensitivityCondition {
  Factor factor = Factor::kContagionRate;
  int level = 0;
};

struct FactorTest {
  Factor factor = Factor::kAvgBiosecurity;
  // Mean of the per-treatment means at level 0 and level 1.
  double mean_level0 = 0.0;
  double mean_level1 = 0.0;
  std::size_t n_level0 = 0;
  std::size_t n_level1 = 0;
  // x = level 0 treatments, y = level 1 treatments.
  RankTestResult test;
  bool significant = false;
};

struct SensitivityReport {
  std::optional<SensitivityCondition> condition;
  double alpha = 0.05;
  std::array<double, kTreatmentCount> treatment_mean_rho{};
  // One entry per factor; the conditioning factor is left out.
  std::vector<FactorTest> factors;
};

// From per-treatment mean rho (indexed by Treatment::index()). Each factor's
// 32 treatments split 16/16 by level, or 8/8 within the conditioning level.
SensitivityReport sensitivity(const std::array<double, kTreatmentCount>& treatment_mean_rho,
                              std::optional<SensitivityCondition> condition = std::nullopt,
                              double alpha = 0.05);

// Mean rho over all player-rounds of each treatment. Throws CoverageError
// when a treatment has no rounds.
std::array<double, kTreatmentCount> treatment_mean_rho(const std::vector<SessionLog>& sessions);

}  // namespace farmrisk
