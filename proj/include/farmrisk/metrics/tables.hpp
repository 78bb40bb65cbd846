#pragma once

#include <vector>

#include "farmrisk/common/csv.hpp"
#include "farmrisk/metrics/rho.hpp"
#include "farmrisk/metrics/time_stats.hpp"

namespace farmrisk {

// trajectories.csv: player_id,r,rho
CsvTable trajectories_table(const std::vector<RiskTrajectory>& trajectories);
// summaries.csv: player_id,session_profit,mean_rho,infection_count
CsvTable summaries_table(const std::vector<PlayerSummary>& summaries);
// time_stats.csv: one row per player-round with diff and z.
CsvTable time_stats_table(const TimeTable& table, const std::vector<std::string>& player_ids);

}  // namespace farmrisk
