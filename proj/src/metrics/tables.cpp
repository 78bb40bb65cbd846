#include "farmrisk/metrics/tables.hpp"

#include <string>

namespace farmrisk {

CsvTable trajectories_table(const std::vector<RiskTrajectory>& trajectories) {
  CsvTable t({"player_id", "r", "rho"});
  for (const auto& tr : trajectories) {
    for (std::size_t r = 0; r < tr.rho.size(); ++r) {
      t.add_row({tr.player_id, std::to_string(r + 1), format_double(tr.rho[r])});
    }
  }
  return t;
}

CsvTable summaries_table(const std::vector<PlayerSummary>& summaries) {
  CsvTable t({"player_id", "session_profit", "mean_rho", "infection_count"});
  for (const auto& s : summaries) {
    t.add_row({s.player_id, std::to_string(s.session_profit), format_double(s.mean_rho),
               std::to_string(s.infection_count)});
  }
  return t;
}

CsvTable time_stats_table(const TimeTable& table, const std::vector<std::string>& player_ids) {
  CsvTable t({"player_id", "r", "treatment", "latency_ms", "mu_t_ms", "sigma_t_ms", "diff_ms", "z"});
  for (const auto& row : table.rows) {
    const auto& m = table.treatments[static_cast<std::size_t>(row.treatment)];
    t.add_row({player_ids[row.player], std::to_string(row.round), std::to_string(row.treatment),
               format_double(row.latency_ms), format_double(m.mean_ms), format_double(m.std_ms),
               format_double(row.diff_ms), row.z ? format_double(*row.z) : "NA"});
  }
  return t;
}

}  // namespace farmrisk
