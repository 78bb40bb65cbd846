#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "farmrisk/game/session.hpp"

namespace farmrisk {

struct TreatmentMoments {
  int treatment = 0;
  std::size_t count = 0;
  double mean_ms = 0.0;
  // Population std; z is undefined for the stratum when this is 0.
  double std_ms = 0.0;
};

struct PlayerRoundTime {
  std::size_t player = 0;  // index into the session list
  int round = 1;
  int treatment = 0;
  double latency_ms = 0.0;
  double diff_ms = 0.0;
  std::optional<double> z;
};

struct PlayerTimeSummary {
  std::string player_id;
  double median_diff_ms = 0.0;
  // Undefined strata are dropped; nullopt when every stratum was undefined.
  std::optional<double> median_z;
};

struct TimeTable {
  std::array<TreatmentMoments, 32> treatments{};
  std::vector<PlayerRoundTime> rows;
  std::vector<PlayerTimeSummary> players;
};

// Per-round latency is the sum of that round's turn latencies. Moments are
// taken per treatment over all player-rounds; d = t - mu_T, z = d / sigma_T.
TimeTable time_table(const std::vector<SessionLog>& sessions);

struct GroupTimeStats {
  std::string group;
  std::size_t players = 0;
  // Medians of the player medians.
  double median_diff_ms = 0.0;
  std::optional<double> median_z;
  // Per treatment: median over the group's players of d; then the mean and
  // std of those 32 medians (the decision-time table columns).
  std::array<double, 32> treatment_median_diff_ms{};
  double treatment_diff_mean_ms = 0.0;
  double treatment_diff_std_ms = 0.0;
  // Per round (index r-1): median over players of d and z.
  std::vector<double> round_median_diff_ms;
  std::vector<std::optional<double>> round_median_z;
};

// groups[i] names the group of sessions[i] / table.players[i].
std::vector<GroupTimeStats> group_time_stats(const TimeTable& table,
                                             const std::vector<std::string>& groups);

struct RoundMedian {
  int round = 1;
  double median_ms = 0.0;
  // Round 1 is reported but excluded from decay fits.
  bool excluded = false;
};

// Median over each group's players of per-round latency, rounds 1..32.
std::map<std::string, std::vector<RoundMedian>> round_median_curve(
    const std::vector<SessionLog>& sessions, const std::vector<std::string>& groups);

}  // namespace farmrisk
