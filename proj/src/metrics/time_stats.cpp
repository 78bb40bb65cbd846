#include "farmrisk/metrics/time_stats.hpp"

#include <cmath>
#include <set>

#include "farmrisk/common/error.hpp"
#include "farmrisk/stats/descriptive.hpp"

namespace farmrisk {

namespace {

std::optional<double> median_of_defined(const std::vector<std::optional<double>>& v) {
  std::vector<double> xs;
  for (const auto& x : v) {
    if (x) xs.push_back(*x);
  }
  if (xs.empty()) return std::nullopt;
  return median(std::move(xs));
}

void check_groups(std::size_t n, const std::vector<std::string>& groups) {
  if (groups.size() != n) throw ParameterError("group assignment size does not match sessions");
}

}  // namespace

TimeTable time_table(const std::vector<SessionLog>& sessions) {
  if (sessions.empty()) throw ParameterError("time_table needs at least one session");
  TimeTable table;
  std::array<std::vector<double>, 32> by_treatment;
  for (std::size_t p = 0; p < sessions.size(); ++p) {
    const auto& s = sessions[p];
    if (!s.complete()) throw IncompleteSessionError("session " + s.session_id + " is incomplete");
    for (const auto& r : s.rounds) {
      PlayerRoundTime row;
      row.player = p;
      row.round = r.round_index;
      row.treatment = r.treatment.index();
      row.latency_ms = static_cast<double>(r.latency_ms());
      by_treatment[static_cast<std::size_t>(row.treatment)].push_back(row.latency_ms);
      table.rows.push_back(row);
    }
  }
  for (int t = 0; t < 32; ++t) {
    auto& m = table.treatments[static_cast<std::size_t>(t)];
    const auto& xs = by_treatment[static_cast<std::size_t>(t)];
    m.treatment = t;
    m.count = xs.size();
    if (!xs.empty()) {
      m.mean_ms = mean(xs);
      m.std_ms = population_std(xs);
    }
  }
  std::vector<std::vector<double>> diffs(sessions.size());
  std::vector<std::vector<std::optional<double>>> zs(sessions.size());
  for (auto& row : table.rows) {
    const auto& m = table.treatments[static_cast<std::size_t>(row.treatment)];
    row.diff_ms = row.latency_ms - m.mean_ms;
    if (m.std_ms > 0.0) row.z = row.diff_ms / m.std_ms;
    diffs[row.player].push_back(row.diff_ms);
    zs[row.player].push_back(row.z);
  }
  for (std::size_t p = 0; p < sessions.size(); ++p) {
    table.players.push_back({sessions[p].session_id, median(diffs[p]), median_of_defined(zs[p])});
  }
  return table;
}

std::vector<GroupTimeStats> group_time_stats(const TimeTable& table,
                                             const std::vector<std::string>& groups) {
  check_groups(table.players.size(), groups);
  const std::set<std::string> names(groups.begin(), groups.end());
  std::vector<GroupTimeStats> out;
  for (const auto& name : names) {
    GroupTimeStats g;
    g.group = name;
    std::vector<double> player_diffs;
    std::vector<std::optional<double>> player_z;
    for (std::size_t p = 0; p < table.players.size(); ++p) {
      if (groups[p] != name) continue;
      ++g.players;
      player_diffs.push_back(table.players[p].median_diff_ms);
      player_z.push_back(table.players[p].median_z);
    }
    g.median_diff_ms = median(player_diffs);
    g.median_z = median_of_defined(player_z);

    std::array<std::vector<double>, 32> by_treatment;
    std::vector<std::vector<double>> round_d(kRoundsPerSession);
    std::vector<std::vector<std::optional<double>>> round_z(kRoundsPerSession);
    for (const auto& row : table.rows) {
      if (groups[row.player] != name) continue;
      by_treatment[static_cast<std::size_t>(row.treatment)].push_back(row.diff_ms);
      round_d[static_cast<std::size_t>(row.round - 1)].push_back(row.diff_ms);
      round_z[static_cast<std::size_t>(row.round - 1)].push_back(row.z);
    }
    std::vector<double> medians;
    for (int t = 0; t < 32; ++t) {
      const auto& xs = by_treatment[static_cast<std::size_t>(t)];
      const double m = xs.empty() ? std::nan("") : median(xs);
      g.treatment_median_diff_ms[static_cast<std::size_t>(t)] = m;
      if (!xs.empty()) medians.push_back(m);
    }
    if (!medians.empty()) {
      g.treatment_diff_mean_ms = mean(medians);
      g.treatment_diff_std_ms = population_std(medians);
    }
    for (int r = 0; r < kRoundsPerSession; ++r) {
      const auto& xs = round_d[static_cast<std::size_t>(r)];
      g.round_median_diff_ms.push_back(xs.empty() ? std::nan("") : median(xs));
      g.round_median_z.push_back(median_of_defined(round_z[static_cast<std::size_t>(r)]));
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::map<std::string, std::vector<RoundMedian>> round_median_curve(
    const std::vector<SessionLog>& sessions, const std::vector<std::string>& groups) {
  check_groups(sessions.size(), groups);
  std::map<std::string, std::vector<std::vector<double>>> samples;
  for (std::size_t p = 0; p < sessions.size(); ++p) {
    auto& per_round = samples[groups[p]];
    per_round.resize(kRoundsPerSession);
    for (const auto& r : sessions[p].rounds) {
      if (!r.finished) continue;
      per_round[static_cast<std::size_t>(r.round_index - 1)].push_back(
          static_cast<double>(r.latency_ms()));
    }
  }
  std::map<std::string, std::vector<RoundMedian>> out;
  for (auto& [name, per_round] : samples) {
    auto& curve = out[name];
    for (int r = 1; r <= kRoundsPerSession; ++r) {
      const auto& xs = per_round[static_cast<std::size_t>(r - 1)];
      curve.push_back({r, xs.empty() ? std::nan("") : median(xs), r == 1});
    }
  }
  return out;
}

}  // namespace farmrisk
