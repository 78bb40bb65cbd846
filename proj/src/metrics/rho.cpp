#include "farmrisk/metrics/rho.hpp"

#include <algorithm>
#include <numeric>

#include "farmrisk/common/error.hpp"

namespace farmrisk {

double rho_round(BiosecurityLevel final_level, int tau) {
  if (tau < 1 || tau > kTurnsPerRound) {
    throw DomainError("tau must be in 1..6, got " + std::to_string(tau));
  }
  const int opportunities = std::min(kTurnsToHigh, tau);
  const int b = beta(final_level);
  if (b > opportunities) {
    throw DomainError("final level exceeds investment opportunities for tau=" + std::to_string(tau));
  }
  return static_cast<double>(b) / static_cast<double>(opportunities);
}

RiskTrajectory trajectory(const SessionLog& session) {
  if (!session.complete()) {
    throw IncompleteSessionError("session " + session.session_id + " is incomplete");
  }
  RiskTrajectory t;
  t.player_id = session.session_id;
  t.rho.reserve(session.rounds.size());
  for (const auto& r : session.rounds) t.rho.push_back(rho_round(r.final_level, r.tau));
  return t;
}

std::vector<RiskTrajectory> trajectories(const std::vector<SessionLog>& sessions) {
  std::vector<RiskTrajectory> out;
  out.reserve(sessions.size());
  for (const auto& s : sessions) out.push_back(trajectory(s));
  return out;
}

PlayerSummary summarize(const SessionLog& session) {
  const RiskTrajectory t = trajectory(session);
  PlayerSummary s;
  s.player_id = session.session_id;
  s.session_profit = session.session_profit;
  s.mean_rho = std::accumulate(t.rho.begin(), t.rho.end(), 0.0) / static_cast<double>(t.rho.size());
  s.infection_count = static_cast<int>(
      std::count_if(session.rounds.begin(), session.rounds.end(), [](const auto& r) { return r.infected; }));
  return s;
}

}  // namespace farmrisk
