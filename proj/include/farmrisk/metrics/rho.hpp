#pragma once

#include <string>
#include <vector>

#include "farmrisk/game/session.hpp"

namespace farmrisk {

// Share of investment opportunities taken in a round:
// beta(final_level) / min(3, tau). Throws DomainError for tau outside 1..6
// or more increments than opportunities.
double rho_round(BiosecurityLevel final_level, int tau);

struct RiskTrajectory {
  std::string player_id;
  // Indexed by round (play order), not by treatment.
  std::vector<double> rho;
};

// Throws IncompleteSessionError unless the session has 32 finished rounds.
RiskTrajectory trajectory(const SessionLog& session);
std::vector<RiskTrajectory> trajectories(const std::vector<SessionLog>& sessions);

struct PlayerSummary {
  std::string player_id;
  std::int64_t session_profit = 0;
  double mean_rho = 0.0;
  int infection_count = 0;
};

PlayerSummary summarize(const SessionLog& session);

}  // namespace farmrisk
