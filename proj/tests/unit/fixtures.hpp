#pragma once

#include <functional>
#include <string>

#include "farmrisk/game/session.hpp"

namespace fixtures {

struct RoundSpec {
  int level = 0;
  int tau = 6;
  bool infected = false;
  std::int64_t latency_ms = 600;
};

// Hand-built complete session. Round r plays treatment order[r-1]; spec(r,
// treatment) decides what happened. Invests come first, one per turn.
inline farmrisk::SessionLog make_log(const std::string& id, const std::vector<int>& order,
                                     const std::function<RoundSpec(int, int)>& spec) {
  using namespace farmrisk;
  const GameConfig config;
  SessionLog log;
  log.session_id = id;
  log.treatment_order = order;
  std::int64_t ts = 0;
  for (int r = 1; r <= kRoundsPerSession; ++r) {
    const int t = order[static_cast<std::size_t>(r - 1)];
    const RoundSpec s = spec(r, t);
    RoundRecord rec;
    rec.round_index = r;
    rec.treatment = Treatment::from_index(t);
    rec.started_at_ms = ts;
    for (int turn = 1; turn <= s.tau; ++turn) {
      TurnAction a;
      a.turn = turn;
      a.action = turn <= s.level ? Action::kInvest : Action::kHold;
      // The whole round latency sits on the first turn.
      a.latency_ms = turn == 1 ? s.latency_ms : 0;
      ts += a.latency_ms;
      a.ts_ms = ts;
      rec.actions.push_back(a);
    }
    rec.finished = true;
    rec.final_level = level_from_beta(s.level);
    rec.tau = s.tau;
    rec.infected = s.infected;
    rec.round_score = config.round_score(s.level, s.infected);
    log.rounds.push_back(rec);
  }
  const SessionTotals totals = finalize_session(log.rounds, config);
  log.finished = true;
  log.session_profit = totals.session_profit;
  log.payout_usd = totals.payout_usd;
  return log;
}

inline std::vector<int> identity_order() {
  std::vector<int> o(32);
  for (int i = 0; i < 32; ++i) o[static_cast<std::size_t>(i)] = i;
  return o;
}

}  // namespace fixtures
