#include "farmrisk/game/session.hpp"

#include <numeric>

#include "farmrisk/common/error.hpp"
#include "farmrisk/common/rng.hpp"

namespace farmrisk {

int RoundRecord::invest_count() const {
  int n = 0;
  for (const auto& a : actions) n += a.action == Action::kInvest ? 1 : 0;
  return n;
}

std::int64_t RoundRecord::latency_ms() const {
  std::int64_t total = 0;
  for (const auto& a : actions) total += a.latency_ms;
  return total;
}

bool SessionLog::complete() const {
  if (!finished || rounds.size() != kRoundsPerSession) return false;
  for (const auto& r : rounds) {
    if (!r.finished) return false;
  }
  return true;
}

std::string_view to_string(PlayerKind kind) { return kind == PlayerKind::kHuman ? "human" : "agent"; }

std::vector<int> treatment_schedule(std::uint64_t seed) {
  std::vector<int> order(kTreatmentCount);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(derive_seed(seed, "schedule"));
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const auto j = uniform_below(rng, i + 1);
    std::swap(order[i], order[j]);
  }
  return order;
}

SessionTotals finalize_session(std::span<const RoundRecord> rounds, const GameConfig& config) {
  if (rounds.size() != kRoundsPerSession) {
    throw IncompleteSessionError("session has " + std::to_string(rounds.size()) +
                                 " rounds, expected " + std::to_string(kRoundsPerSession));
  }
  SessionTotals t;
  for (const auto& r : rounds) {
    if (!r.finished) throw IncompleteSessionError("round " + std::to_string(r.round_index) + " unfinished");
    t.session_profit += r.round_score;
  }
  t.payout_usd = static_cast<double>(t.session_profit) / config.sim_dollars_per_usd;
  return t;
}

Session::Session(std::string session_id, std::uint64_t seed, PlayerKind kind,
                 std::optional<std::string> archetype, std::int64_t created_at_ms,
                 const GameConfig& config)
    : config_(config) {
  config_.validate();
  log_.session_id = std::move(session_id);
  log_.seed = seed;
  log_.player_kind = kind;
  log_.archetype = std::move(archetype);
  log_.created_at_ms = created_at_ms;
  log_.treatment_order = treatment_schedule(seed);
  start_round(1, created_at_ms);
}

void Session::start_round(int round_index, std::int64_t ts_ms) {
  const Treatment t =
      Treatment::from_index(log_.treatment_order[static_cast<std::size_t>(round_index - 1)]);
  round_.emplace(derive_seed(log_.seed, static_cast<std::uint64_t>(round_index)), t, config_,
                 round_index);
  RoundRecord rec;
  rec.round_index = round_index;
  rec.treatment = t;
  rec.started_at_ms = ts_ms;
  log_.rounds.push_back(std::move(rec));
}

const Round& Session::current_round() const {
  if (!round_ || log_.finished) throw StateError("session is complete");
  return *round_;
}

int Session::round_index() const { return log_.rounds.empty() ? 0 : log_.rounds.back().round_index; }

std::int64_t Session::cumulative_score() const {
  std::int64_t total = 0;
  for (const auto& r : log_.rounds) {
    if (r.finished) total += r.round_score;
  }
  return total;
}

StepOutcome Session::act(Action action, std::int64_t latency_ms, std::int64_t server_elapsed_ms,
                         std::int64_t ts_ms) {
  if (log_.finished) throw StateError("session is complete");
  if (latency_ms < 0) throw ParameterError("latency must be >= 0");
  StepOutcome out;
  out.events = round_->step(action);

  RoundRecord& rec = log_.rounds.back();
  rec.actions.push_back({out.events.turn, action, latency_ms, server_elapsed_ms, ts_ms});
  if (!out.events.round_over) return out;

  rec.finished = true;
  rec.final_level = round_->player_level();
  rec.tau = round_->tau();
  rec.infected = round_->state().infected_player;
  rec.round_score = round_->round_score();
  out.finished_round = rec;

  if (rec.round_index == kRoundsPerSession) {
    const auto totals = finalize_session(log_.rounds, config_);
    log_.session_profit = totals.session_profit;
    log_.payout_usd = totals.payout_usd;
    log_.finished = true;
    round_.reset();
    out.session_complete = true;
  } else {
    start_round(rec.round_index + 1, ts_ms);
  }
  return out;
}

SessionLog replay_session(const SessionLog& recorded, const GameConfig& config) {
  Session s(recorded.session_id, recorded.seed, recorded.player_kind, recorded.archetype,
            recorded.created_at_ms, config);
  for (const auto& rec : recorded.rounds) {
    for (const auto& a : rec.actions) {
      if (s.complete()) throw ParseError("recorded log has actions after session end");
      if (s.round_index() != rec.round_index || s.current_round().state().turn != a.turn) {
        throw ParseError("recorded action out of sequence at round " + std::to_string(rec.round_index));
      }
      s.act(a.action, a.latency_ms, a.server_elapsed_ms, a.ts_ms);
    }
  }
  return s.log();
}

}  // namespace farmrisk
